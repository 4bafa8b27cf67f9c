"""The finite-level *-algebra spanned by cylinder pair generators.

A generator is an ordered pair of paths with the same endpoint; it
behaves exactly like a matrix unit indexed by the two paths.  Products
follow the continuation rule: the product of ``(a, b)`` and ``(c, d)`` is
``(a.eps, d)`` when ``c`` continues ``b`` by ``eps``, is ``(a, d.eps)``
when ``b`` continues ``c`` by ``eps``, and vanishes otherwise.  For two
generators ending at the same level this collapses to the matrix-unit law
``e[a,b] e[c,d] = delta(b,c) e[a,d]``.

Pushing a generator one level deeper sums over the out-edges of its
endpoint; this is the inclusion of one level algebra into the next, and
its multiplicities recover the diagram's edge counts.  All coefficients
are Gaussian rationals, so every identity checked here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import BratteliDiagram, IntMatrix, PointSet
from .errors import (IntertwinerError, MultiplicityMismatch, NoNextLevel,
                     NotHomomorphism)
from .linalg import BlockMatrix, SparseMat, orthonormal_column_basis
from .paths import DEFAULT_CAP, EdgeId, Path, enumerate_paths
from .scalars import GaussianRational
from .verification import VerificationItem

ONE = GaussianRational(1)


@dataclass(frozen=True)
class Generator:
    """A cylinder pair: ``row`` indexes the row, ``col`` the column."""

    row: Path
    col: Path

    def __post_init__(self):
        if self.row.range != self.col.range:
            raise ValueError("paths end at %s and %s, not a generator"
                             % (self.row.range, self.col.range))

    @property
    def level(self) -> int:
        return self.row.range_level

    @property
    def vertex(self) -> int:
        return self.row.range_vertex

    @property
    def is_diagonal(self) -> bool:
        return self.row == self.col

    def swapped(self) -> "Generator":
        return Generator(self.col, self.row)

    def sort_key(self):
        return (self.level, self.vertex, self.row.sort_key(), self.col.sort_key())

    def __str__(self):
        return "e[%s | %s]" % (self.row, self.col)


def _extend_by(path: Path, eps: tuple[EdgeId, ...]) -> Path:
    return Path(path.origin, path.edges + tuple(eps))


def _generator_product(g1: Generator, g2: Generator):
    """Product of two generators: a single generator or None."""
    b, c = g1.col, g2.row
    if b == c:
        return Generator(g1.row, g2.col)
    eps = c.continuation_from(b)
    if eps is not None:
        return Generator(_extend_by(g1.row, eps), g2.col)
    eps = b.continuation_from(c)
    if eps is not None:
        return Generator(g1.row, _extend_by(g2.col, eps))
    return None


class AlgebraElement:
    """An exact finite linear combination of cylinder generators.

    Zero coefficients are never stored.  Elements are treated as
    immutable; all arithmetic returns fresh objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for g, c in terms.items():
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if not c.is_zero():
                    cleaned[g] = c
        self.terms = cleaned

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def unit_for(cls, row: Path, col: Path, coeff=1) -> "AlgebraElement":
        return cls({Generator(row, col): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def levels(self) -> tuple[int, ...]:
        return tuple(sorted({g.level for g in self.terms}))

    def single_level(self):
        """The common level of all terms, or None for zero/mixed elements."""
        lv = self.levels()
        return lv[0] if len(lv) == 1 else None

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(g, None)
            else:
                out[g] = s
        return AlgebraElement(out)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coeff) -> "AlgebraElement":
        if not isinstance(coeff, GaussianRational):
            coeff = GaussianRational(coeff)
        if coeff.is_zero():
            return AlgebraElement()
        return AlgebraElement({g: coeff * c for g, c in self.terms.items()})

    def __rmul__(self, coeff):
        if isinstance(coeff, AlgebraElement):
            return NotImplemented
        return self.scale(coeff)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        acc: dict = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = _generator_product(g1, g2)
                if g is None:
                    continue
                c = c1 * c2
                s = acc.get(g)
                s = c if s is None else s + c
                if s.is_zero():
                    acc.pop(g, None)
                else:
                    acc[g] = s
        return AlgebraElement(acc)

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement({g.swapped(): c.conjugate()
                               for g, c in self.terms.items()})

    def diagonal_part(self) -> "AlgebraElement":
        return AlgebraElement({g: c for g, c in self.terms.items()
                               if g.is_diagonal})

    def coefficient_vector(self) -> dict:
        """Sparse vector over generators, for span arithmetic."""
        return dict(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "AlgebraElement(0)"
        bits = ["%s*%s" % (c, g) for g, c in
                sorted(self.terms.items(), key=lambda t: t[0].sort_key())]
        return "AlgebraElement(%s)" % " + ".join(bits[:6]) + \
            (" ..." if len(bits) > 6 else "")


def embed(diagram: BratteliDiagram, x: AlgebraElement,
          steps: int = 1) -> AlgebraElement:
    """Include a single-level element into a deeper level algebra.

    Each generator becomes the sum over all out-edges of its endpoint,
    appended to both paths; repeated ``steps`` times.
    """
    for _ in range(steps):
        x = _embed_once(diagram, x)
    return x


def _embed_once(diagram, x):
    if x.is_zero():
        return x
    level = x.single_level()
    if level is None:
        raise ValueError("can only embed a single-level element")
    if level >= diagram.num_levels:
        raise NoNextLevel("no level %d to embed into" % (level + 1))
    mat = diagram.map_from(level)
    acc: dict = {}
    for g, coeff in x.terms.items():
        i = g.vertex
        for t in range(1, diagram.num_vertices(level + 1) + 1):
            for copy in range(1, mat[t - 1][i - 1] + 1):
                edge = EdgeId(level, i, t, copy)
                key = Generator(g.row.extended(edge), g.col.extended(edge))
                s = acc.get(key)
                acc[key] = coeff if s is None else s + coeff
    return AlgebraElement(acc)


class MatrixRealization:
    """Concrete block-matrix coordinates for one level algebra.

    Paths into each vertex are enumerated in canonical order; the
    generator pairing path ``p`` with path ``q`` maps to the standard
    matrix unit at (index of p, index of q) inside the block of their
    common endpoint.
    """

    def __init__(self, diagram: BratteliDiagram, points: PointSet,
                 level: int, cap: int = DEFAULT_CAP):
        self.diagram = diagram
        self.points = points
        self.level = level
        self.paths = tuple(
            enumerate_paths(diagram, points, level, i, cap)
            for i in range(1, diagram.num_vertices(level) + 1))
        self.index = {}
        for b, plist in enumerate(self.paths):
            for r, p in enumerate(plist):
                self.index[p] = (b, r)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.paths)

    @property
    def dimension(self) -> int:
        return sum(len(p) ** 2 for p in self.paths)

    def realize(self, x: AlgebraElement) -> BlockMatrix:
        """Exact block matrix of a level element in path coordinates."""
        blocks = [SparseMat.zeros(s, s) for s in self.block_sizes]
        for g, c in x.terms.items():
            if g.level != self.level:
                raise ValueError("generator at level %d cannot be realized "
                                 "at level %d" % (g.level, self.level))
            b1, r = self.index[g.row]
            b2, s = self.index[g.col]
            assert b1 == b2
            blocks[b1].add_to(r, s, c)
        return BlockMatrix(blocks)

    def element(self, bm: BlockMatrix) -> AlgebraElement:
        """Inverse of :meth:`realize`."""
        terms = {}
        for b, block in enumerate(bm.blocks):
            plist = self.paths[b]
            for r, row in block.rows.items():
                for s, c in row.items():
                    terms[Generator(plist[r], plist[s])] = c
        return AlgebraElement(terms)

    def generators(self):
        """All matrix-unit generators, block by block in canonical order."""
        for plist in self.paths:
            for p in plist:
                for q in plist:
                    yield Generator(p, q)

    def diagonal_generators(self):
        for plist in self.paths:
            for p in plist:
                yield Generator(p, p)

    def identity(self) -> AlgebraElement:
        return AlgebraElement({g: ONE for g in self.diagonal_generators()})

    def block_identity(self, vertex: int) -> AlgebraElement:
        """Sum of the diagonal units of one vertex block (1-based)."""
        return AlgebraElement({Generator(p, p): ONE
                               for p in self.paths[vertex - 1]})


def level_algebra(diagram: BratteliDiagram, points: PointSet, level: int,
                  cap: int = DEFAULT_CAP, check: bool = True) -> MatrixRealization:
    """Build the level realization, verifying the matrix-unit laws.

    With ``check`` set the product of every ordered pair of generators is
    compared against the matrix-unit expectation (including vanishing
    across distinct blocks), and every adjoint against the path swap.
    """
    real = MatrixRealization(diagram, points, level, cap)
    if check:
        item = check_matrix_units(real)
        if not item.ok:
            raise RuntimeError("matrix-unit law failed: %s" % (item.details,))
    return real


def check_matrix_units(real: MatrixRealization) -> VerificationItem:
    """Exhaustively verify the product rule and adjoint on one level."""
    gens = list(real.generators())
    for g in gens:
        adj = AlgebraElement({g: ONE}).adjoint()
        if adj.terms != {g.swapped(): ONE}:
            return VerificationItem("matrix_unit_laws", False,
                                    {"level": real.level, "adjoint_of": str(g)})
    for g1 in gens:
        for g2 in gens:
            got = _generator_product(g1, g2)
            if g1.vertex == g2.vertex and g1.col == g2.row:
                want = Generator(g1.row, g2.col)
                bad = got != want
            else:
                bad = got is not None
            if bad:
                return VerificationItem("matrix_unit_laws", False,
                                        {"level": real.level,
                                         "left": str(g1), "right": str(g2)})
    return VerificationItem("matrix_unit_laws", True,
                            {"level": real.level, "generators": len(gens)})


def _embedding_multiplicities(diagram, real_n, real_n1) -> IntMatrix:
    """Recover edge multiplicities from ranks of embedded block identities."""
    rows_out = []
    for i in range(1, diagram.num_vertices(real_n1.level) + 1):
        rows_out.append([])
    for j in range(1, diagram.num_vertices(real_n.level) + 1):
        count = len(real_n.paths[j - 1])
        image = embed(diagram, real_n.block_identity(j))
        bm = real_n1.realize(image)
        for i in range(1, diagram.num_vertices(real_n1.level) + 1):
            r = bm.blocks[i - 1].rank()
            if count == 0 or r % count:
                raise RuntimeError("rank %d not divisible by block size %d"
                                   % (r, count))
            rows_out[i - 1].append(r // count)
    return tuple(tuple(row) for row in rows_out)


def multiplicity_of_embedding(diagram: BratteliDiagram, points: PointSet,
                              level: int, cap: int = DEFAULT_CAP) -> IntMatrix:
    """Multiplicity matrix of the inclusion of one level into the next.

    Pushes each source block identity through the embedding, realizes it
    one level deeper, and divides the exact rank found in each target
    block by the source block size.
    """
    real_n = MatrixRealization(diagram, points, level, cap)
    real_n1 = MatrixRealization(diagram, points, level + 1, cap)
    return _embedding_multiplicities(diagram, real_n, real_n1)


class MatrixUnitSystem:
    """A *-homomorphism between multimatrix algebras, given generatorwise.

    The map is described by the images of the first-column matrix units
    ``e[t,1]`` of every source block; the image of a general unit
    ``e[s,t]`` is reconstructed as ``image(s,1) image(t,1)*``.  Validation
    checks the relations that make that reconstruction a *-homomorphism.
    """

    def __init__(self, source_sizes, target_sizes, first_col, check=True):
        self.source_sizes = tuple(source_sizes)
        self.target_sizes = tuple(target_sizes)
        self.first_col = dict(first_col)
        for j, a in enumerate(self.source_sizes, start=1):
            for t in range(1, a + 1):
                if (j, t) not in self.first_col:
                    raise ValueError("missing image of unit (%d, %d, 1)" % (j, t))
        if check:
            self.validate()

    def image(self, j: int, s: int, t: int) -> BlockMatrix:
        return self.first_col[(j, s)] * self.first_col[(j, t)].conj_t()

    def validate(self) -> None:
        """Raise :class:`NotHomomorphism` unless the images satisfy the
        matrix-unit relations (orthogonality across units, a common
        support projection per block, injectivity)."""
        support = {}
        for j, a in enumerate(self.source_sizes, start=1):
            q = None
            for t in range(1, a + 1):
                v = self.first_col[(j, t)]
                qt = v.conj_t() * v
                if q is None:
                    q = qt
                elif qt != q:
                    raise NotHomomorphism(
                        "images of units (%d,%d,1) and (%d,1,1) have "
                        "different support" % (j, t, j))
            if q is None or q.is_zero():
                raise NotHomomorphism("source block %d is killed; the map "
                                      "is not injective" % j)
            support[j] = q
            for t in range(1, a + 1):
                v = self.first_col[(j, t)]
                if v * q != v:
                    raise NotHomomorphism(
                        "image of unit (%d,%d,1) is not supported on its "
                        "block projection" % (j, t))
        keys = sorted(self.first_col)
        for idx, (j, t) in enumerate(keys):
            vt = self.first_col[(j, t)]
            for (j2, t2) in keys[idx + 1:]:
                prod = vt.conj_t() * self.first_col[(j2, t2)]
                if not prod.is_zero():
                    raise NotHomomorphism(
                        "images of units (%d,%d,1) and (%d,%d,1) are not "
                        "orthogonal" % (j, t, j2, t2))

    def multiplicities(self) -> IntMatrix:
        """Exact multiplicity matrix: per-target-block ranks of the
        minimal source projections."""
        rows = [[0] * len(self.source_sizes) for _ in self.target_sizes]
        for j in range(1, len(self.source_sizes) + 1):
            q = self.image(j, 1, 1)
            for i, block in enumerate(q.blocks):
                rows[i][j - 1] = block.rank()
        return tuple(tuple(r) for r in rows)

    @classmethod
    def from_embedding(cls, diagram: BratteliDiagram, points: PointSet,
                       level: int, cap: int = DEFAULT_CAP,
                       realizations=None) -> "MatrixUnitSystem":
        """The level inclusion map, realized in path coordinates."""
        if realizations is None:
            real_n = MatrixRealization(diagram, points, level, cap)
            real_n1 = MatrixRealization(diagram, points, level + 1, cap)
        else:
            real_n, real_n1 = realizations
        first_col = {}
        for j, plist in enumerate(real_n.paths, start=1):
            for t, p in enumerate(plist, start=1):
                x = AlgebraElement({Generator(p, plist[0]): ONE})
                first_col[(j, t)] = real_n1.realize(embed(diagram, x))
        return cls(real_n.block_sizes, real_n1.block_sizes, first_col,
                   check=False)

    @classmethod
    def standard(cls, multiplicities: IntMatrix, source_sizes,
                 target_sizes) -> "MatrixUnitSystem":
        """The block-diagonal reference embedding for given multiplicities.

        Target block ``i`` stacks ``k[i][j]`` diagonal copies of source
        block ``j`` in block order, followed by a zero corner.
        """
        source_sizes = tuple(source_sizes)
        target_sizes = tuple(target_sizes)
        for i, b in enumerate(target_sizes):
            used = sum(multiplicities[i][j] * source_sizes[j]
                       for j in range(len(source_sizes)))
            if used > b:
                raise ValueError("target block %d of size %d cannot hold "
                                 "%d embedded coordinates" % (i + 1, b, used))
        first_col = {}
        for j, a in enumerate(source_sizes, start=1):
            offsets = []
            for i in range(len(target_sizes)):
                off = sum(multiplicities[i][jj] * source_sizes[jj]
                          for jj in range(j - 1))
                offsets.append(off)
            for t in range(1, a + 1):
                blocks = []
                for i, b in enumerate(target_sizes):
                    m = SparseMat.zeros(b, b)
                    for c in range(multiplicities[i][j - 1]):
                        base = offsets[i] + c * a
                        m.put(base + t - 1, base, ONE)
                    blocks.append(m)
                first_col[(j, t)] = BlockMatrix(blocks)
        return cls(source_sizes, target_sizes, first_col, check=False)


def _standardizing_unitary(system: MatrixUnitSystem,
                           multiplicities: IntMatrix) -> BlockMatrix:
    """Unitary W with W phi(x) W* in standard block form.

    Per target block the ranges of the minimal projections are
    orthonormalized in source-block order (columns arrive in canonical
    index order, which for realized embeddings is the canonical path
    order), each range is propagated along its block by the first-column
    images, and the leftover corner is filled with an orthonormal basis
    of the complement.
    """
    blocks = []
    for i, b in enumerate(system.target_sizes):
        cols: list[dict] = []
        corner = SparseMat.identity(b)
        for j, a in enumerate(system.source_sizes, start=1):
            k = multiplicities[i][j - 1]
            if k == 0:
                continue
            q = system.image(j, 1, 1).blocks[i]
            seeds = orthonormal_column_basis(q, k)
            for seed in seeds:
                for t in range(1, a + 1):
                    v = _apply(system.first_col[(j, t)].blocks[i], seed)
                    cols.append(v)
            for t in range(1, a + 1):
                p = system.image(j, t, t).blocks[i]
                corner = corner - p
        cols.extend(orthonormal_column_basis(corner, b - len(cols)))
        u = SparseMat.zeros(b, b)
        for jcol, vec in enumerate(cols):
            for irow, val in vec.items():
                u.put(irow, jcol, val)
        blocks.append(u.conj_t())
    return BlockMatrix(blocks)


def _apply(mat: SparseMat, vec: dict) -> dict:
    out: dict = {}
    for i, row in mat.rows.items():
        total = None
        for j, v in row.items():
            w = vec.get(j)
            if w is not None:
                total = v * w if total is None else total + v * w
        if total is not None and not total.is_zero():
            out[i] = total
    return out


def find_intertwiner(phi: MatrixUnitSystem,
                     psi: MatrixUnitSystem) -> BlockMatrix:
    """Exact unitary ``u`` with ``u psi(x) u* = phi(x)`` for every unit.

    Both maps are first validated, their multiplicity matrices must agree
    (otherwise no intertwiner exists), then each is conjugated to the
    standard block form and the two standardizing unitaries are composed.
    The Ad identity is re-checked exactly before returning.
    """
    if phi.source_sizes != psi.source_sizes \
            or phi.target_sizes != psi.target_sizes:
        raise MultiplicityMismatch(
            "maps act between different multimatrix algebras: %s->%s vs %s->%s"
            % (phi.source_sizes, phi.target_sizes,
               psi.source_sizes, psi.target_sizes))
    phi.validate()
    psi.validate()
    mult = phi.multiplicities()
    mult_psi = psi.multiplicities()
    if mult != mult_psi:
        raise MultiplicityMismatch("multiplicities %s vs %s"
                                   % (mult, mult_psi))
    w_phi = _standardizing_unitary(phi, mult)
    w_psi = _standardizing_unitary(psi, mult)
    u = w_phi.conj_t() * w_psi
    if not (u * u.conj_t()).is_identity() or not (u.conj_t() * u).is_identity():
        raise IntertwinerError("constructed matrix is not unitary")
    u_star = u.conj_t()
    for (j, t), v in psi.first_col.items():
        if u * v * u_star != phi.first_col[(j, t)]:
            raise IntertwinerError("Ad identity fails on unit (%d,%d,1)"
                                   % (j, t))
    return u


def verify_tower(diagram: BratteliDiagram, points: PointSet,
                 up_to: int | None = None,
                 cap: int = DEFAULT_CAP) -> VerificationItem:
    """Check the whole commuting tower up to a level.

    Per level: the algebra dimension equals the sum of squared sizes and
    the matrix-unit laws hold exhaustively.  Per consecutive pair: the
    extracted embedding multiplicities equal the diagram's connecting
    matrix, and an exact unitary intertwiner conjugates the realized
    inclusion to the standard one, Ad-checked on every matrix unit.
    """
    top = diagram.num_levels if up_to is None else up_to
    if not 1 <= top <= diagram.num_levels:
        raise IndexError("level %d out of range" % top)
    reals = {n: MatrixRealization(diagram, points, n, cap)
             for n in range(1, top + 1)}
    levels = []
    ok = True
    for n in range(1, top + 1):
        real = reals[n]
        expected = sum(s * s for s in diagram.sizes(n))
        entry = {
            "level": n,
            "dim": real.dimension,
            "dim_expected": expected,
            "dim_ok": real.dimension == expected,
            "matrix_units_ok": check_matrix_units(real).ok,
        }
        if n < top:
            want = diagram.map_from(n)
            mult = _embedding_multiplicities(diagram, real, reals[n + 1])
            entry["multiplicity"] = [list(r) for r in mult]
            entry["multiplicity_ok"] = mult == want
            entry["intertwiner_ok"], entry["intertwiner_error"] = \
                _check_intertwiner(diagram, real, reals[n + 1], want)
        levels.append(entry)
        ok = ok and all(v for k, v in entry.items() if k.endswith("_ok"))
    return VerificationItem("matrix_unit_tower", ok, {"levels": levels})


def _check_intertwiner(diagram, real_n, real_n1, mult):
    try:
        phi = MatrixUnitSystem.from_embedding(
            diagram, real_n.points, real_n.level,
            realizations=(real_n, real_n1))
        psi = MatrixUnitSystem.standard(mult, real_n.block_sizes,
                                        real_n1.block_sizes)
        u = find_intertwiner(phi, psi)
    except (MultiplicityMismatch, NotHomomorphism, IntertwinerError,
            ValueError) as exc:
        return False, str(exc)
    u_star = u.conj_t()
    for j, a in enumerate(phi.source_sizes, start=1):
        for s in range(1, a + 1):
            for t in range(1, a + 1):
                if u * psi.image(j, s, t) * u_star != phi.image(j, s, t):
                    return False, "Ad identity fails on unit (%d,%d,%d)" % (j, s, t)
    return True, None
