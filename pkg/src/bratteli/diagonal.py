"""The ascending diagonal tower and its finite diagonal axioms.

The diagonal of a level algebra is spanned by the path projections
``e[p,p]``.  Each step of the tower is generated by two kinds of
projections one level deeper: ``f_e``, the sum of all path projections
whose path arrives through a fixed edge ``e``, and ``f_v``, the
zero-length projection at a pointed vertex ``v``.  The span of those
generators is a maximal abelian subalgebra of the relative commutant of
the embedded previous level, and together with the embedded diagonal it
spans the next diagonal.

The conditional expectation onto the diagonal keeps exactly the diagonal
coefficients; its kernel is spanned by the off-diagonal units, each of
which squares to zero and conjugates the diagonal into itself.  All
claims are verified by exact span arithmetic, never by tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (AlgebraElement, Generator, MatrixRealization, embed)
from .diagram import BratteliDiagram, PointSet
from .linalg import SpanBasis, nullspace
from .paths import DEFAULT_CAP, EdgeId, Path
from .scalars import GaussianRational
from .verification import VerificationItem

ONE = GaussianRational(1)


def _gen_sort_key(g: Generator):
    return g.sort_key()


def expectation(x: AlgebraElement) -> AlgebraElement:
    """Conditional expectation onto the diagonal: drop off-diagonal terms."""
    return x.diagonal_part()


def diagonal_basis(diagram: BratteliDiagram, points: PointSet, level: int,
                   cap: int = DEFAULT_CAP,
                   realization: MatrixRealization | None = None):
    """All path projections at a level, in canonical order."""
    real = realization or MatrixRealization(diagram, points, level, cap)
    return tuple(AlgebraElement({g: ONE}) for g in real.diagonal_generators())


def masa_basis(diagram: BratteliDiagram, points: PointSet, level: int,
               cap: int = DEFAULT_CAP,
               realization: MatrixRealization | None = None):
    """Labelled generators of the level's canonical MASA.

    Returns ``(labels, elements)``: one last-edge projection per edge
    into the level (parallel copies count separately) and one zero-length
    projection per pointed vertex of the level.
    """
    real = realization or MatrixRealization(diagram, points, level, cap)
    labels = []
    elements = []
    if level > 1:
        mat = diagram.map_from(level - 1)
        for i in range(1, diagram.num_vertices(level) + 1):
            for j in range(1, diagram.num_vertices(level - 1) + 1):
                for copy in range(1, mat[i - 1][j - 1] + 1):
                    edge = EdgeId(level - 1, j, i, copy)
                    terms = {Generator(p, p): ONE
                             for p in real.paths[i - 1]
                             if p.edges and p.edges[-1] == edge}
                    labels.append(("edge", edge))
                    elements.append(AlgebraElement(terms))
    for i in range(1, diagram.num_vertices(level) + 1):
        if (level, i) in points:
            zero = Path((level, i))
            labels.append(("vertex", (level, i)))
            elements.append(AlgebraElement({Generator(zero, zero): ONE}))
    return tuple(labels), tuple(elements)


def check_diagonal_recursion(diagram: BratteliDiagram, points: PointSet,
                             level: int, cap: int = DEFAULT_CAP,
                             realizations=None) -> VerificationItem:
    """Verify that one diagonal step generates the next.

    Both inclusions are checked by exact row reduction: the span of the
    embedded previous diagonal multiplied by the MASA generators
    (together with the generators themselves, which carry the identity of
    the deeper level) must equal the span of all path projections.
    """
    if realizations is None:
        prev = MatrixRealization(diagram, points, level - 1, cap)
        here = MatrixRealization(diagram, points, level, cap)
    else:
        prev, here = realizations
    c_prev = diagonal_basis(diagram, points, level - 1, cap, prev)
    _, d_here = masa_basis(diagram, points, level, cap, here)
    c_here = diagonal_basis(diagram, points, level, cap, here)

    generated = SpanBasis(key_sort=_gen_sort_key)
    for d in d_here:
        generated.insert(d.coefficient_vector())
    for c in c_prev:
        ec = embed(diagram, c)
        for d in d_here:
            prod = ec * d
            if not prod.is_zero():
                generated.insert(prod.coefficient_vector())

    target = SpanBasis(key_sort=_gen_sort_key)
    for c in c_here:
        target.insert(c.coefficient_vector())

    forward = all(target.contains(row) for row in generated.rows())
    backward = all(generated.contains(row) for row in target.rows())
    embeds = all(target.contains(embed(diagram, c).coefficient_vector())
                 for c in c_prev)
    ok = forward and backward and embeds
    return VerificationItem("diagonal_recursion", ok, {
        "level": level,
        "dim_generated": generated.dim,
        "dim_diagonal": target.dim,
        "spans_equal": forward and backward,
        "embedded_diagonal_contained": embeds,
    })


def _commutation_rows(unknown_basis, fixed_elements):
    """Sparse rows, over the unknown index space, expressing that a linear
    combination of ``unknown_basis`` commutes with every fixed element."""
    rows: dict = {}
    for u_idx, x in enumerate(unknown_basis):
        for f_idx, y in enumerate(fixed_elements):
            comm = x * y - y * x
            for g, coeff in comm.terms.items():
                rows.setdefault((f_idx, g), {})[u_idx] = coeff
    return list(rows.values())


def _generating_units(real: MatrixRealization):
    """A *-closed generating set of the level algebra: per block, the
    first diagonal unit and the superdiagonal units with their adjoints."""
    gens = []
    for plist in real.paths:
        gens.append(Generator(plist[0], plist[0]))
        for t in range(len(plist) - 1):
            gens.append(Generator(plist[t], plist[t + 1]))
            gens.append(Generator(plist[t + 1], plist[t]))
    return [AlgebraElement({g: ONE}) for g in gens]


def relative_commutant(diagram: BratteliDiagram, points: PointSet,
                       level: int, cap: int = DEFAULT_CAP,
                       realizations=None):
    """Exact basis of the deeper algebra's commutant of the embedded level.

    Solves, by sparse nullspace computation, for all elements of the
    level ``level + 1`` algebra commuting with the embedded image of a
    generating set of the level ``level`` algebra.
    """
    if realizations is None:
        real_n = MatrixRealization(diagram, points, level, cap)
        real_n1 = MatrixRealization(diagram, points, level + 1, cap)
    else:
        real_n, real_n1 = realizations
    unknown_gens = sorted(real_n1.generators(), key=_gen_sort_key)
    unknowns = [AlgebraElement({g: ONE}) for g in unknown_gens]
    embedded = [embed(diagram, g) for g in _generating_units(real_n)]
    rows = []
    for raw in _commutation_rows(unknowns, embedded):
        rows.append(raw)
    solutions = nullspace(rows, len(unknowns))
    basis = []
    for sol in solutions:
        terms = {}
        for idx, coeff in sol.items():
            terms[unknown_gens[idx]] = coeff
        basis.append(AlgebraElement(terms))
    return tuple(basis)


def verify_masa(diagram: BratteliDiagram, points: PointSet, level: int,
                cap: int = DEFAULT_CAP, realizations=None) -> VerificationItem:
    """Check that the canonical MASA really is one.

    Establishes by exact linear algebra that the MASA generators of level
    ``level + 1`` lie inside the relative commutant, commute with each
    other, and that their centralizer within the relative commutant is
    exactly their own span.
    """
    if realizations is None:
        real_n = MatrixRealization(diagram, points, level, cap)
        real_n1 = MatrixRealization(diagram, points, level + 1, cap)
    else:
        real_n, real_n1 = realizations
    _, d_basis = masa_basis(diagram, points, level + 1, cap, real_n1)
    commutant = relative_commutant(diagram, points, level, cap,
                                   (real_n, real_n1))

    comm_span = SpanBasis(key_sort=_gen_sort_key)
    for w in commutant:
        comm_span.insert(w.coefficient_vector())
    d_span = SpanBasis(key_sort=_gen_sort_key)
    for d in d_basis:
        d_span.insert(d.coefficient_vector())

    contained = all(comm_span.contains(d.coefficient_vector()) for d in d_basis)
    abelian = all((d1 * d2 - d2 * d1).is_zero()
                  for d1 in d_basis for d2 in d_basis)

    rows = _commutation_rows(list(commutant), list(d_basis))
    centralizer = []
    for sol in nullspace(rows, len(commutant)):
        x = AlgebraElement()
        for idx, coeff in sol.items():
            x = x + commutant[idx].scale(coeff)
        centralizer.append(x)
    cent_span = SpanBasis(key_sort=_gen_sort_key)
    for x in centralizer:
        cent_span.insert(x.coefficient_vector())
    maximal = cent_span.dim == d_span.dim \
        and all(d_span.contains(row) for row in cent_span.rows()) \
        and all(cent_span.contains(row) for row in d_span.rows())

    ok = contained and abelian and maximal
    return VerificationItem("masa", ok, {
        "level": level + 1,
        "dim_masa": d_span.dim,
        "dim_relative_commutant": comm_span.dim,
        "dim_centralizer": cent_span.dim,
        "masa_in_commutant": contained,
        "abelian": abelian,
        "centralizer_equals_masa": maximal,
    })


@dataclass(frozen=True)
class FreeNormalizerCertificate:
    """Exact witnesses that a kernel generator is a free normalizer."""

    element: AlgebraElement
    square_zero: bool
    conjugates_into_diagonal: bool

    @property
    def ok(self) -> bool:
        return self.square_zero and self.conjugates_into_diagonal


def free_normalizer_certificates(diagram: BratteliDiagram, points: PointSet,
                                 level: int, cap: int = DEFAULT_CAP,
                                 realization=None):
    """Certify every off-diagonal unit as a square-zero free normalizer.

    For each off-diagonal generator ``g`` the certificate records that
    ``g * g`` vanishes and that ``g b g*`` and ``g* b g`` stay inside the
    diagonal span for every diagonal basis projection ``b``.
    """
    real = realization or MatrixRealization(diagram, points, level, cap)
    diag = [AlgebraElement({g: ONE}) for g in real.diagonal_generators()]
    certs = []
    for g in real.generators():
        if g.is_diagonal:
            continue
        x = AlgebraElement({g: ONE})
        x_star = x.adjoint()
        square_zero = (x * x).is_zero()
        conj_ok = True
        for b in diag:
            left = x * b * x_star
            right = x_star * b * x
            if left != left.diagonal_part() or right != right.diagonal_part():
                conj_ok = False
                break
        certs.append(FreeNormalizerCertificate(x, square_zero, conj_ok))
    return tuple(certs)


def verify_expectation(diagram: BratteliDiagram, points: PointSet, level: int,
                       cap: int = DEFAULT_CAP, realization=None,
                       samples=None) -> VerificationItem:
    """Exact checks of the conditional-expectation axioms at one level.

    Idempotence and diagonal-bimodule linearity are checked on the given
    sample elements (or a small deterministic family); faithfulness uses
    the realization: the diagonal of ``x* x`` vanishes only for zero.
    Finally the kernel must be spanned exactly by the certified free
    normalizers.
    """
    real = realization or MatrixRealization(diagram, points, level, cap)
    gens = sorted(real.generators(), key=_gen_sort_key)
    diag = [AlgebraElement({g: ONE}) for g in real.diagonal_generators()]
    if samples is None:
        samples = []
        for t, g in enumerate(gens):
            x = AlgebraElement({g: GaussianRational(t % 3 + 1, (t + 1) % 2)})
            samples.append(x)

    idempotent = all(expectation(expectation(x)) == expectation(x)
                     for x in samples)
    module_linear = True
    for x in samples[: len(diag) * 2]:
        for c in diag[:4]:
            for cp in diag[-4:]:
                lhs = expectation(c * x * cp)
                rhs = c * expectation(x) * cp
                if lhs != rhs:
                    module_linear = False

    faithful = True
    for x in samples:
        if x.is_zero():
            continue
        if expectation(x.adjoint() * x).is_zero():
            faithful = False

    certs = free_normalizer_certificates(diagram, points, level, cap, real)
    certs_ok = all(c.ok for c in certs)
    kernel_span = SpanBasis(key_sort=_gen_sort_key)
    for c in certs:
        kernel_span.insert(c.element.coefficient_vector())
    dim_total = real.dimension
    dim_diag = sum(real.block_sizes)
    kernel_ok = kernel_span.dim == dim_total - dim_diag
    for x in samples:
        k = x - expectation(x)
        if not k.is_zero() and not kernel_span.contains(k.coefficient_vector()):
            kernel_ok = False

    ok = idempotent and module_linear and faithful and certs_ok and kernel_ok
    return VerificationItem("expectation", ok, {
        "level": level,
        "idempotent": idempotent,
        "module_linear": module_linear,
        "faithful_on_samples": faithful,
        "free_normalizers_certified": certs_ok,
        "kernel_spanned": kernel_ok,
        "dim_kernel": dim_total - dim_diag,
    })


def verify_diagonal_level(diagram: BratteliDiagram, points: PointSet,
                          level: int, cap: int = DEFAULT_CAP,
                          realizations=None) -> dict:
    """All diagonal checks tying level ``level`` to ``level + 1``."""
    if realizations is None:
        real_n = MatrixRealization(diagram, points, level, cap)
        real_n1 = MatrixRealization(diagram, points, level + 1, cap)
    else:
        real_n, real_n1 = realizations
    labels, d_basis = masa_basis(diagram, points, level + 1, cap, real_n1)
    expected_dim = diagram.in_degree_total(level + 1) \
        + sum(1 for (n, _) in points if n == level + 1)
    span = SpanBasis(key_sort=_gen_sort_key)
    for d in d_basis:
        span.insert(d.coefficient_vector())
    dim_ok = span.dim == expected_dim == len(d_basis)

    recursion = check_diagonal_recursion(diagram, points, level + 1, cap,
                                         (real_n, real_n1))
    masa = verify_masa(diagram, points, level, cap, (real_n, real_n1))
    expect = verify_expectation(diagram, points, level + 1, cap, real_n1)
    return {
        "level": level + 1,
        "dim_masa": len(d_basis),
        "dim_masa_expected": expected_dim,
        "masa_dim_ok": dim_ok,
        "recursion_ok": recursion.ok,
        "masa_ok": masa.ok,
        "expectation_ok": expect.ok,
        "ok": dim_ok and recursion.ok and masa.ok and expect.ok,
    }
