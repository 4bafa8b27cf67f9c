"""Shared builders for the test suite: canonical diagrams and random data."""

from __future__ import annotations

from fractions import Fraction

from bratteli import AlgebraElement, BratteliDiagram, GaussianRational, validate

PAPER_LEVELS = ((3, 5), (11, 10), (21, 21))
PAPER_MAPS = (((1, 1), (0, 2)), ((1, 1), (1, 1)))

NORMALIZED_LEVELS = ((1,), (3, 5), (9, 10), (10, 10), (11, 10), (21, 21))
NORMALIZED_MAPS = (((3,), (5,)), ((1, 1), (0, 2)), ((1, 0), (0, 1)),
                   ((1, 0), (0, 1)), ((1, 1), (1, 1)))
NORMALIZED_POINTS = frozenset({(1, 1), (3, 1), (4, 1), (5, 1)})


def paper_diagram() -> BratteliDiagram:
    return BratteliDiagram.from_data(PAPER_LEVELS, PAPER_MAPS)


def m3_line(levels: int = 5) -> BratteliDiagram:
    sizes = [(1,), (2,)] + [(3,)] * (levels - 2)
    maps = [((1,),)] * (levels - 1)
    return BratteliDiagram.from_data(sizes[:levels], maps, tail=((1,),))


def growing_line(levels: int = 5) -> BratteliDiagram:
    sizes = [(n,) for n in range(1, levels + 1)]
    maps = [((1,),)] * (levels - 1)
    return BratteliDiagram.from_data(sizes, maps)


def random_valid_diagram(rng, max_levels: int = 8, max_size: int = 40):
    """A uniform-ish random diagram satisfying every invariant.

    Column coverage (injectivity) is established first, greedily against
    per-row budgets, then extra edges and slack are sprinkled wherever
    they fit under ``max_size``.
    """
    num_levels = rng.randint(1, max_levels)
    levels = [tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 3)))]
    maps = []
    for _ in range(num_levels - 1):
        prev = levels[-1]
        p_next = rng.randint(1, 3)
        consumed = [0] * p_next
        k = [[0] * len(prev) for _ in range(p_next)]
        for j in range(len(prev)):
            fits = [i for i in range(p_next)
                    if consumed[i] + prev[j] <= max_size]
            if not fits:
                k.append([0] * len(prev))
                consumed.append(0)
                p_next += 1
                fits = [p_next - 1]
            i = max(fits, key=lambda r: (max_size - consumed[r], -r))
            k[i][j] += 1
            consumed[i] += prev[j]
        for _ in range(rng.randint(0, 4)):
            i = rng.randrange(p_next)
            j = rng.randrange(len(prev))
            if consumed[i] + prev[j] <= max_size:
                k[i][j] += 1
                consumed[i] += prev[j]
        sizes = []
        for i in range(p_next):
            if consumed[i] == 0:
                sizes.append(rng.randint(1, 5))
            else:
                sizes.append(consumed[i] + rng.randint(0, min(5, max_size - consumed[i])))
        maps.append(tuple(tuple(row) for row in k))
        levels.append(tuple(sizes))
    diagram = BratteliDiagram(tuple(levels), tuple(maps))
    assert validate(diagram).ok
    return diagram


def random_scalar(rng) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                            Fraction(rng.randint(-2, 2), rng.randint(1, 2)))


def random_element(rng, realization, max_terms: int = 4) -> AlgebraElement:
    gens = sorted(realization.generators(), key=lambda g: g.sort_key())
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        g = gens[rng.randrange(len(gens))]
        c = random_scalar(rng)
        terms[g] = terms[g] + c if g in terms else c
    return AlgebraElement(terms)
