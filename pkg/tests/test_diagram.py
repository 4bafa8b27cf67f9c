import random

import pytest

from bratteli import (BratteliDiagram, NoTail, extend, slack, telescope,
                      validate)
from bratteli.diagram import mat_mul

from .helpers import random_valid_diagram


def test_paper_example_is_valid(paper):
    assert validate(paper).ok


def test_single_level_no_maps_is_valid():
    d = BratteliDiagram.from_data([(1,)])
    assert validate(d).ok


def test_negative_slack_detected():
    d = BratteliDiagram.from_data([(3, 5), (7, 10)], [((1, 1), (0, 2))])
    verdict = validate(d)
    assert not verdict.ok
    assert verdict.issue.kind == "negative_slack"
    assert "(2,1)" in verdict.issue.where


def test_zero_column_detected():
    d = BratteliDiagram.from_data([(1, 1), (2,)], [((2, 0),)])
    verdict = validate(d)
    assert not verdict.ok
    assert verdict.issue.kind == "zero_column"


def test_dimension_mismatch_detected():
    d = BratteliDiagram.from_data([(1,), (2, 2)], [((1,),)])
    verdict = validate(d)
    assert not verdict.ok
    assert verdict.issue.kind == "dimension_mismatch"


def test_nonpositive_size_detected():
    d = BratteliDiagram.from_data([(0,)])
    verdict = validate(d)
    assert not verdict.ok
    assert verdict.issue.kind == "empty_level"


def test_slack_of_paper_example(paper):
    assert slack(paper) == ((3, 5), (3, 0), (0, 0))


def test_slack_decomposes_sizes():
    rng = random.Random(7)
    for _ in range(25):
        d = random_valid_diagram(rng)
        profile = slack(d)
        for n in range(2, d.num_levels + 1):
            mat = d.map_from(n - 1)
            prev = d.sizes(n - 1)
            for i, size in enumerate(d.sizes(n)):
                consumed = sum(mat[i][j] * prev[j] for j in range(len(prev)))
                assert size == profile[n - 1][i] + consumed


def test_level_one_slack_is_sizes():
    d = BratteliDiagram.from_data([(1,)])
    assert slack(d) == ((1,),)


def test_telescope_of_paper_example(paper):
    assert telescope(paper, 1, 3) == ((1, 3), (1, 3))


def test_telescope_single_step_is_the_map(paper):
    assert telescope(paper, 1, 2) == paper.map_from(1)
    assert telescope(paper, 2, 3) == paper.map_from(2)


def test_telescope_associativity():
    rng = random.Random(11)
    for _ in range(20):
        d = random_valid_diagram(rng, max_levels=6)
        if d.num_levels < 3:
            continue
        a, b, c = 1, d.num_levels // 2 + 1, d.num_levels
        if not a < b < c:
            continue
        assert telescope(d, a, c) == mat_mul(telescope(d, b, c),
                                             telescope(d, a, b))


def test_telescope_range_errors(paper):
    with pytest.raises(IndexError):
        telescope(paper, 2, 2)
    with pytest.raises(IndexError):
        telescope(paper, 1, 4)


def test_extend_m3_line():
    d = BratteliDiagram.from_data([(1,), (2,), (3,)], [((1,),), ((1,),)],
                                  tail=((1,),))
    e = extend(d, 2)
    assert e.levels == ((1,), (2,), (3,), (3,), (3,))
    assert validate(e).ok


def test_extend_by_zero_is_identity():
    d = BratteliDiagram.from_data([(1,)], tail=((2,),))
    assert extend(d, 0) == d


def test_extend_doubling_tail():
    d = BratteliDiagram.from_data([(1,)], tail=((2,),))
    e = extend(d, 3)
    assert e.levels == ((1,), (2,), (4,), (8,))


def test_extend_without_tail_raises(paper):
    with pytest.raises(NoTail):
        extend(paper, 1)


def test_extend_preserves_validity():
    rng = random.Random(13)
    for _ in range(10):
        d = random_valid_diagram(rng, max_levels=4)
        p = d.num_vertices(d.num_levels)
        tail = tuple(tuple(1 if i == j else 0 for j in range(p))
                     for i in range(p))
        tailed = BratteliDiagram(d.levels, d.maps, tail)
        assert validate(tailed).ok
        assert validate(extend(tailed, 3)).ok


def test_values_are_immutable(paper):
    with pytest.raises(AttributeError):
        paper.levels = ()
