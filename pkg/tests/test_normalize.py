import random

import pytest

from bratteli import (BratteliDiagram, NoExcessSlack, NotNormalized,
                      compute_point_set, count_paths, insert_slack_level,
                      normalize, normalize_with_positions, prepend_unit_level,
                      slack, telescope, validate)

from .helpers import (NORMALIZED_LEVELS, NORMALIZED_MAPS, NORMALIZED_POINTS,
                      m3_line, random_valid_diagram)


def test_prepend_on_paper_example(paper):
    d = prepend_unit_level(paper)
    assert d.levels == ((1,), (3, 5), (11, 10), (21, 21))
    assert d.maps[0] == ((3,), (5,))
    assert d.maps[1:] == paper.maps


def test_prepend_is_idempotent(paper):
    once = prepend_unit_level(paper)
    assert prepend_unit_level(once) == once


def test_prepend_single_vertex():
    d = BratteliDiagram.from_data([(2,)])
    out = prepend_unit_level(d)
    assert out.levels == ((1,), (2,))
    assert out.maps == (((2,),),)


def test_insertion_sequence_matches_worked_example(paper):
    d = prepend_unit_level(paper)
    d = insert_slack_level(d, 3)
    assert d.levels == ((1,), (3, 5), (10, 10), (11, 10), (21, 21))
    assert d.maps[2] == ((1, 0), (0, 1))
    assert slack(d)[2] == (2, 0)
    d = insert_slack_level(d, 3)
    assert d.levels == ((1,), (3, 5), (9, 10), (10, 10), (11, 10), (21, 21))


def test_insertion_requires_excess_slack(paper):
    d = prepend_unit_level(paper)
    with pytest.raises(NoExcessSlack):
        insert_slack_level(d, 2)


def test_insertion_shifts_slack_down_by_one():
    # a single vertex with slack 5 needs four insertions
    d = BratteliDiagram.from_data([(1,), (6,)], [((1,),)])
    d1 = insert_slack_level(d, 2)
    assert d1.levels == ((1,), (5,), (6,))
    assert slack(d1) == ((1,), (4,), (1,))


def test_insertion_strictly_decreases_excess():
    rng = random.Random(5)
    for _ in range(30):
        d = prepend_unit_level(random_valid_diagram(rng, max_levels=5))
        profile = slack(d)
        excess = sum(max(0, s - 1) for level in profile[1:] for s in level)
        offending = [n for n in range(2, d.num_levels + 1)
                     if any(s > 1 for s in profile[n - 1])]
        if not offending:
            continue
        d2 = insert_slack_level(d, offending[0])
        profile2 = slack(d2)
        excess2 = sum(max(0, s - 1) for level in profile2[1:] for s in level)
        assert excess2 < excess


def test_drinen_golden(paper):
    out = normalize(paper, "drinen")
    assert out.levels == NORMALIZED_LEVELS
    assert out.maps == NORMALIZED_MAPS
    profile = slack(out)
    assert all(s in (0, 1) for level in profile[1:] for s in level)
    assert out.levels[0] == (1,)


def test_drinen_idempotent_on_normalized(paper):
    out = normalize(paper, "drinen")
    assert normalize(out, "drinen") == out


def test_drinen_telescoping(paper):
    out, positions = normalize_with_positions(paper, "drinen")
    assert positions == (2, 5, 6)
    # the prepended stretch composes to the column of original level-1 sizes
    assert telescope(out, 1, positions[0]) == ((3,), (5,))
    for m in range(1, paper.num_levels):
        assert telescope(out, positions[m - 1], positions[m]) == paper.map_from(m)


def test_drinen_point_set(paper):
    out = normalize(paper, "drinen")
    assert compute_point_set(out, "drinen") == NORMALIZED_POINTS


def test_point_set_requires_normalization(paper):
    with pytest.raises(NotNormalized):
        compute_point_set(paper, "drinen")


def test_m3_point_set():
    d = m3_line(5)
    assert compute_point_set(d, "drinen") == {(1, 1), (2, 1), (3, 1)}


def test_tail_levels_contribute_no_points():
    d = m3_line(8)
    points = compute_point_set(d, "drinen")
    assert all(n <= 3 for (n, _) in points)


def test_kumjian_on_paper_example(paper):
    out, positions = normalize_with_positions(paper, "kumjian")
    assert out.levels == ((1, 1), (3, 5, 1), (11, 10), (21, 21))
    assert out.maps == (((3, 0), (0, 5), (0, 0)),
                        ((1, 1, 3), (0, 2, 0)),
                        ((1, 1), (1, 1)))
    assert positions == (2, 3, 4)
    points = compute_point_set(out, "kumjian")
    assert points == {(1, 1), (1, 2), (2, 3)}
    counts = count_paths(out, points)
    assert counts == out.levels


def test_kumjian_added_vertices_are_sources(paper):
    out = normalize(paper, "kumjian")
    for (n, i) in compute_point_set(out, "kumjian"):
        assert out.in_degree(n, i) == 0
        assert out.size(n, i) == 1


def test_kumjian_preserves_original_maps(paper):
    out, positions = normalize_with_positions(paper, "kumjian")
    for m in range(1, paper.num_levels):
        composed = out.map_from(positions[m - 1])
        original = paper.map_from(m)
        p_next = paper.num_vertices(m + 1)
        p_prev = paper.num_vertices(m)
        restricted = tuple(row[:p_prev] for row in composed[:p_next])
        assert restricted == original


def test_both_strategies_reproduce_sizes_randomly():
    rng = random.Random(23)
    for _ in range(40):
        d = random_valid_diagram(rng, max_levels=6, max_size=25)
        for strategy in ("drinen", "kumjian"):
            out = normalize(d, strategy)
            assert validate(out).ok
            points = compute_point_set(out, strategy)
            assert count_paths(out, points) == out.levels


def test_normalize_rejects_unknown_strategy(paper):
    with pytest.raises(ValueError):
        normalize(paper, "other")
