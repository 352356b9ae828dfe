import random
from itertools import combinations

import pytest

from pagraph import (
    GameConfig,
    GameVerdict,
    ResourceLimitError,
    SimpleView,
    duplicator_wins,
    duplicator_wins_naive,
    is_partial_iso,
    replay_witness,
)
from helpers import random_view, relabel_view


def triangle():
    return SimpleView.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def star(leaves):
    return SimpleView.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path(n):
    return SimpleView.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_config_basics():
    cfg = GameConfig.empty(3, 2)
    assert cfg.gamma == 3
    assert cfg.placed == ()
    assert cfg.rounds_left == 2
    with pytest.raises(ValueError):
        GameConfig(slots=(), rounds_left=1)
    with pytest.raises(ValueError):
        GameConfig(slots=(None,), rounds_left=-1)


def test_partial_iso_empty_config():
    assert is_partial_iso(GameConfig.empty(2, 1), triangle(), star(3))


def test_partial_iso_single_pair():
    g, h = triangle(), star(3)
    for x in range(3):
        for y in range(4):
            assert is_partial_iso([(x, y)], g, h)


def test_partial_iso_adjacency_mismatch():
    g, h = triangle(), star(3)
    # 0~1 in the triangle but two leaves are non-adjacent in the star
    assert not is_partial_iso([(0, 1), (1, 2)], g, h)
    # matching an edge onto an edge is fine
    assert is_partial_iso([(0, 0), (1, 1)], g, h)


def test_partial_iso_equality_mismatch():
    g, h = triangle(), triangle()
    assert not is_partial_iso([(0, 0), (0, 1)], g, h)
    assert not is_partial_iso([(0, 0), (1, 0)], g, h)
    assert is_partial_iso([(0, 0), (0, 0)], g, h)


def test_isomorphic_graphs_always_win():
    rng = random.Random(3)
    for _ in range(10):
        g = random_view(rng, 3, 6)
        h = relabel_view(g, rng)
        verdict = duplicator_wins(g, h, 2, 3)
        assert verdict.duplicator_wins


def test_one_pebble_always_wins():
    rng = random.Random(9)
    for _ in range(10):
        g = random_view(rng, 2, 6)
        h = random_view(rng, 2, 6)
        assert duplicator_wins(g, h, 1, 4).duplicator_wins


def test_zero_rounds_always_wins():
    assert duplicator_wins(triangle(), star(3), 3, 0).duplicator_wins


def test_triangle_vs_star():
    verdict = duplicator_wins(triangle(), star(3), 2, 2)
    assert not verdict.duplicator_wins
    # one round is not enough to expose the difference with 2 pebbles
    assert duplicator_wins(triangle(), star(3), 2, 1).duplicator_wins


def test_input_validation():
    empty = SimpleView.from_edges(0, [])
    with pytest.raises(ValueError):
        duplicator_wins(empty, triangle(), 2, 1)
    with pytest.raises(ValueError):
        duplicator_wins(triangle(), triangle(), 0, 1)
    with pytest.raises(ValueError):
        duplicator_wins(triangle(), triangle(), 2, -1)
    with pytest.raises(ValueError):
        duplicator_wins_naive(triangle(), empty, 2, 1)


def test_memo_cap_raises():
    g = path(6)
    h = star(5)
    with pytest.raises(ResourceLimitError):
        duplicator_wins(g, h, 3, 3, memo_cap=5)


def test_symmetry_and_monotonicity():
    rng = random.Random(31)
    for _ in range(12):
        g = random_view(rng, 3, 5)
        h = random_view(rng, 3, 5)
        table = {}
        for gamma in (1, 2, 3):
            for rounds in (0, 1, 2, 3):
                v = duplicator_wins(g, h, gamma, rounds).duplicator_wins
                assert v == duplicator_wins(h, g, gamma, rounds).duplicator_wins
                table[(gamma, rounds)] = v
        for gamma in (1, 2, 3):
            for rounds in (1, 2, 3):
                # surviving a longer game implies surviving a shorter one
                if table[(gamma, rounds)]:
                    assert table[(gamma, rounds - 1)]
        for gamma in (2, 3):
            for rounds in (0, 1, 2, 3):
                # extra pebbles only help Spoiler
                if table[(gamma, rounds)]:
                    assert table[(gamma - 1, rounds)]


def test_memoized_matches_naive():
    rng = random.Random(47)
    for _ in range(15):
        g = random_view(rng, 3, 5)
        h = random_view(rng, 3, 5)
        for gamma in (1, 2):
            for rounds in (1, 2):
                assert (
                    duplicator_wins(g, h, gamma, rounds).duplicator_wins
                    == duplicator_wins_naive(g, h, gamma, rounds)
                )


def test_witness_replays():
    g, h = triangle(), star(3)
    verdict = duplicator_wins(g, h, 2, 2, want_witness=True)
    assert not verdict.duplicator_wins
    assert verdict.witness is not None
    assert replay_witness(verdict.witness, g, h, 2)

    def depth(node):
        kids = [v for v in node["replies"].values() if isinstance(v, dict)]
        return 1 + (max(map(depth, kids)) if kids else 0)

    assert depth(verdict.witness) <= 2


def test_witness_replays_randomized():
    rng = random.Random(53)
    found = 0
    for _ in range(40):
        g = random_view(rng, 3, 5)
        h = random_view(rng, 3, 5)
        gamma, rounds = rng.choice([(2, 2), (2, 3), (3, 2)])
        verdict = duplicator_wins(g, h, gamma, rounds, want_witness=True)
        if verdict.duplicator_wins:
            assert verdict.witness is None
            continue
        found += 1
        assert replay_witness(verdict.witness, g, h, gamma)
    assert found > 5


def test_replay_rejects_corrupt_witness():
    g, h = triangle(), star(3)
    verdict = duplicator_wins(g, h, 2, 2, want_witness=True)
    wit = verdict.witness
    broken = dict(wit)
    broken["replies"] = {k: "violation" for k in wit["replies"]}
    assert not replay_witness(broken, g, h, 2)
    # a healthy-looking tree against the wrong graph pair fails too
    assert not replay_witness(wit, star(3), star(3), 2)


def test_verdict_fields():
    v = duplicator_wins(triangle(), triangle(), 2, 2)
    assert isinstance(v, GameVerdict)
    assert v.duplicator_wins
    assert (v.gamma, v.rounds) == (2, 2)
    assert v.states_explored > 0
    assert v.witness is None
