"""Reusable-pebble equivalence games between two simple graphs.

gamma pebble pairs, R rounds. Each round Spoiler picks a slot and places its
pebble on a vertex of either graph (lifting the slot's pebbles first if
placed); Duplicator answers on the other graph with the same slot. Duplicator
survives a round if the placed pairs still induce a partial isomorphism:
equal on one side iff equal on the other, adjacent iff adjacent. Duplicator
wins by surviving R rounds. The solver computes the exact game value by
minimax, memoized on the multiset of placed pairs; a naive slot-explicit
twin without memoization backs it as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .core import SimpleView

__all__ = [
    "GameConfig",
    "GameVerdict",
    "ResourceLimitError",
    "is_partial_iso",
    "duplicator_wins",
    "duplicator_wins_naive",
    "replay_witness",
]

DEFAULT_MEMO_CAP = 10_000_000


class ResourceLimitError(RuntimeError):
    """The solver's memo table outgrew its configured cap."""


@dataclass(frozen=True)
class GameConfig:
    """gamma pebble slots, each empty or holding a (left, right) pair."""

    slots: tuple[Optional[tuple[int, int]], ...]
    rounds_left: int

    def __post_init__(self):
        if self.rounds_left < 0:
            raise ValueError("rounds_left must be >= 0")
        if len(self.slots) < 1:
            raise ValueError("need at least one pebble slot")

    @property
    def gamma(self) -> int:
        return len(self.slots)

    @property
    def placed(self) -> tuple[tuple[int, int], ...]:
        return tuple(p for p in self.slots if p is not None)

    @classmethod
    def empty(cls, gamma: int, rounds: int) -> "GameConfig":
        return cls(slots=(None,) * gamma, rounds_left=rounds)


@dataclass(frozen=True)
class GameVerdict:
    """Game value plus an optional Spoiler strategy tree when he wins.

    Tree nodes carry the slot, side ("left" places in the first graph) and
    vertex of Spoiler's move, and a reply map from every Duplicator answer to
    either the string "violation" or a child node.
    """

    duplicator_wins: bool
    gamma: int
    rounds: int
    witness: Optional[dict] = None
    states_explored: int = 0


def is_partial_iso(cfg: Union[GameConfig, Iterable], svG: SimpleView, svH: SimpleView) -> bool:
    """Do the placed pairs induce a partial isomorphism between the views?"""
    pairs = list(cfg.placed if isinstance(cfg, GameConfig) else cfg)
    gsets = svG.neighbor_sets
    hsets = svH.neighbor_sets
    for i in range(len(pairs)):
        gi, hi = pairs[i]
        for j in range(i + 1, len(pairs)):
            gj, hj = pairs[j]
            if (gi == gj) != (hi == hj):
                return False
            if (gj in gsets[gi]) != (hj in hsets[hi]):
                return False
    return True


def _compatible(pair, others, gsets, hsets) -> bool:
    """Incremental partial-iso check of one new pair against placed ones."""
    x, y = pair
    for g, h in others:
        if (g == x) != (h == y):
            return False
        if (x in gsets[g]) != (y in hsets[h]):
            return False
    return True


def duplicator_wins(
    svG: SimpleView,
    svH: SimpleView,
    gamma: int,
    rounds: int,
    memo_cap: int = DEFAULT_MEMO_CAP,
    want_witness: bool = False,
) -> GameVerdict:
    """Exact game value, memoized on (sorted placed pairs, rounds left).

    Raises ResourceLimitError when the memo table would exceed memo_cap;
    it never degrades to an approximate answer. When Spoiler wins and
    want_witness is set, the verdict carries his strategy tree.
    """
    if svG.num_vertices == 0 or svH.num_vertices == 0:
        raise ValueError("both graphs must be nonempty")
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    solver = _Solver(svG, svH, gamma, memo_cap)
    wins = solver.value((), rounds)
    witness = None
    if not wins and want_witness:
        witness = solver.build_witness([None] * gamma, rounds)
    return GameVerdict(
        duplicator_wins=wins,
        gamma=gamma,
        rounds=rounds,
        witness=witness,
        states_explored=len(solver.memo),
    )


class _Solver:
    def __init__(self, svG: SimpleView, svH: SimpleView, gamma: int, memo_cap: int):
        self.gsets = svG.neighbor_sets
        self.hsets = svH.neighbor_sets
        self.nG = svG.num_vertices
        self.nH = svH.num_vertices
        self.gamma = gamma
        self.memo_cap = memo_cap
        self.memo: dict = {}

    def value(self, pairs: tuple, rounds: int) -> bool:
        """True iff Duplicator survives `rounds` more rounds from this multiset."""
        if rounds == 0:
            return True
        key = (pairs, rounds)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if len(self.memo) >= self.memo_cap:
            raise ResourceLimitError(
                f"memo table exceeded {self.memo_cap} entries"
            )
        self.memo[key] = True  # placeholder; cycles are impossible (rounds strictly decreases)
        result = True
        for base in self._bases(pairs):
            if not self._spoiler_side_ok(base, rounds, left=True):
                result = False
                break
            if not self._spoiler_side_ok(base, rounds, left=False):
                result = False
                break
        self.memo[key] = result
        return result

    def _bases(self, pairs: tuple):
        """Distinct pair multisets Spoiler can leave before placing."""
        seen = set()
        if len(pairs) < self.gamma:
            seen.add(pairs)
        for i in range(len(pairs)):
            seen.add(pairs[:i] + pairs[i + 1 :])
        return seen

    def _spoiler_side_ok(self, base: tuple, rounds: int, left: bool) -> bool:
        """Can Duplicator answer every Spoiler placement on this side?"""
        n_spoiler = self.nG if left else self.nH
        n_dup = self.nH if left else self.nG
        for x in range(n_spoiler):
            ok = False
            for y in range(n_dup):
                pair = (x, y) if left else (y, x)
                if not _compatible(pair, base, self.gsets, self.hsets):
                    continue
                child = tuple(sorted(base + (pair,)))
                if self.value(child, rounds - 1):
                    ok = True
                    break
            if not ok:
                return False
        return True

    def build_witness(self, slots: list, rounds: int) -> dict:
        """Spoiler strategy tree from a position he wins (value is False)."""
        placed = tuple(sorted(p for p in slots if p is not None))
        assert rounds >= 1 and not self.value(placed, rounds)
        for slot in range(self.gamma):
            base_slots = list(slots)
            base_slots[slot] = None
            base = tuple(sorted(p for p in base_slots if p is not None))
            for left in (True, False):
                n_spoiler = self.nG if left else self.nH
                n_dup = self.nH if left else self.nG
                for x in range(n_spoiler):
                    replies = {}
                    refuted = True
                    for y in range(n_dup):
                        pair = (x, y) if left else (y, x)
                        if not _compatible(pair, base, self.gsets, self.hsets):
                            replies[y] = "violation"
                            continue
                        child = tuple(sorted(base + (pair,)))
                        if self.value(child, rounds - 1):
                            refuted = False
                            break
                        replies[y] = pair
                    if not refuted:
                        continue
                    node = {
                        "slot": slot,
                        "side": "left" if left else "right",
                        "vertex": x,
                        "replies": {},
                    }
                    for y, entry in replies.items():
                        if entry == "violation":
                            node["replies"][y] = "violation"
                        else:
                            child_slots = list(base_slots)
                            child_slots[slot] = entry
                            node["replies"][y] = self.build_witness(
                                child_slots, rounds - 1
                            )
                    return node
        raise AssertionError("no winning Spoiler move found in a lost position")


def duplicator_wins_naive(svG: SimpleView, svH: SimpleView, gamma: int, rounds: int) -> bool:
    """Unmemoized oracle: explicit slots, no canonicalization, no caching.

    Same game semantics as duplicator_wins, kept deliberately independent of
    the memoized solver's canonical form.
    """
    if svG.num_vertices == 0 or svH.num_vertices == 0:
        raise ValueError("both graphs must be nonempty")
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    gsets = svG.neighbor_sets
    hsets = svH.neighbor_sets
    nG = svG.num_vertices
    nH = svH.num_vertices

    def survive(slots: tuple, r: int) -> bool:
        if r == 0:
            return True
        for slot in range(gamma):
            rest = [p for i, p in enumerate(slots) if i != slot and p is not None]
            for left in (True, False):
                n_spoiler = nG if left else nH
                n_dup = nH if left else nG
                for x in range(n_spoiler):
                    answered = False
                    for y in range(n_dup):
                        pair = (x, y) if left else (y, x)
                        if not _compatible(pair, rest, gsets, hsets):
                            continue
                        child = slots[:slot] + (pair,) + slots[slot + 1 :]
                        if survive(child, r - 1):
                            answered = True
                            break
                    if not answered:
                        return False
        return True

    return survive((None,) * gamma, rounds)


def replay_witness(node: dict, svG: SimpleView, svH: SimpleView, gamma: int) -> bool:
    """Validate a Spoiler tree: every leaf is a genuine violation.

    Replays the strategy from the empty configuration, checking that every
    Duplicator reply is covered and that replies marked "violation" really
    break the partial isomorphism. Reply keys may be strings (the tree
    survives a JSON round trip).
    """

    def walk(node, slots) -> bool:
        left = node["side"] == "left"
        n_dup = svH.num_vertices if left else svG.num_vertices
        x = node["vertex"]
        slot = node["slot"]
        if not 0 <= slot < gamma:
            return False
        try:
            replies = {int(y): entry for y, entry in node["replies"].items()}
        except (TypeError, ValueError):
            return False
        if len(replies) != len(node["replies"]) or sorted(replies) != list(range(n_dup)):
            return False
        for y, entry in replies.items():
            pair = (x, y) if left else (y, x)
            new_slots = list(slots)
            new_slots[slot] = pair
            placed = [p for p in new_slots if p is not None]
            broken = not is_partial_iso(placed, svG, svH)
            if entry == "violation":
                if not broken:
                    return False
            else:
                if broken:
                    return False
                if not walk(entry, new_slots):
                    return False
        return True

    return walk(node, [None] * gamma)
