# Semigame - Restricted Games
# Zero-sum games where both Alice and Bob must spend a fixed multiset of options

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .distribution import Distribution
from .exceptions import InputError
from .simulate import sample_vertex
from .utilities.rational_utils import format_rational, parse_rational, to_fraction
from .utilities.seed_utils import rep_rng
from .utilities.stats_utils import SampleSummary, summarize

# Set up logging
logger = logging.getLogger(__name__)

ALICE = "alice"
BOB = "bob"
SIDES = (ALICE, BOB)

PairKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


class BimatrixGame:
    """
    Alice's payoff matrix G(i, j): rows are Alice's options, columns Bob's

    Bob's payoff is -G(i, j). Labels are optional display names.
    """

    __slots__ = ("_payoffs", "_row_labels", "_col_labels")

    def __init__(
        self,
        payoffs: Sequence[Sequence[Any]],
        row_labels: Optional[Sequence[str]] = None,
        col_labels: Optional[Sequence[str]] = None,
    ):
        rows = [tuple(to_fraction(x) for x in row) for row in payoffs]
        if not rows or not rows[0]:
            raise InputError("Payoff matrix needs at least one row and one column")
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise InputError(f"Payoff row {i} has {len(row)} entries, expected {width}")
        self._payoffs: Tuple[Tuple[Fraction, ...], ...] = tuple(rows)
        self._row_labels = tuple(row_labels) if row_labels else tuple(str(i) for i in range(len(rows)))
        self._col_labels = tuple(col_labels) if col_labels else tuple(str(j) for j in range(width))
        if len(self._row_labels) != len(rows) or len(self._col_labels) != width:
            raise InputError("Option labels do not match the payoff matrix shape")

    @property
    def rows(self) -> int:
        return len(self._payoffs)

    @property
    def cols(self) -> int:
        return len(self._payoffs[0])

    @property
    def row_labels(self) -> Tuple[str, ...]:
        return self._row_labels

    @property
    def col_labels(self) -> Tuple[str, ...]:
        return self._col_labels

    def payoff(self, i: int, j: int) -> Fraction:
        return self._payoffs[i][j]

    def options(self, side: str) -> int:
        return self.rows if _check_side(side) == ALICE else self.cols

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "payoffs": [[format_rational(x) for x in row] for row in self._payoffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "BimatrixGame":
        try:
            rows, cols, payoffs = int(payload["rows"]), int(payload["cols"]), payload["payoffs"]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"Game JSON needs integer 'rows', 'cols' and a 'payoffs' matrix: {e}") from e
        if len(payoffs) != rows or any(len(row) != cols for row in payoffs):
            raise InputError(f"Payoff matrix shape does not match rows={rows}, cols={cols}")
        return cls([[parse_rational(str(x)) for x in row] for row in payoffs])

    @classmethod
    def from_json(cls, text: str) -> "BimatrixGame":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"Malformed game JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
        return cls.from_dict(payload)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BimatrixGame):
            return NotImplemented
        return self._payoffs == other._payoffs

    def __hash__(self) -> int:
        return hash(self._payoffs)

    def __repr__(self) -> str:
        return f"BimatrixGame({self.rows}x{self.cols})"


def rps_game() -> BimatrixGame:
    """Rock, Paper, Scissors with options ordered (R, P, S)"""
    return BimatrixGame(
        [[0, -1, 1], [1, 0, -1], [-1, 1, 0]],
        row_labels=("R", "P", "S"),
        col_labels=("R", "P", "S"),
    )


def matching_game() -> BimatrixGame:
    """Matching Pennies: Alice scores on a match, Bob on a mismatch"""
    return BimatrixGame(
        [[1, -1], [-1, 1]],
        row_labels=("H", "T"),
        col_labels=("H", "T"),
    )


def load_game(path: Path) -> BimatrixGame:
    path = Path(path)
    if not path.exists():
        raise InputError(f"Game file not found: {path}")
    return BimatrixGame.from_json(path.read_text(encoding="utf-8"))


def parse_game_spec(spec: str) -> BimatrixGame:
    """`rps`, `matching` or a path to a game JSON file"""
    name = spec.strip().lower()
    if name in ("rps", "rock-paper-scissors"):
        return rps_game()
    if name in ("matching", "matching-pennies"):
        return matching_game()
    return load_game(Path(spec))


@dataclass(frozen=True)
class RestrictionPair:
    """Remaining option counts for Alice (a) and Bob (b); both sides have the same total"""

    a: Tuple[int, ...]
    b: Tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        b = tuple(int(x) for x in self.b)
        if any(x < 0 for x in a + b):
            raise InputError(f"Restriction counts must be non-negative: a={list(a)}, b={list(b)}")
        if sum(a) != sum(b):
            raise InputError(f"Alice has {sum(a)} moves but Bob has {sum(b)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, a_text: str, b_text: str) -> "RestrictionPair":
        try:
            a = [int(x) for x in a_text.split(",") if x.strip()]
            b = [int(x) for x in b_text.split(",") if x.strip()]
        except ValueError as e:
            raise InputError(f"Restriction vectors must be comma-separated integers: {e}") from e
        return cls(tuple(a), tuple(b))

    @property
    def N(self) -> int:
        return sum(self.a)

    def is_empty(self) -> bool:
        return self.N == 0

    def side(self, side: str) -> Tuple[int, ...]:
        return self.a if _check_side(side) == ALICE else self.b

    def support(self, side: str) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.side(side)) if c > 0)

    def minus(self, i: int, j: int) -> "RestrictionPair":
        """State after Alice plays i and Bob plays j"""
        if self.a[i] <= 0 or self.b[j] <= 0:
            raise InputError(f"Cannot play ({i}, {j}) from a={list(self.a)}, b={list(self.b)}")
        a = list(self.a)
        b = list(self.b)
        a[i] -= 1
        b[j] -= 1
        return RestrictionPair(tuple(a), tuple(b))

    def key(self) -> PairKey:
        return (self.a, self.b)

    def check_game(self, G: BimatrixGame) -> None:
        if len(self.a) != G.rows or len(self.b) != G.cols:
            raise InputError(
                f"Restriction lengths ({len(self.a)}, {len(self.b)}) do not match a {G.rows}x{G.cols} game"
            )


# A per-state rule maps the current pair to a Distribution over that side's options
Rule = Callable[[RestrictionPair], Distribution]


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise InputError(f"Unknown side '{side}', expected one of {list(SIDES)}")
    return side


def _other(side: str) -> str:
    return BOB if _check_side(side) == ALICE else ALICE


def restricted_value(G: BimatrixGame, pair: RestrictionPair) -> Fraction:
    """
    Expected score for Alice under optimal play: sum_ij G(i,j) a_i b_j / N

    Returns 0 for the empty game.
    """
    pair.check_game(G)
    N = pair.N
    if N == 0:
        return Fraction(0)
    total = Fraction(0)
    for i, a_i in enumerate(pair.a):
        if not a_i:
            continue
        for j, b_j in enumerate(pair.b):
            if b_j:
                total += G.payoff(i, j) * a_i * b_j
    return total / N


def uniform_strategy(pair: RestrictionPair, side: str) -> Distribution:
    """Play option i with probability (remaining i) / (remaining total)"""
    counts = pair.side(side)
    if sum(counts) == 0:
        raise InputError(f"{side.capitalize()} has no moves left in a={list(pair.a)}, b={list(pair.b)}")
    return Distribution.proportional(counts)


def uniform_rule(side: str) -> Rule:
    _check_side(side)

    def rule(pair: RestrictionPair) -> Distribution:
        return uniform_strategy(pair, side)

    return rule


def priority_rule(order: Sequence[int], side: str) -> Rule:
    """Deterministic rule: the first option in `order` with moves left"""
    _check_side(side)
    ranking = list(order)

    def rule(pair: RestrictionPair) -> Distribution:
        counts = pair.side(side)
        for option in ranking:
            if 0 <= option < len(counts) and counts[option] > 0:
                return Distribution.point_mass(len(counts), option)
        # Options missing from the order are tried last in index order
        for option, count in enumerate(counts):
            if count > 0:
                return Distribution.point_mass(len(counts), option)
        raise InputError(f"{side.capitalize()} has no moves left")

    return rule


def _bounded_vectors(top: Sequence[int], total: int) -> Iterator[Tuple[int, ...]]:
    """All c <= top componentwise with sum(c) == total, in lexicographic order"""
    if not top:
        if total == 0:
            yield ()
        return
    rest_capacity = sum(top[1:])
    low = max(0, total - rest_capacity)
    for first in range(low, min(top[0], total) + 1):
        for tail in _bounded_vectors(top[1:], total - first):
            yield (first,) + tail


def pairs_by_level(pair: RestrictionPair) -> List[List[RestrictionPair]]:
    """Sub-pairs of `pair` grouped by remaining total, level 0 first"""
    levels: List[List[RestrictionPair]] = []
    for n in range(pair.N + 1):
        level = [
            RestrictionPair(a, b)
            for a in _bounded_vectors(pair.a, n)
            for b in _bounded_vectors(pair.b, n)
        ]
        levels.append(level)
    return levels


def _opponent_mixture(rule: Rule, state: RestrictionPair, side: str) -> Distribution:
    q = rule(state)
    counts = state.side(side)
    if len(q) != len(counts):
        raise InputError(f"Rule returned {len(q)} weights for {len(counts)} {side} options")
    outside = [i for i in q.support() if counts[i] == 0]
    if outside:
        raise InputError(
            f"{side.capitalize()} rule puts weight on exhausted options {outside} at "
            f"a={list(state.a)}, b={list(state.b)}"
        )
    return q


def restricted_best_response_values(
    G: BimatrixGame,
    pair: RestrictionPair,
    opponent: Rule,
    side: str,
) -> Dict[PairKey, Fraction]:
    """
    Alice's expected score at every sub-pair when `side` best-responds to `opponent`

    The responder picks a pure option per state: maximizing Alice's score for
    Alice, minimizing it for Bob. Against a fixed opponent mixture the per-state
    objective is linear, so a pure choice attains the optimum.
    """
    pair.check_game(G)
    responder = _check_side(side)
    other = _other(responder)
    values: Dict[PairKey, Fraction] = {}

    for level in pairs_by_level(pair):
        for state in level:
            if state.is_empty():
                values[state.key()] = Fraction(0)
                continue
            q = _opponent_mixture(opponent, state, other)
            options = []
            for mine in state.support(responder):
                score = Fraction(0)
                for theirs in q.support():
                    i, j = (mine, theirs) if responder == ALICE else (theirs, mine)
                    score += q[theirs] * (G.payoff(i, j) + values[state.minus(i, j).key()])
                options.append(score)
            values[state.key()] = max(options) if responder == ALICE else min(options)
        logger.debug(f"Best-response level committed ({len(level)} pairs)")

    return values


def restricted_best_response(
    G: BimatrixGame,
    pair: RestrictionPair,
    opponent: Rule,
    side: str,
) -> Fraction:
    """Exact optimal expected score (for Alice) when `side` responds to `opponent`"""
    return restricted_best_response_values(G, pair, opponent, side)[pair.key()]


@dataclass(frozen=True)
class UniformOptimalityReport:
    """Outcome of checking uniform play against a best response on every small pair"""

    checked: int
    mismatches: Tuple[Tuple[PairKey, str, Fraction, Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checked": self.checked,
            "ok": self.ok,
            "mismatches": [
                {
                    "a": list(key[0]),
                    "b": list(key[1]),
                    "responder": side,
                    "best_response": format_rational(found),
                    "restricted_value": format_rational(expected),
                }
                for key, side, found, expected in self.mismatches
            ],
        }


def check_uniform_optimality(G: BimatrixGame, max_total: int) -> UniformOptimalityReport:
    """
    Compare best responses to uniform play against sum_ij G(i,j) a_i b_j / N

    Every pair with total at most `max_total` is checked for both responders.
    """
    if max_total < 0:
        raise InputError(f"max_total must be non-negative, got {max_total}")
    checked = 0
    mismatches = []
    for responder in SIDES:
        opponent = uniform_rule(_other(responder))
        for N in range(max_total + 1):
            top = RestrictionPair((N,) * G.rows, (N,) * G.cols)
            values = restricted_best_response_values(G, top, opponent, responder)
            for a in _bounded_vectors(top.a, N):
                for b in _bounded_vectors(top.b, N):
                    state = RestrictionPair(a, b)
                    expected = restricted_value(G, state)
                    found = values[state.key()]
                    checked += 1
                    if found != expected:
                        mismatches.append((state.key(), responder, found, expected))
    logger.info(f"📊 Checked {checked} restricted pairs up to N={max_total}, {len(mismatches)} mismatches")
    return UniformOptimalityReport(checked, tuple(mismatches))


def play_restricted(
    G: BimatrixGame,
    pair: RestrictionPair,
    alice: Rule,
    bob: Rule,
    reps: int,
    seed: int,
) -> SampleSummary:
    """Monte Carlo estimate of Alice's score; rep i draws from its own derived generator"""
    pair.check_game(G)
    if reps < 1:
        raise InputError(f"reps must be positive, got {reps}")
    scores = np.empty(reps, dtype=np.float64)
    for rep in range(reps):
        rng = rep_rng(seed, rep)
        state = pair
        score = Fraction(0)
        while not state.is_empty():
            p = _opponent_mixture(alice, state, ALICE)
            q = _opponent_mixture(bob, state, BOB)
            i = sample_vertex(p, rng)
            j = sample_vertex(q, rng)
            score += G.payoff(i, j)
            state = state.minus(i, j)
        scores[rep] = float(score)
    summary = summarize(scores)
    logger.info(f"🎲 Restricted play: mean {summary.mean:.4f} ± {summary.stderr:.4f} over {reps} reps")
    return summary
