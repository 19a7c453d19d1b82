# Semigame - Oblivious Strategy Analysis
# Non-obliviousness certificates, certificate rates over random tournaments and a
# finite-box decision procedure for support-only (oblivious) optimal strategies

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .algebra import gains
from .config import Config
from .distribution import Distribution
from .exceptions import InputError
from .graph import Digraph, random_tournament
from .simplex import LinearProgram, solve_linear_program
from .solver import (
    EXACT,
    State,
    StateLike,
    ValueTable,
    as_state,
    best_response_values,
    solve_box,
    state_support,
    states_by_level,
)
from .strategies import StrategySpec
from .utilities.rational_utils import format_rational
from .utilities.seed_utils import derive_seed, make_rng

# Set up logging
logger = logging.getLogger(__name__)

Support = Tuple[int, ...]


@dataclass(frozen=True)
class Certificate:
    """Even vertex set S whose members' out-neighborhoods within S are never contained in another's"""

    S: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"S": list(self.S)}


def _out_masks(D: Digraph) -> List[int]:
    return [sum(1 << u for u in D.out_neighbors(v)) for v in range(D.k)]


def _holds_mask(out_masks: Sequence[int], members: Sequence[int], mask: int) -> bool:
    k = len(out_masks)
    for v in members:
        inside = out_masks[v] & mask
        if not inside:
            return False
        for w in range(k):
            if w != v and inside & ~out_masks[w] == 0:
                return False
    return True


def certificate_holds(D: Digraph, S: Sequence[int]) -> bool:
    """
    True iff S is nonempty, |S| is even and N+(v) & S is not a subset of N+(w) & S
    for every v in S and every w != v
    """
    members = sorted(set(S))
    outside = [v for v in members if not 0 <= v < D.k]
    if outside:
        raise InputError(f"Vertices {outside} are not in a digraph on {D.k} vertices")
    if not members or len(members) % 2:
        return False
    mask = sum(1 << v for v in members)
    return _holds_mask(_out_masks(D), members, mask)


def find_certificate(
    D: Digraph,
    cap: Optional[int] = None,
    samples: Optional[int] = None,
    seed: int = 0,
) -> Optional[Certificate]:
    """
    Search for a certificate

    Exhaustive (increasing size, then lexicographic) when k <= cap, so None is
    definitive there. Above the cap random subsets are tried instead.

    Args:
        D: tournament
        cap: largest k for exhaustive search (Config.CERTIFICATE_CAP by default)
        samples: subsets tried above the cap (Config.CERTIFICATE_SAMPLES by default)
        seed: seed for sampled search

    Returns:
        Optional[Certificate]: first certificate found
    """
    if not D.is_tournament():
        raise InputError("Certificates are defined for tournaments only")
    limit = Config.CERTIFICATE_CAP if cap is None else cap
    masks = _out_masks(D)
    k = D.k

    if k <= limit:
        for size in range(2, k + 1, 2):
            for members in itertools.combinations(range(k), size):
                mask = sum(1 << v for v in members)
                if _holds_mask(masks, members, mask):
                    return Certificate(tuple(members))
        return None

    tries = Config.CERTIFICATE_SAMPLES if samples is None else samples
    largest = k if k % 2 == 0 else k - 1
    rng = make_rng(derive_seed(seed, "certificate", D.fingerprint()))
    for i in range(tries):
        size = largest if i % 2 == 0 else int(rng.integers(1, largest // 2 + 1)) * 2
        members = tuple(sorted(int(v) for v in rng.choice(k, size=size, replace=False)))
        mask = sum(1 << v for v in members)
        if _holds_mask(masks, members, mask):
            return Certificate(members)
    return None


def oblivious_rate(k: int, samples: int, seed: int, cap: Optional[int] = None) -> float:
    """
    Fraction of random tournaments on k vertices carrying a certificate

    This lower-bounds the fraction that are not oblivious.
    """
    if k < 2:
        raise InputError(f"oblivious_rate needs k >= 2, got {k}")
    if samples < 1:
        raise InputError(f"samples must be at least 1, got {samples}")
    hits = 0
    for i in range(samples):
        D = random_tournament(k, derive_seed(seed, "tournament", k, i))
        if find_certificate(D, cap=cap, seed=derive_seed(seed, "search", k, i)) is not None:
            hits += 1
    rate = hits / samples
    logger.info(f"📊 Certificate rate at k={k}: {hits}/{samples} = {rate:.3f}")
    return rate


# ---------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class NotOblivious:
    box: State
    support: Optional[Support] = None
    certificate: Optional[Certificate] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": "not_oblivious",
            "box": list(self.box),
            "support": list(self.support) if self.support is not None else None,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


@dataclass(frozen=True)
class ObliviousOnBox:
    box: State
    table: Dict[Support, Distribution] = field(hash=False)

    def strategy(self) -> StrategySpec:
        return StrategySpec.oblivious(self.table)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": "oblivious_on_box",
            "box": list(self.box),
            "table": [
                {"support": list(support), "p": p.to_list()}
                for support, p in sorted(self.table.items(), key=lambda item: (len(item[0]), item[0]))
            ],
        }


@dataclass(frozen=True)
class Inconclusive:
    box: State
    reason: str
    certificate: Optional[Certificate] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": "inconclusive",
            "box": list(self.box),
            "reason": self.reason,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


ObliviousnessVerdict = Union[NotOblivious, ObliviousOnBox, Inconclusive]


def _ensure_table(D: Digraph, box: State, table: Optional[ValueTable]) -> ValueTable:
    if table is None:
        return solve_box(D, box)
    table.check_digraph(D)
    if table.backend != EXACT:
        raise InputError("Obliviousness is decided on exact tables only")
    if not table.covers(box):
        raise InputError(f"Value table does not cover box {list(box)}")
    return table


def states_by_support(box: StateLike) -> Dict[Support, List[State]]:
    """Nonzero states r <= box grouped by supp(r)"""
    grouped: Dict[Support, List[State]] = {}
    for level in states_by_level(box)[1:]:
        for state in level:
            grouped.setdefault(state_support(state), []).append(state)
    return grouped


def _support_polytope_rows(
    D: Digraph, support: Support, states: Sequence[State], table: ValueTable
) -> Tuple[List[List[Fraction]], List[Fraction]]:
    orientation = D.orientation_table()
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for state in states:
        children = [table.get(state[:u] + (state[u] - 1,) + state[u + 1:]) for u in support]
        target = table.get(state)
        for v in range(D.k):
            rows.append([orientation[v][u] + child for u, child in zip(support, children)])
            rhs.append(target)
    return rows, rhs


def support_polytope_point(
    D: Digraph, support: Support, states: Sequence[State], table: ValueTable
) -> Optional[Distribution]:
    """
    A mixture on `support` optimal at every listed state simultaneously, or None

    Feasibility of sum_u p_u (A_D[v,u] + S(r - delta_u)) <= S(r) for all v and all r.
    """
    rows, rhs = _support_polytope_rows(D, support, states, table)
    n = len(support)
    program = LinearProgram([0] * n, rows, rhs, [[1] * n], [1])
    solution = solve_linear_program(program)
    if not solution.is_optimal:
        return None
    weights = [Fraction(0)] * D.k
    for u, x in zip(support, solution.x):
        weights[u] = x
    return Distribution(weights, allowed=support)


def decide_oblivious_on_box(
    D: Digraph,
    box: StateLike,
    table: Optional[ValueTable] = None,
    certificate_cap: Optional[int] = None,
) -> ObliviousnessVerdict:
    """
    Decide whether one mixture per support is optimal at every state of the box

    Args:
        D: digraph
        box: largest state
        table: exact table covering the box (solved here when None)
        certificate_cap: exhaustive certificate search cap for tournaments

    Returns:
        ObliviousnessVerdict: NotOblivious (empty support polytope),
        ObliviousOnBox (verified table) or Inconclusive
    """
    bounds = as_state(box)
    table = _ensure_table(D, bounds, table)
    certificate = find_certificate(D, cap=certificate_cap) if D.is_tournament() else None

    mapping: Dict[Support, Distribution] = {}
    for support, states in sorted(states_by_support(bounds).items(), key=lambda item: (len(item[0]), item[0])):
        point = support_polytope_point(D, support, states, table)
        if point is None:
            logger.info(f"❌ No single mixture is optimal on support {list(support)} within box {list(bounds)}")
            return NotOblivious(box=bounds, support=support, certificate=certificate)
        mapping[support] = point

    strategy = StrategySpec.oblivious(mapping)
    achieved = best_response_values(D, bounds, strategy)
    mismatched = [state for state, v in achieved.items() if v != table.get(state)]
    if mismatched:
        return Inconclusive(
            box=bounds,
            reason=f"oblivious table misses the optimum at {list(mismatched[0])}",
            certificate=certificate,
        )
    if certificate is not None:
        return Inconclusive(
            box=bounds,
            reason=f"box too small to exhibit certificate {list(certificate.S)}",
            certificate=certificate,
        )

    logger.info(f"✅ Oblivious optimal table verified on box {list(bounds)}")
    return ObliviousOnBox(box=bounds, table=mapping)


def uniform_in_full_support_polytope(D: Digraph, box: StateLike, table: Optional[ValueTable] = None) -> bool:
    """True iff uniform play is optimal at every full-support state of the box"""
    bounds = as_state(box)
    table = _ensure_table(D, bounds, table)
    full = tuple(range(D.k))
    states = states_by_support(bounds).get(full, [])
    if not states:
        raise InputError(f"Box {list(bounds)} has no full-support state")
    rows, rhs = _support_polytope_rows(D, full, states, table)
    share = Fraction(1, D.k)
    return all(sum(c * share for c in row) <= bound for row, bound in zip(rows, rhs))


# -------------------------------------------------- argmax consistency check


@dataclass
class ArgmaxReport:
    checked: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {"checked": self.checked, "ok": self.ok, "violations": list(self.violations)}


def can_attain_max(D: Digraph, support: Support, v: int) -> bool:
    """
    Whether some q >= 0 with supp(q) = support makes v a maximizer of (A_D q)_w

    Scaling lets supp(q) = support be written as q_u >= 1 on the support.
    """
    orientation = D.orientation_table()
    n = len(support)
    rows = []
    rhs = []
    for w in range(D.k):
        if w == v:
            continue
        rows.append([orientation[w][u] - orientation[v][u] for u in support])
        rhs.append(0)
    for i in range(n):
        row = [0] * n
        row[i] = -1
        rows.append(row)
        rhs.append(-1)
    solution = solve_linear_program(LinearProgram([0] * n, rows, rhs))
    return solution.is_optimal


def argmax_consistency_check(
    D: Digraph,
    box: StateLike,
    table: Union[ObliviousOnBox, StrategySpec, Dict[Support, Distribution]],
) -> ArgmaxReport:
    """
    Every vertex of a support that can be Norman's best reply to some full-support
    mixture must be a best reply to the table's mixture on that support

    Args:
        D: digraph
        box: box the table was verified on
        table: ObliviousOnBox verdict, oblivious StrategySpec or support mapping

    Returns:
        ArgmaxReport: checked pairs and violations (expected empty)
    """
    if isinstance(table, ObliviousOnBox):
        mapping = table.table
    elif isinstance(table, StrategySpec):
        mapping = table.oblivious_mapping()
    else:
        mapping = dict(table)

    bounds = as_state(box)
    report = ArgmaxReport()
    for support in sorted(states_by_support(bounds), key=lambda s: (len(s), s)):
        if support not in mapping:
            raise InputError(f"Table has no mixture for support {list(support)}")
        p = mapping[support]
        values = gains(D, p)
        best = max(values)
        for v in support:
            if not can_attain_max(D, support, v):
                continue
            report.checked += 1
            if values[v] != best:
                report.violations.append({
                    "support": list(support),
                    "vertex": v,
                    "gain": format_rational(values[v]),
                    "max_gain": format_rational(best),
                })
    if report.violations:
        logger.warning(f"⚠️ {len(report.violations)} argmax violations in oblivious table")
    return report
