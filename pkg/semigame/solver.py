# Semigame - Backward-Induction Solver
# Exact game values S_D(r) by level-order sweeps with one linear program per state,
# optimal faces, best-response evaluation and the switch-inequality checker

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pandas as pd

from .algebra import gains
from .config import Config
from .distribution import Distribution
from .exceptions import InputError, InternalConsistencyError
from .graph import Digraph, cycle3
from .simplex import LinearProgram, solve_linear_program
from .utilities.io_utils import ensure_directory
from .utilities.rational_utils import format_rational, parse_rational

# Set up logging
logger = logging.getLogger(__name__)

State = Tuple[int, ...]

EXACT = "exact"
FLOAT = "float"
GREEDY_EXACT = "greedy-exact"
BACKENDS = (EXACT, FLOAT, GREEDY_EXACT)

FLOAT_TOLERANCE = 1e-12
CACHE_HEADER = "semigame-cache v1"


@dataclass(frozen=True)
class RestrictionVector:
    """Remaining play counts for Rei, one non-negative integer per vertex"""

    counts: Tuple[int, ...]

    def __post_init__(self):
        counts = tuple(self.counts)
        for v, c in enumerate(counts):
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise InputError(f"Restriction count r_{v} = {c!r} must be a non-negative integer")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def of(cls, value: "StateLike") -> "RestrictionVector":
        if isinstance(value, RestrictionVector):
            return value
        return cls(tuple(value))

    @classmethod
    def parse(cls, text: str) -> "RestrictionVector":
        """Parse "2,1,0" """
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as e:
            raise InputError(f"Malformed restriction vector '{text}'") from e

    @classmethod
    def zeros(cls, k: int) -> "RestrictionVector":
        return cls((0,) * k)

    @classmethod
    def uniform(cls, k: int, n: int) -> "RestrictionVector":
        return cls((n,) * k)

    @classmethod
    def unit(cls, k: int, v: int) -> "RestrictionVector":
        return cls(tuple(1 if u == v else 0 for u in range(k)))

    @property
    def k(self) -> int:
        return len(self.counts)

    def support(self) -> Tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.counts) if c > 0)

    def total(self) -> int:
        return sum(self.counts)

    def is_zero(self) -> bool:
        return not any(self.counts)

    def minus(self, v: int) -> "RestrictionVector":
        if self.counts[v] == 0:
            raise InputError(f"Vertex {v} is depleted in {list(self.counts)}")
        return RestrictionVector(_minus(self.counts, v))

    def plus(self, v: int) -> "RestrictionVector":
        return RestrictionVector(self.counts[:v] + (self.counts[v] + 1,) + self.counts[v + 1:])

    def dominated_by(self, box: "StateLike") -> bool:
        other = RestrictionVector.of(box).counts
        return len(other) == len(self.counts) and all(a <= b for a, b in zip(self.counts, other))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.counts)


StateLike = Union[RestrictionVector, Sequence[int]]


def as_state(r: StateLike) -> State:
    return RestrictionVector.of(r).counts


def _minus(state: State, v: int) -> State:
    return state[:v] + (state[v] - 1,) + state[v + 1:]


def state_support(state: State) -> Tuple[int, ...]:
    return tuple(v for v, c in enumerate(state) if c > 0)


def states_by_level(box: StateLike) -> List[List[State]]:
    """All states r <= box grouped by total(r), each level in lexicographic order"""
    bounds = as_state(box)
    levels: List[List[State]] = [[] for _ in range(sum(bounds) + 1)]
    for state in itertools.product(*(range(b + 1) for b in bounds)):
        levels[sum(state)].append(state)
    return levels


@dataclass
class ValueTable:
    """
    Solved values S_D(r) for one digraph and backend

    Every stored nonzero state has all its children r - delta_u stored.
    """

    fingerprint: str
    k: int
    backend: str = EXACT
    values: Dict[State, Any] = field(default_factory=dict)
    witnesses: Dict[State, Distribution] = field(default_factory=dict)
    completion_level: int = -1

    def __contains__(self, r: StateLike) -> bool:
        return as_state(r) in self.values

    def __len__(self) -> int:
        return len(self.values)

    def get(self, r: StateLike) -> Any:
        state = as_state(r)
        if state not in self.values:
            raise InputError(f"State {list(state)} is not in the value table")
        return self.values[state]

    def check_digraph(self, D: Digraph) -> None:
        if D.fingerprint() != self.fingerprint:
            raise InputError(
                f"Value table belongs to digraph {self.fingerprint}, not {D.fingerprint()}"
            )

    def covers(self, box: StateLike) -> bool:
        return all(state in self.values for level in states_by_level(box) for state in level)

    def check_children(self) -> List[State]:
        """States whose children are missing (expected empty)"""
        broken = []
        for state in self.values:
            for u in state_support(state):
                if _minus(state, u) not in self.values:
                    broken.append(state)
                    break
        return broken

    def to_frame(self) -> pd.DataFrame:
        ordered = sorted(self.values, key=lambda s: (sum(s), s))
        rows = []
        for state in ordered:
            value = self.values[state]
            rendered = repr(float(value)) if self.backend == FLOAT else format_rational(value)
            rows.append(list(state) + [rendered])
        columns = [f"r_{v}" for v in range(self.k)] + ["value"]
        return pd.DataFrame(rows, columns=columns)


# ------------------------------------------------------------------ state LPs


@dataclass(frozen=True)
class StateLP:
    """
    One backward-induction step at state r

    coefficients[v][i] = A_D[v, u_i] + S_D(r - delta_{u_i}) for u_i in support.
    Rei minimizes t subject to sum_i p_i coefficients[v][i] <= t for every v.
    """

    state: State
    support: Tuple[int, ...]
    coefficients: Tuple[Tuple[Any, ...], ...]

    @property
    def k(self) -> int:
        return len(self.coefficients)

    @property
    def shift(self) -> Any:
        # t - shift >= 0 at every feasible point
        return min(min(row) for row in self.coefficients)

    def to_linear_program(self) -> LinearProgram:
        """Variables (p_i for i in support, s) with t = shift + s"""
        shift = self.shift
        n = len(self.support)
        ub_rows = [[c - shift for c in row] + [-1] for row in self.coefficients]
        return LinearProgram(
            objective=[0] * n + [1],
            ub_rows=ub_rows,
            ub_rhs=[0] * len(ub_rows),
            eq_rows=[[1] * n + [0]],
            eq_rhs=[1],
        )


def build_state_lp(D: Digraph, r: StateLike, table: ValueTable) -> StateLP:
    """Assemble the state LP from the stored child values"""
    state = as_state(r)
    support = state_support(state)
    if not support:
        raise InputError("The zero state has no linear program")
    children = [table.get(_minus(state, u)) for u in support]
    orientation = D.orientation_table()
    coefficients = tuple(
        tuple(orientation[v][u] + child for u, child in zip(support, children))
        for v in range(D.k)
    )
    return StateLP(state=state, support=support, coefficients=coefficients)


def solve_lp(lp: StateLP, tolerance: Optional[float] = None) -> Tuple[Any, Any]:
    """
    Solve a state LP and re-verify the optimum by substitution

    Args:
        lp: state LP
        tolerance: None for exact arithmetic (Distribution witness), else a float
            tolerance (witness is a tuple of floats)

    Returns:
        Tuple: (value, witness)
    """
    program = lp.to_linear_program()
    solution = solve_linear_program(program, tolerance=tolerance)
    if not solution.is_optimal:
        raise InternalConsistencyError(
            f"State LP at {list(lp.state)} is {solution.status}; it must be feasible and bounded"
        )

    n = len(lp.support)
    value = lp.shift + solution.x[n]
    weights = [0] * lp.k
    for i, u in enumerate(lp.support):
        weights[u] = solution.x[i]

    payoffs = [sum((p * c for p, c in zip(solution.x[:n], row)), 0) for row in lp.coefficients]
    slack = 0 if tolerance is None else 1e-9
    if max(payoffs) > value + slack or max(payoffs) < value - slack:
        raise InternalConsistencyError(
            f"Witness at {list(lp.state)} gives {max(payoffs)}, LP reported {value}"
        )

    if tolerance is None:
        return value, Distribution(weights, allowed=lp.support)
    return float(value), tuple(float(w) for w in weights)


# ------------------------------------------------------------------- sweeps


def new_table(D: Digraph, backend: str = EXACT) -> ValueTable:
    if backend not in BACKENDS:
        raise InputError(f"Unknown backend '{backend}' (expected one of {', '.join(BACKENDS)})")
    return ValueTable(fingerprint=D.fingerprint(), k=D.k, backend=backend)


def solve_box(
    D: Digraph,
    box: StateLike,
    table: Optional[ValueTable] = None,
    backend: str = EXACT,
) -> ValueTable:
    """
    Solve every state r <= box in increasing total(r)

    Each level only reads the previous, already committed level. States
    already in the table are reused.

    Args:
        D: digraph
        box: largest restriction vector
        table: table to extend (a fresh one when None)
        backend: exact, float or greedy-exact (C3 only)

    Returns:
        ValueTable: table covering the box
    """
    bounds = as_state(box)
    if len(bounds) != D.k:
        raise InputError(f"Box {list(bounds)} has {len(bounds)} entries for {D.k} vertices")
    if table is None:
        table = new_table(D, backend)
    else:
        table.check_digraph(D)
        backend = table.backend

    if backend == GREEDY_EXACT:
        _require_cycle3(D)
        for state, value in greedy_rps_values(bounds).items():
            table.values.setdefault(state, value)
        table.completion_level = max(table.completion_level, sum(bounds))
        return table

    tolerance = FLOAT_TOLERANCE if backend == FLOAT else None
    zero = 0.0 if backend == FLOAT else Fraction(0)
    levels = states_by_level(bounds)
    solved = 0
    for level, states in enumerate(levels):
        for state in states:
            if state in table.values:
                continue
            if level == 0:
                table.values[state] = zero
                continue
            lp = build_state_lp(D, state, table)
            value, witness = solve_lp(lp, tolerance=tolerance)
            table.values[state] = value
            if tolerance is None:
                table.witnesses[state] = witness
            solved += 1
        table.completion_level = max(table.completion_level, level)
        logger.debug(f"Level {level} committed ({len(states)} states)")

    logger.info(f"✅ Solved {solved} new states up to box {list(bounds)} ({backend} backend)")
    return table


def value(D: Digraph, r: StateLike, table: Optional[ValueTable] = None, backend: str = EXACT) -> Any:
    """S_D(r), solving (and memoizing in `table`) every state below r as needed"""
    state = as_state(r)
    if table is not None and state in table.values:
        table.check_digraph(D)
        return table.values[state]
    table = solve_box(D, state, table=table, backend=backend)
    return table.values[state]


def state_witness(D: Digraph, r: StateLike, table: ValueTable) -> Distribution:
    """Stored LP witness at r, recomputed from the child values when absent"""
    state = as_state(r)
    if state in table.witnesses:
        return table.witnesses[state]
    if table.backend == FLOAT:
        raise InputError("The float backend keeps no exact witnesses")
    if state not in table.values:
        raise InputError(f"State {list(state)} is not in the value table")
    if not any(state):
        raise InputError("The zero state has no witness")
    stored = table.get(state)
    computed, witness = solve_lp(build_state_lp(D, state, table))
    if computed != stored:
        raise InternalConsistencyError(
            f"Recomputed value {computed} at {list(state)} differs from stored {stored}"
        )
    table.witnesses[state] = witness
    return witness


# --------------------------------------------------------- greedy RPS oracle


def _require_cycle3(D: Digraph) -> None:
    if D != cycle3():
        raise InputError("The greedy-exact backend only applies to the 3-cycle 0->1->2->0")


def _greedy_scaled_step(state: State, lookup: Dict[State, int]) -> int:
    """
    N(r) = S(r) * 3**total(r) for greedy play on 0->1->2->0

    Three options: N = sum of children. Two options {a, b} with a beating b:
    N = 3**(t-1) + 2 N(r - delta_a) + N(r - delta_b). One option a:
    N = 3**t + 3 N(r - delta_a).
    """
    t = sum(state)
    support = state_support(state)
    if len(support) == 3:
        return sum(lookup[_minus(state, u)] for u in support)
    if len(support) == 2:
        a, b = support
        if (b + 1) % 3 == a:
            a, b = b, a
        return 3 ** (t - 1) + 2 * lookup[_minus(state, a)] + lookup[_minus(state, b)]
    (a,) = support
    return 3 ** t + 3 * lookup[_minus(state, a)]


def greedy_rps_values(box: StateLike) -> Dict[State, Fraction]:
    """Greedy-play values S(r) for every r <= box on the 3-cycle (exact)"""
    bounds = as_state(box)
    if len(bounds) != 3:
        raise InputError(f"Greedy values need a 3-entry box, got {list(bounds)}")
    scaled: Dict[State, int] = {}
    result: Dict[State, Fraction] = {}
    for states in states_by_level(bounds):
        for state in states:
            if not any(state):
                scaled[state] = 0
            else:
                scaled[state] = _greedy_scaled_step(state, scaled)
            result[state] = Fraction(scaled[state], 3 ** sum(state))
    return result


def greedy_rps_diagonal(ns: Iterable[int]) -> Dict[int, Fraction]:
    """
    S(n, n, n) on the 3-cycle for each requested n

    Sweeps the box (N, N, N), N = max(ns), keeping only one level of scaled
    integers in memory.
    """
    wanted = sorted(set(int(n) for n in ns))
    if not wanted or wanted[0] < 0:
        raise InputError(f"Diagonal sizes must be non-negative, got {wanted}")
    top = wanted[-1]
    results: Dict[int, Fraction] = {}
    previous: Dict[State, int] = {(0, 0, 0): 0}
    if 0 in wanted:
        results[0] = Fraction(0)

    for t in range(1, 3 * top + 1):
        current: Dict[State, int] = {}
        for a in range(max(0, t - 2 * top), min(top, t) + 1):
            for b in range(max(0, t - a - top), min(top, t - a) + 1):
                state = (a, b, t - a - b)
                current[state] = _greedy_scaled_step(state, previous)
        previous = current
        if t % 3 == 0 and t // 3 in wanted:
            m = t // 3
            results[m] = Fraction(current[(m, m, m)], 3 ** t)
            logger.debug(f"Greedy diagonal n={m}: {float(results[m]):.6f}")

    logger.info(f"✅ Greedy diagonal values computed up to n={top}")
    return results


# ------------------------------------------------------------------- faces


@dataclass(frozen=True)
class OptimalFace:
    """Range of each p_u over all optimal Rei mixtures at one state"""

    state: State
    value: Fraction
    bounds: Dict[int, Tuple[Fraction, Fraction]]
    witness: Distribution

    def is_singleton(self) -> bool:
        return all(lo == hi for lo, hi in self.bounds.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "state": list(self.state),
            "value": format_rational(self.value),
            "bounds": {str(u): [format_rational(lo), format_rational(hi)] for u, (lo, hi) in self.bounds.items()},
            "witness": self.witness.to_list(),
            "singleton": self.is_singleton(),
        }


def optimal_face(D: Digraph, r: StateLike, table: Optional[ValueTable] = None) -> OptimalFace:
    """
    Optimal face at r: fix t at S_D(r) and minimize/maximize each p_u

    Args:
        D: digraph
        r: nonzero state
        table: exact table (solved on demand)

    Returns:
        OptimalFace: value, per-coordinate extremes and the LP witness
    """
    state = as_state(r)
    if table is None:
        table = new_table(D)
    if table.backend != EXACT:
        raise InputError("Optimal faces need the exact backend")
    optimum = value(D, state, table)
    lp = build_state_lp(D, state, table)
    witness = state_witness(D, state, table)

    n = len(lp.support)
    ub_rows = [list(row) for row in lp.coefficients]
    ub_rhs = [optimum] * len(ub_rows)
    bounds: Dict[int, Tuple[Fraction, Fraction]] = {}
    for i, u in enumerate(lp.support):
        extremes = []
        for sign in (1, -1):
            objective = [0] * n
            objective[i] = sign
            program = LinearProgram(objective, ub_rows, ub_rhs, [[1] * n], [1])
            solution = solve_linear_program(program)
            if not solution.is_optimal:
                raise InternalConsistencyError(
                    f"Face LP for p_{u} at {list(state)} is {solution.status}"
                )
            extremes.append(solution.x[i])
        lo, hi = extremes
        if not lo <= witness[u] <= hi:
            raise InternalConsistencyError(f"Witness p_{u} = {witness[u]} outside face [{lo}, {hi}]")
        bounds[u] = (lo, hi)

    return OptimalFace(state=state, value=optimum, bounds=bounds, witness=witness)


# ----------------------------------------------------------- best responses


def best_response_values(D: Digraph, box: StateLike, rei: Any) -> Dict[State, Fraction]:
    """
    S_D(r; R) for every r <= box when Norman best-responds every round

    Args:
        D: digraph
        box: largest state
        rei: object with realize(D, RestrictionVector) -> Distribution

    Returns:
        dict: state -> exact value
    """
    bounds = as_state(box)
    if len(bounds) != D.k:
        raise InputError(f"Box {list(bounds)} has {len(bounds)} entries for {D.k} vertices")
    values: Dict[State, Fraction] = {}
    for level, states in enumerate(states_by_level(bounds)):
        for state in states:
            if level == 0:
                values[state] = Fraction(0)
                continue
            p = rei.realize(D, RestrictionVector(state))
            support = set(state_support(state))
            outside = [u for u in p.support() if u not in support]
            if outside:
                raise InputError(
                    f"Rei strategy plays depleted vertices {outside} at state {list(state)}"
                )
            gain = max(gains(D, p))
            values[state] = gain + sum(
                (p[u] * values[_minus(state, u)] for u in p.support()), Fraction(0)
            )
    return values


def best_response_value(D: Digraph, r: StateLike, rei: Any) -> Fraction:
    """S_D(r; R) with Norman best-responding to Rei's mixture each round"""
    state = as_state(r)
    return best_response_values(D, state, rei)[state]


# ------------------------------------------------------------ inequalities


def alpha(D: Digraph, u: int, v: int) -> int:
    """
    Switch cost between u and v

    Returns:
        int: 2 if N+(u) & N-(v) is nonempty, 0 if N+(u) | N-(v) is empty, 1 otherwise
    """
    if u == v:
        raise InputError(f"alpha needs two distinct vertices, got {u} twice")
    out_u = D.out_neighbors(u)
    in_v = D.in_neighbors(v)
    if out_u & in_v:
        return 2
    if not (out_u | in_v):
        return 0
    return 1


@dataclass
class SwitchLemmaReport:
    checked: int = 0
    strict_checked: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checked": self.checked,
            "strict_checked": self.strict_checked,
            "ok": self.ok,
            "violations": list(self.violations),
        }


def check_switch_lemma(D: Digraph, box: StateLike, table: Optional[ValueTable] = None) -> SwitchLemmaReport:
    """
    Check S(r - delta_u) <= S(r - delta_v) + alpha(u, v) on the box

    Strictness is required when N-(u) is nonempty or alpha(u, v) = 2.
    """
    bounds = as_state(box)
    if table is None:
        table = solve_box(D, bounds)
    elif not table.covers(bounds):
        solve_box(D, bounds, table=table)
    if table.backend == FLOAT:
        raise InputError("The switch inequality is only checked on exact tables")

    report = SwitchLemmaReport()
    costs = {(u, v): alpha(D, u, v) for u in range(D.k) for v in range(D.k) if u != v}
    for states in states_by_level(bounds):
        for state in states:
            for (u, v), cost in costs.items():
                if state[u] < 1 or state[v] < 1:
                    continue
                lhs = table.get(_minus(state, u))
                rhs = table.get(_minus(state, v)) + cost
                strict = bool(D.in_neighbors(u)) or cost == 2
                report.checked += 1
                if strict:
                    report.strict_checked += 1
                if lhs > rhs or (strict and lhs == rhs):
                    report.violations.append({
                        "state": list(state),
                        "u": u,
                        "v": v,
                        "lhs": format_rational(lhs),
                        "rhs": format_rational(rhs),
                        "strict": strict,
                    })
    if report.violations:
        logger.warning(f"⚠️ Switch inequality violated {len(report.violations)} times")
    return report


def lower_bound(D: Digraph, r: StateLike) -> int:
    """max_v (sum of r over N+(v) - sum of r over N-(v)); Norman scores this by always playing v"""
    state = as_state(r)
    if len(state) != D.k:
        raise InputError(f"State {list(state)} has {len(state)} entries for {D.k} vertices")
    return max(
        sum(state[u] for u in D.out_neighbors(v)) - sum(state[u] for u in D.in_neighbors(v))
        for v in range(D.k)
    )


def uniform_lower_bound(D: Digraph, n: int) -> int:
    """lower_bound(D, n * 1) = max_v (d+(v) - d-(v)) * n"""
    return D.max_degree_gap() * n


# -------------------------------------------------------------------- cache


def cache_path(D: Digraph, backend: str, cache_dir: Optional[str] = None) -> Path:
    directory = Config.CACHE_DIR if cache_dir is None else cache_dir
    return Path(directory) / f"{D.fingerprint()}-{backend}.csv"


def save_value_table(table: ValueTable, cache_dir: Optional[str] = None, path: Optional[str] = None) -> Path:
    """
    Write a table as the header line then CSV rows r_0..r_{k-1},value

    Returns:
        Path: file written
    """
    if path is None:
        directory = ensure_directory(Config.CACHE_DIR if cache_dir is None else cache_dir)
        target = directory / f"{table.fingerprint}-{table.backend}.csv"
    else:
        target = Path(path)
    with open(target, "w", encoding="utf-8", newline="") as handle:
        handle.write(f"{CACHE_HEADER} {table.fingerprint}\n")
        table.to_frame().to_csv(handle, index=False)
    logger.info(f"💾 Saved {len(table)} states to {target}")
    return target


def load_value_table(D: Digraph, path: Union[str, Path], backend: Optional[str] = None) -> ValueTable:
    """
    Read a cache file, validating the digraph fingerprint and the children invariant
    """
    target = Path(path)
    try:
        with open(target, "r", encoding="utf-8") as handle:
            header = handle.readline().strip()
    except OSError as e:
        raise InputError(f"Cannot read cache file {target}: {e}") from e

    expected = f"{CACHE_HEADER} {D.fingerprint()}"
    if header != expected:
        raise InputError(f"Cache header '{header}' does not match '{expected}' (line 1)")

    if backend is None:
        stem = target.stem
        backend = next((b for b in BACKENDS if stem.endswith(f"-{b}")), EXACT)

    frame = pd.read_csv(target, skiprows=1, dtype=str)
    columns = [f"r_{v}" for v in range(D.k)] + ["value"]
    if list(frame.columns) != columns:
        raise InputError(f"Cache columns {list(frame.columns)} do not match {columns} (line 2)")

    table = ValueTable(fingerprint=D.fingerprint(), k=D.k, backend=backend)
    for offset, row in enumerate(frame.itertuples(index=False)):
        line = offset + 3
        try:
            state = tuple(int(x) for x in row[:-1])
            raw = row[-1]
            table.values[state] = float(raw) if backend == FLOAT else parse_rational(raw)
        except (ValueError, TypeError) as e:
            raise InputError(f"Malformed cache row at line {line}: {list(row)}") from e

    broken = table.check_children()
    if broken:
        raise InputError(f"Cache is missing children of {len(broken)} states, e.g. {list(broken[0])}")
    if table.values:
        complete = 0
        while True:
            level = complete + 1
            if not any(sum(s) == level for s in table.values):
                break
            complete = level
        table.completion_level = complete
    logger.info(f"📂 Loaded {len(table)} states from {target}")
    return table


def load_or_solve(
    D: Digraph,
    box: StateLike,
    backend: str = EXACT,
    cache_dir: Optional[str] = None,
    use_cache: bool = True,
) -> ValueTable:
    """Reuse the cached table for (D, backend) when present, extend it to the box and save"""
    table = None
    target = cache_path(D, backend, cache_dir)
    if use_cache and target.exists():
        table = load_value_table(D, target, backend=backend)
    table = solve_box(D, box, table=table, backend=backend)
    if use_cache:
        save_value_table(table, cache_dir=cache_dir)
    return table
