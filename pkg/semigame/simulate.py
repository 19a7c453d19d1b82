# Semigame - Monte Carlo Simulation
# Seeded game play, depletion-time experiments, the truncated geometric tail
# and square-root scaling fits

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .distribution import Distribution
from .exceptions import InputError, InternalConsistencyError
from .graph import Digraph, parse_graph_spec
from .solver import RestrictionVector, StateLike, lower_bound
from .strategies import StrategySpec, norman_best_response
from .utilities.rational_utils import format_rational, to_fraction
from .utilities.seed_utils import derive_seed, make_rng, rep_rng
from .utilities.stats_utils import SampleSummary, summarize

# Set up logging
logger = logging.getLogger(__name__)


@dataclass
class PlayRecord:
    """Transcript of one game: (rei move, norman move, score delta) per round"""

    r0: Tuple[int, ...]
    seed: int
    rounds: List[Tuple[int, int, int]] = field(default_factory=list)
    final_score: int = 0

    def validate(self, D: Digraph) -> None:
        """Raise InternalConsistencyError unless the transcript is a legal full game"""
        if len(self.rounds) != sum(self.r0):
            raise InternalConsistencyError(f"{len(self.rounds)} rounds played for total {sum(self.r0)}")
        played = [0] * D.k
        for rei_move, norman_move, delta in self.rounds:
            played[rei_move] += 1
            if delta != D.orientation(norman_move, rei_move):
                raise InternalConsistencyError(
                    f"Delta {delta} does not match arc orientation between {norman_move} and {rei_move}"
                )
        if tuple(played) != tuple(self.r0):
            raise InternalConsistencyError(f"Rei played {played}, restriction was {list(self.r0)}")
        if sum(d for _, _, d in self.rounds) != self.final_score:
            raise InternalConsistencyError("Final score differs from the sum of deltas")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r0": list(self.r0),
            "seed": self.seed,
            "rounds": [list(rnd) for rnd in self.rounds],
            "final_score": self.final_score,
        }


def choose_vertex(cumulative: np.ndarray, x: float) -> int:
    """First index whose cumulative weight exceeds x (clamped to the last positive weight)"""
    index = int(np.searchsorted(cumulative, x, side="right"))
    if index >= len(cumulative):
        positive = np.nonzero(np.diff(np.concatenate(([0.0], cumulative))) > 0)[0]
        index = int(positive[-1])
    return index


def sample_vertex(p: Distribution, rng: np.random.Generator) -> int:
    """Draw one vertex from p using exactly one rng.random() call"""
    return choose_vertex(np.cumsum(p.as_floats()), rng.random())


def play_game(
    D: Digraph,
    r0: StateLike,
    rei: StrategySpec,
    norman: StrategySpec,
    seed: int,
    check: bool = False,
) -> PlayRecord:
    """
    Play one full game

    Rei's move is sampled from her mixture; Norman's move is deterministic
    given that mixture. Norman scores A_D[norman, rei] each round.

    Args:
        D: digraph
        r0: starting restriction vector
        rei: Rei strategy
        norman: Norman strategy
        seed: generator seed
        check: validate the transcript before returning

    Returns:
        PlayRecord: full transcript
    """
    state = RestrictionVector.of(r0)
    if state.k != D.k:
        raise InputError(f"Restriction vector {list(state.counts)} does not match {D.k} vertices")
    rng = make_rng(seed)
    record = PlayRecord(r0=state.counts, seed=int(seed))
    table = D.orientation_table()

    for round_index in range(state.total()):
        try:
            p = rei.realize(D, state)
        except InputError as e:
            raise InputError(f"Round {round_index + 1} at state {list(state.counts)}: {e}") from e
        rei_move = sample_vertex(p, rng)
        norman_move = norman.norman_move(D, p)
        delta = table[norman_move][rei_move]
        record.rounds.append((rei_move, norman_move, delta))
        record.final_score += delta
        state = state.minus(rei_move)

    if check:
        record.validate(D)
    return record


def _play_final_score(args: Tuple[Digraph, Tuple[int, ...], StrategySpec, StrategySpec, int]) -> int:
    D, r0, rei, norman, seed = args
    return play_game(D, r0, rei, norman, seed).final_score


def monte_carlo(
    D: Digraph,
    r0: StateLike,
    rei: StrategySpec,
    norman: StrategySpec,
    reps: int,
    seed: int,
    workers: int = 1,
) -> SampleSummary:
    """
    Repeat play_game with per-rep seeds derive_seed(seed, "rep", i)

    Scores are folded in rep order, so any worker count gives identical results.

    Returns:
        SampleSummary: mean, stderr and CI95 of the final score
    """
    if reps < 1:
        raise InputError(f"reps must be at least 1, got {reps}")
    state = RestrictionVector.of(r0).counts
    tasks = [(D, state, rei, norman, derive_seed(seed, "rep", i)) for i in range(reps)]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(_play_final_score, tasks, chunksize=max(1, reps // (4 * workers))))
    else:
        scores = [_play_final_score(task) for task in tasks]

    summary = summarize(scores)
    logger.info(f"🎲 {reps} games from {list(state)}: mean {summary.mean:.4f} ± {summary.stderr:.4f}")
    return summary


def depletion_game_scores(D: Digraph, n: int, reps: int, seed: int) -> np.ndarray:
    """
    Final scores of uniform-until-depletion against per-round best response from n * 1

    Same generator consumption and Norman choices as play_game with
    StrategySpec.uniform() and StrategySpec.best_response(), without
    rebuilding exact mixtures every round.
    """
    if n < 0 or reps < 1:
        raise InputError(f"Need n >= 0 and reps >= 1, got n={n}, reps={reps}")
    k = D.k
    table = D.orientation_table()
    plans: Dict[Tuple[int, ...], Tuple[np.ndarray, int]] = {}

    def plan(support: Tuple[int, ...]) -> Tuple[np.ndarray, int]:
        if support not in plans:
            p = Distribution.uniform_over(k, support)
            plans[support] = (np.cumsum(p.as_floats()), norman_best_response(D, p)[0])
        return plans[support]

    scores = np.zeros(reps, dtype=np.int64)
    for i in range(reps):
        rng = make_rng(derive_seed(seed, "rep", i))
        counts = [n] * k
        support = tuple(range(k)) if n > 0 else ()
        score = 0
        for _ in range(n * k):
            cumulative, norman_move = plan(support)
            rei_move = choose_vertex(cumulative, rng.random())
            score += table[norman_move][rei_move]
            counts[rei_move] -= 1
            if counts[rei_move] == 0:
                support = tuple(v for v in support if v != rei_move)
        scores[i] = score
    return scores


def uniform_upper_bound_experiment(D: Digraph, ns: Sequence[int], reps: int, seed: int) -> pd.DataFrame:
    """
    Best-response score against uniform-until-depletion minus the lower bound, per n

    Columns: n, mean_score, stderr, lower_bound, excess, excess_over_sqrt_n, ratio
    (ratio of excess between consecutive n).
    """
    rows = []
    previous = None
    for n in ns:
        summary = summarize(depletion_game_scores(D, n, reps, derive_seed(seed, "n", n)))
        bound = lower_bound(D, [n] * D.k)
        excess = summary.mean - bound
        rows.append({
            "n": n,
            "mean_score": summary.mean,
            "stderr": summary.stderr,
            "lower_bound": bound,
            "excess": excess,
            "excess_over_sqrt_n": excess / math.sqrt(n),
            "ratio": excess / previous if previous else float("nan"),
        })
        previous = excess
    return pd.DataFrame(rows)


def depletion_stats(k: int, n: int, reps: int, seed: int) -> SampleSummary:
    """
    kn - T for uniform random strings over k symbols, T the first time a symbol reaches count n

    Returns:
        SampleSummary: mean, stderr and CI95 of kn - T
    """
    if k < 2:
        raise InputError(f"depletion_stats needs k >= 2, got {k}")
    if n < 1 or reps < 1:
        raise InputError(f"Need n >= 1 and reps >= 1, got n={n}, reps={reps}")
    # pigeonhole: some symbol reaches n within k(n-1)+1 draws
    length = k * (n - 1) + 1
    values = []
    for i in range(reps):
        rng = rep_rng(seed, i)
        symbols = rng.integers(0, k, size=length)
        counts = np.cumsum(np.eye(k, dtype=np.int64)[symbols], axis=0)
        hit = np.nonzero(counts.max(axis=1) >= n)[0]
        T = int(hit[0]) + 1
        values.append(k * n - T)
    return summarize(values)


@dataclass(frozen=True)
class TailEstimate:
    estimate: float
    stderr: float
    normalized: float
    reps: int

    def to_dict(self) -> Dict[str, Any]:
        return {"estimate": self.estimate, "stderr": self.stderr, "normalized": self.normalized, "reps": self.reps}


def _check_geometric(p: Union[Fraction, float, int, str], N: int) -> Fraction:
    prob = to_fraction(p) if not isinstance(p, float) else Fraction(p).limit_denominator(10 ** 12)
    if not 0 < prob <= 1:
        raise InputError(f"Geometric parameter must lie in (0, 1], got {prob}")
    if N < 1:
        raise InputError(f"N must be at least 1, got {N}")
    return prob


def geometric_tail(p: Union[Fraction, float, int, str], N: int, reps: int, seed: int) -> TailEstimate:
    """
    Estimate E[(E X - X) 1(X <= E X)] for X a sum of N geometric(p) variables on {1, 2, ...}

    Returns:
        TailEstimate: estimate, its stderr and estimate / (sqrt(N) / p)
    """
    prob = _check_geometric(p, N)
    if reps < 1:
        raise InputError(f"reps must be at least 1, got {reps}")
    mean = N / float(prob)
    if prob == 1:
        samples = np.full(reps, float(N))
    else:
        rng = make_rng(derive_seed(seed, "geometric_tail", N))
        samples = N + rng.negative_binomial(N, float(prob), size=reps).astype(np.float64)
    deviation = np.where(samples <= mean, mean - samples, 0.0)
    summary = summarize(deviation)
    scale = math.sqrt(N) / float(prob)
    return TailEstimate(
        estimate=summary.mean,
        stderr=summary.stderr,
        normalized=summary.mean / scale,
        reps=reps,
    )


def exact_geometric_tail(p: Union[Fraction, int, str], N: int) -> Fraction:
    """
    Exact E[(E X - X) 1(X <= E X)] by summing the negative binomial law

    P(X = x) = C(x-1, N-1) p^N (1-p)^(x-N) for x >= N, and E X = N / p.
    """
    prob = _check_geometric(p, N)
    mean = Fraction(N) / prob
    total = Fraction(0)
    x = N
    while x <= mean:
        mass = math.comb(x - 1, N - 1) * prob ** N * (1 - prob) ** (x - N)
        total += (mean - x) * mass
        x += 1
    return total


# ------------------------------------------------------------------ scaling


@dataclass
class ScalingFit:
    """Log-log least squares over (n, S_n) plus c_hat = mean S_n / sqrt(n) on the top quartile"""

    samples: List[Tuple[int, float]]
    slope: float
    intercept: float
    c_hat: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "c_hat": self.c_hat,
            "samples": [[n, s] for n, s in self.samples],
        }


def scaling_fit(samples: Iterable[Tuple[int, Any]]) -> ScalingFit:
    """
    Fit log S_n = slope * log n + intercept

    Args:
        samples: (n, S_n) pairs with S_n > 0 and at least three points

    Returns:
        ScalingFit: slope, intercept and c_hat
    """
    points = sorted((int(n), float(s)) for n, s in samples)
    if len(points) < 3:
        raise InputError(f"Scaling fit needs at least 3 samples, got {len(points)}")
    for n, s in points:
        if n <= 0 or not s > 0:
            raise InputError(f"Scaling fit needs positive n and S_n, got ({n}, {s})")

    ns = np.array([n for n, _ in points], dtype=np.float64)
    values = np.array([s for _, s in points], dtype=np.float64)
    slope, intercept = np.polyfit(np.log(ns), np.log(values), 1)
    if not np.isfinite(slope):
        raise InternalConsistencyError("Scaling fit produced a non-finite slope")

    top = max(1, math.ceil(len(points) / 4))
    c_hat = float(np.mean(values[-top:] / np.sqrt(ns[-top:])))
    return ScalingFit(samples=points, slope=float(slope), intercept=float(intercept), c_hat=c_hat)


def scaling_table(values: Dict[int, Any]) -> pd.DataFrame:
    """Rows (n, S_n exact, S_n float, S_n / sqrt(n)) sorted by n"""
    rows = []
    for n in sorted(values):
        s = values[n]
        exact = format_rational(s) if isinstance(s, (Fraction, int)) else ""
        rows.append({
            "n": n,
            "S_n": exact,
            "S_n_float": float(s),
            "S_n_over_sqrt_n": float(s) / math.sqrt(n) if n > 0 else float("nan"),
        })
    return pd.DataFrame(rows, columns=["n", "S_n", "S_n_float", "S_n_over_sqrt_n"])


# ------------------------------------------------------------ experiment config


@dataclass
class ExperimentConfig:
    """Monte Carlo run description: digraph ref, r0, strategies, reps, seed"""

    graph: str
    r0: List[int]
    rei: Dict[str, Any]
    norman: Dict[str, Any]
    reps: int
    seed: int

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ExperimentConfig":
        try:
            return cls(
                graph=str(payload["graph"]),
                r0=[int(x) for x in payload["r0"]],
                rei=dict(payload["rei"]),
                norman=dict(payload["norman"]),
                reps=int(payload["reps"]),
                seed=int(payload["seed"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"Malformed experiment config: {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph": self.graph,
            "r0": list(self.r0),
            "rei": dict(self.rei),
            "norman": dict(self.norman),
            "reps": self.reps,
            "seed": self.seed,
        }

    def digraph(self) -> Digraph:
        return parse_graph_spec(self.graph)
