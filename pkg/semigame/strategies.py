# Semigame - Player Strategies
# Declarative strategy specs for Rei (restricted) and Norman (unrestricted)

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Tuple

from .algebra import gains
from .distribution import Distribution
from .exceptions import InputError, InternalConsistencyError
from .graph import Digraph, cycle3
from .solver import RestrictionVector, StateLike, ValueTable, state_witness

# Set up logging
logger = logging.getLogger(__name__)

REI = "rei"
NORMAN = "norman"

GREEDY_RPS = "greedy_rps"
UNIFORM_UNTIL_DEPLETION = "uniform_until_depletion"
TRIMMED_PROPORTIONAL = "trimmed_proportional"
OBLIVIOUS_TABLE = "oblivious_table"
OPTIMAL_FROM_TABLE = "optimal_from_table"
PRIORITY = "priority"
FIXED_VERTEX = "fixed_vertex"
BEST_RESPONSE = "best_response"

REI_VARIANTS = (GREEDY_RPS, UNIFORM_UNTIL_DEPLETION, TRIMMED_PROPORTIONAL, OBLIVIOUS_TABLE, OPTIMAL_FROM_TABLE, PRIORITY)
NORMAN_VARIANTS = (FIXED_VERTEX, BEST_RESPONSE)

Support = Tuple[int, ...]


# ------------------------------------------------------------- rei mixtures


def greedy_rps(r: StateLike, D: Optional[Digraph] = None) -> Distribution:
    """
    Greedy play on 0->1->2->0

    Three options: uniform. Two options: 2/3 on the one that beats the other.
    One option: forced. Remaining counts are otherwise ignored.
    """
    if D is not None and D != cycle3():
        raise InputError("greedy_rps is defined only on the 3-cycle 0->1->2->0")
    rv = RestrictionVector.of(r)
    if rv.k != 3:
        raise InputError(f"greedy_rps needs 3 options, got {rv.k}")
    support = rv.support()
    if not support:
        raise InputError("greedy_rps needs a nonempty restriction vector")
    if len(support) == 3:
        return Distribution.uniform_over(3, support)
    if len(support) == 1:
        return Distribution.point_mass(3, support[0])
    a, b = support
    if (b + 1) % 3 == a:
        a, b = b, a
    weights = [Fraction(0)] * 3
    weights[a] = Fraction(2, 3)
    weights[b] = Fraction(1, 3)
    return Distribution(weights)


def uniform_until_depletion(D: Digraph, r: StateLike, full: Optional[bool] = None) -> Distribution:
    """
    Uniform over V while every option remains, then uniform over supp(r)

    Args:
        D: digraph
        r: current state
        full: whether every option still remains (derived from r when None)
    """
    rv = RestrictionVector.of(r)
    support = rv.support()
    if not support:
        raise InputError("Cannot play from the zero state")
    if full is None:
        full = len(support) == D.k
    if full:
        if len(support) != D.k:
            raise InputError(f"State {list(rv.counts)} has a depleted option")
        return Distribution.uniform_over(D.k, range(D.k))
    return Distribution.uniform_over(D.k, support)


def trimming_threshold(M: int) -> int:
    """Smallest integer t with t >= M**(2/3), i.e. t**3 >= M**2"""
    if M <= 0:
        return 0
    t = max(1, round(M ** (2 / 3)) - 2)
    while t ** 3 < M * M:
        t += 1
    while t > 1 and (t - 1) ** 3 >= M * M:
        t -= 1
    return t


def trimmed_weights(r0: StateLike) -> Tuple[int, ...]:
    """r'_w = r0_w if r0_w reaches the trimming threshold, else 0"""
    counts = RestrictionVector.of(r0).counts
    if not any(counts):
        raise InputError("Trimming needs a nonempty restriction vector")
    threshold = trimming_threshold(max(counts))
    return tuple(c if c >= threshold else 0 for c in counts)


def _trimmed_mixture(D: Digraph, r: RestrictionVector, trimmed: Sequence[int]) -> Distribution:
    kept = [w for w, c in enumerate(trimmed) if c > 0]
    if not kept:
        raise InternalConsistencyError("Every option was trimmed; the largest count always survives")
    if all(r.counts[w] > 0 for w in kept):
        return Distribution.proportional(trimmed)
    return Distribution.uniform_over(D.k, r.support())


def priority_mixture(order: Sequence[int], r: StateLike) -> Distribution:
    """Point mass on the first vertex of `order` still available in r"""
    rv = RestrictionVector.of(r)
    for v in order:
        if rv.counts[v] > 0:
            return Distribution.point_mass(rv.k, v)
    # order may omit vertices; fall back to the smallest available one
    support = rv.support()
    if not support:
        raise InputError("Cannot play from the zero state")
    return Distribution.point_mass(rv.k, support[0])


# ---------------------------------------------------------- norman response


def norman_best_response(D: Digraph, p: Distribution) -> Tuple[int, Fraction]:
    """
    Vertex maximizing Norman's expected gain against p (ties to the lowest index)

    Returns:
        Tuple[int, Fraction]: (vertex, gain)
    """
    values = gains(D, p)
    best = max(values)
    return values.index(best), best


# ------------------------------------------------------------ strategy spec


@dataclass(frozen=True)
class StrategySpec:
    """
    Declarative strategy: player, variant tag and JSON-able parameters

    The optimal_from_table variant also carries its value table, which is not
    part of the JSON form.
    """

    player: str
    variant: str
    params: Dict[str, Any] = field(default_factory=dict, hash=False)
    table: Optional[ValueTable] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.player == REI:
            if self.variant not in REI_VARIANTS:
                raise InputError(f"Unknown Rei strategy '{self.variant}'")
        elif self.player == NORMAN:
            if self.variant not in NORMAN_VARIANTS:
                raise InputError(f"Unknown Norman strategy '{self.variant}'")
        else:
            raise InputError(f"Unknown player '{self.player}'")
        if self.variant == OPTIMAL_FROM_TABLE and self.table is None:
            raise InputError("optimal_from_table needs a value table")

    # ---- constructors

    @classmethod
    def greedy(cls) -> "StrategySpec":
        return cls(REI, GREEDY_RPS)

    @classmethod
    def uniform(cls) -> "StrategySpec":
        return cls(REI, UNIFORM_UNTIL_DEPLETION)

    @classmethod
    def oblivious(cls, mapping: Mapping[Sequence[int], Distribution]) -> "StrategySpec":
        entries = []
        for support, p in sorted(mapping.items(), key=lambda item: (len(item[0]), tuple(item[0]))):
            entries.append({"support": sorted(support), "p": p.to_list()})
        return cls(REI, OBLIVIOUS_TABLE, {"entries": entries})

    @classmethod
    def optimal(cls, table: ValueTable) -> "StrategySpec":
        return cls(REI, OPTIMAL_FROM_TABLE, {"fingerprint": table.fingerprint, "backend": table.backend}, table)

    @classmethod
    def priority(cls, order: Sequence[int]) -> "StrategySpec":
        return cls(REI, PRIORITY, {"order": [int(v) for v in order]})

    @classmethod
    def fixed_vertex(cls, v: int) -> "StrategySpec":
        return cls(NORMAN, FIXED_VERTEX, {"vertex": int(v)})

    @classmethod
    def best_response(cls) -> "StrategySpec":
        return cls(NORMAN, BEST_RESPONSE)

    # ---- realization

    def oblivious_mapping(self) -> Dict[Support, Distribution]:
        return {
            tuple(entry["support"]): Distribution.from_list(entry["p"])
            for entry in self.params.get("entries", [])
        }

    def realize(self, D: Digraph, r: StateLike, rei_mixture: Optional[Distribution] = None) -> Distribution:
        """
        Mixture played at state r

        Args:
            D: digraph
            r: Rei's current restriction vector
            rei_mixture: Rei's mixture this round (needed by Norman's best response)

        Returns:
            Distribution: obeys Rei's support rule for Rei strategies
        """
        rv = RestrictionVector.of(r)
        if rv.k != D.k:
            raise InputError(f"State {list(rv.counts)} does not match a digraph on {D.k} vertices")
        if self.player == NORMAN:
            return self._realize_norman(D, rei_mixture)
        if rv.is_zero():
            raise InputError("Rei has no move at the zero state")

        p = _REI_DISPATCH[self.variant](self, D, rv)
        support = set(rv.support())
        outside = [u for u in p.support() if u not in support]
        if outside:
            raise InputError(
                f"Strategy {self.variant} plays depleted vertices {outside} at state {list(rv.counts)}"
            )
        return p

    def _realize_norman(self, D: Digraph, rei_mixture: Optional[Distribution]) -> Distribution:
        if self.variant == FIXED_VERTEX:
            return Distribution.point_mass(D.k, self.params["vertex"])
        if rei_mixture is None:
            raise InputError("Norman's best response needs Rei's mixture")
        v, _ = norman_best_response(D, rei_mixture)
        return Distribution.point_mass(D.k, v)

    def norman_move(self, D: Digraph, rei_mixture: Distribution) -> int:
        """Deterministic Norman vertex for this round"""
        if self.player != NORMAN:
            raise InputError("norman_move called on a Rei strategy")
        if self.variant == FIXED_VERTEX:
            v = self.params["vertex"]
            if not 0 <= v < D.k:
                raise InputError(f"Fixed vertex {v} out of range")
            return v
        return norman_best_response(D, rei_mixture)[0]

    # ---- JSON

    def to_dict(self) -> Dict[str, Any]:
        return {"player": self.player, "variant": self.variant, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any], table: Optional[ValueTable] = None) -> "StrategySpec":
        try:
            spec = cls(payload["player"], payload["variant"], dict(payload.get("params", {})), table)
        except KeyError as e:
            raise InputError(f"Strategy JSON is missing {e}") from e
        if spec.variant == OPTIMAL_FROM_TABLE and table.fingerprint != spec.params.get("fingerprint", table.fingerprint):
            raise InputError("Strategy refers to a different digraph than the supplied table")
        return spec


def trimmed_proportional(D: Digraph, r0: StateLike) -> StrategySpec:
    """
    Trimmed proportional strategy for starting state r0

    Plays w with probability r'_w / sum(r') until some option of r' runs out,
    then uniformly over the remaining support.
    """
    rv = RestrictionVector.of(r0)
    if rv.k != D.k:
        raise InputError(f"State {list(rv.counts)} does not match a digraph on {D.k} vertices")
    trimmed = trimmed_weights(rv)
    return StrategySpec(
        REI,
        TRIMMED_PROPORTIONAL,
        {
            "r0": list(rv.counts),
            "threshold": trimming_threshold(max(rv.counts)),
            "trimmed": list(trimmed),
        },
    )


def realize(spec: StrategySpec, D: Digraph, r: StateLike, rei_mixture: Optional[Distribution] = None) -> Distribution:
    return spec.realize(D, r, rei_mixture)


def _realize_oblivious(spec: StrategySpec, D: Digraph, r: RestrictionVector) -> Distribution:
    key = [entry for entry in spec.params.get("entries", []) if tuple(entry["support"]) == r.support()]
    if not key:
        raise InputError(f"Oblivious table has no entry for support {list(r.support())}")
    return Distribution.from_list(key[0]["p"])


def _realize_optimal(spec: StrategySpec, D: Digraph, r: RestrictionVector) -> Distribution:
    spec.table.check_digraph(D)
    return state_witness(D, r, spec.table)


_REI_DISPATCH: Dict[str, Callable[[StrategySpec, Digraph, RestrictionVector], Distribution]] = {
    GREEDY_RPS: lambda spec, D, r: greedy_rps(r, D),
    UNIFORM_UNTIL_DEPLETION: lambda spec, D, r: uniform_until_depletion(D, r),
    TRIMMED_PROPORTIONAL: lambda spec, D, r: _trimmed_mixture(D, r, spec.params["trimmed"]),
    OBLIVIOUS_TABLE: _realize_oblivious,
    OPTIMAL_FROM_TABLE: _realize_optimal,
    PRIORITY: lambda spec, D, r: priority_mixture(spec.params["order"], r),
}
