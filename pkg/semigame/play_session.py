# Semigame - Interactive Play
# Terminal session where a human plays Norman against a committed Rei strategy

import hashlib
import logging
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, TextIO

from .config import Config
from .exceptions import InputError, InternalConsistencyError
from .graph import Digraph, cycle3
from .simulate import sample_vertex
from .solver import EXACT, RestrictionVector, StateLike, greedy_rps_diagonal, greedy_rps_values, load_or_solve
from .strategies import OPTIMAL_FROM_TABLE, REI, StrategySpec
from .utilities.rational_utils import format_rational
from .utilities.seed_utils import make_rng

# Set up logging
logger = logging.getLogger(__name__)

CYCLE3_LABELS = ("Paper", "Rock", "Scissors")


def commitment(move: int, nonce: str) -> str:
    """sha256 of "move:nonce" as hex"""
    return hashlib.sha256(f"{move}:{nonce}".encode("utf-8")).hexdigest()


def box_state_count(r0: StateLike) -> int:
    return math.prod(c + 1 for c in RestrictionVector.of(r0).counts)


def default_rei_strategy(
    D: Digraph,
    r0: StateLike,
    max_states: Optional[int] = None,
    cache_dir: Optional[str] = None,
    use_cache: bool = True,
) -> StrategySpec:
    """
    Optimal strategy from an exact value table when the box is small enough,
    greedy on C3 otherwise

    Raises:
        InputError: box too large on a digraph other than C3
    """
    limit = Config.PLAY_MAX_STATES if max_states is None else max_states
    count = box_state_count(r0)
    if count <= limit:
        table = load_or_solve(D, r0, backend=EXACT, cache_dir=cache_dir, use_cache=use_cache)
        return StrategySpec.optimal(table)
    if D == cycle3():
        logger.info(f"🔄 Box has {count} states (limit {limit}), Rei plays greedy")
        return StrategySpec.greedy()
    raise InputError(f"Box has {count} states, more than the play limit {limit}, and no fallback exists for this digraph")


@dataclass
class RoundLog:
    """One revealed round"""

    index: int
    commitment: str
    rei_move: int
    nonce: str
    human_move: int
    delta: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "round": self.index,
            "commitment": self.commitment,
            "rei": self.rei_move,
            "nonce": self.nonce,
            "norman": self.human_move,
            "delta": self.delta,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "RoundLog":
        try:
            return cls(
                index=int(payload["round"]),
                commitment=str(payload["commitment"]),
                rei_move=int(payload["rei"]),
                nonce=str(payload["nonce"]),
                human_move=int(payload["norman"]),
                delta=int(payload["delta"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"Malformed round entry: {e}") from e


def verify_round(entry: RoundLog) -> None:
    """Check the revealed move and nonce against the commitment shown before the human moved"""
    if commitment(entry.rei_move, entry.nonce) != entry.commitment:
        raise InternalConsistencyError(f"Round {entry.index}: revealed move does not match the commitment")


def verify_transcript(rounds: Iterable[Dict[str, Any]]) -> int:
    """Verify every round of a saved transcript; returns the number of rounds checked"""
    checked = 0
    for payload in rounds:
        verify_round(RoundLog.from_dict(payload))
        checked += 1
    return checked


@dataclass
class PlaySession:
    """
    Human plays Norman for total(r0) rounds

    Each round Rei's move is drawn and its commitment printed before the
    human's input is read; the reveal is checked against the commitment.
    """

    D: Digraph
    r0: RestrictionVector
    rei: StrategySpec
    seed: int
    input_stream: Optional[Iterable[str]] = None
    out: Optional[TextIO] = field(default=None, repr=False)
    state: RestrictionVector = field(init=False)
    score: int = field(init=False, default=0)
    log: List[RoundLog] = field(init=False, default_factory=list)

    def __post_init__(self):
        self.r0 = RestrictionVector.of(self.r0)
        if self.r0.k != self.D.k:
            raise InputError(f"Restriction vector {list(self.r0.counts)} does not match {self.D.k} vertices")
        if self.rei.player != REI:
            raise InputError("The computer side must play a Rei strategy")
        if self.out is None:
            self.out = sys.stdout
        self.state = self.r0
        self._labels = CYCLE3_LABELS if self.D == cycle3() else None
        self._rng = make_rng(self.seed)
        self._lines: Optional[Iterator[str]] = iter(self.input_stream) if self.input_stream is not None else None

    # ---- I/O

    def _say(self, message: str) -> None:
        print(message, file=self.out)

    def _read(self, prompt: str) -> str:
        if self._lines is None:
            try:
                return input(prompt)
            except EOFError as e:
                raise InputError("Input ended before the game finished") from e
        self._say(prompt)
        try:
            return next(self._lines)
        except StopIteration as e:
            raise InputError("Scripted input ended before the game finished") from e

    def label(self, v: int) -> str:
        if self._labels is not None:
            return f"{v} ({self._labels[v]})"
        return str(v)

    def parse_move(self, text: str) -> int:
        """Vertex index, or a label / its first letter on C3"""
        token = text.strip()
        if not token:
            raise InputError("Empty move")
        if self._labels is not None:
            lowered = token.lower()
            for v, name in enumerate(self._labels):
                if lowered in (name.lower(), name[0].lower()):
                    return v
        try:
            v = int(token)
        except ValueError as e:
            raise InputError(f"'{token}' is not a vertex") from e
        if not 0 <= v < self.D.k:
            raise InputError(f"Vertex {v} is not in 0..{self.D.k - 1}")
        return v

    # ---- game

    def remaining_text(self) -> str:
        return ", ".join(f"{self.label(v)}: {c}" for v, c in enumerate(self.state.counts))

    def play_round(self) -> RoundLog:
        index = len(self.log) + 1
        p = self.rei.realize(self.D, self.state)
        rei_move = sample_vertex(p, self._rng)
        nonce = self._rng.bytes(16).hex()
        sealed = commitment(rei_move, nonce)
        self._say(f"Round {index}/{self.r0.total()}  Rei remaining: {self.remaining_text()}")
        self._say(f"Rei has committed: {sealed}")

        while True:
            text = self._read("Your move: ")
            try:
                human_move = self.parse_move(text)
                break
            except InputError as e:
                self._say(f"❌ {e}, try again")

        entry = RoundLog(index, sealed, rei_move, nonce, human_move, self.D.orientation(human_move, rei_move))
        verify_round(entry)
        delta = entry.delta
        self.score += delta
        self.state = self.state.minus(rei_move)
        self.log.append(entry)
        self._say(
            f"Rei played {self.label(rei_move)} (nonce {nonce}), you played {self.label(human_move)}: "
            f"{delta:+d}, score {self.score}"
        )
        return entry

    def game_value(self) -> Optional[Fraction]:
        """Exact S_D(r0) when it is known without further solving"""
        if self.rei.variant == OPTIMAL_FROM_TABLE:
            return self.rei.table.get(self.r0.counts)
        if self._labels is not None:
            counts = self.r0.counts
            if len(set(counts)) == 1:
                return greedy_rps_diagonal([counts[0]])[counts[0]]
            return greedy_rps_values(self.r0)[counts]
        return None

    def run(self) -> Dict[str, Any]:
        """Play every round and return the transcript"""
        self._say(f"Rei must play {self.remaining_text()}. You are Norman.")
        while not self.state.is_zero():
            self.play_round()

        rounds = [entry.to_dict() for entry in self.log]
        verify_transcript(rounds)
        exact = self.game_value()
        self._say(f"Final score: {self.score}")
        if exact is not None:
            self._say(f"Value of the game with optimal play: {format_rational(exact)} (≈ {float(exact):.4f})")
        logger.info(f"✅ Play session finished with score {self.score}")
        return {
            "r0": list(self.r0.counts),
            "seed": self.seed,
            "rounds": rounds,
            "final_score": self.score,
            "value": format_rational(exact) if exact is not None else None,
        }


def scripted_human(moves: Iterable[Any]) -> Iterator[str]:
    """Turn a move list into the line stream PlaySession reads"""
    for move in moves:
        yield str(move)


def random_human(k: int, rounds: int, seed: int) -> List[str]:
    """Uniformly random human moves from a seeded generator"""
    rng = make_rng(seed)
    return [str(int(v)) for v in rng.integers(0, k, size=rounds)]
