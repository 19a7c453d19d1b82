# Semigame - Digraph Model and Generators
# Immutable digraphs, named generators, tournament enumeration and the
# arc-pair switching used to count Eulerian tournaments with a shared out-neighborhood

import hashlib
import itertools
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .config import Config
from .exceptions import InputError
from .utilities.seed_utils import make_rng

# Set up logging
logger = logging.getLogger(__name__)

Arc = Tuple[int, int]


class Digraph:
    """
    Loop-free digraph on vertices 0..k-1 with at most one arc per vertex pair

    Arcs are kept in a dense k x k orientation table: +1 for u->v, -1 for v->u,
    0 for no arc. Instances are immutable.
    """

    __slots__ = ("_k", "_arcs", "_table", "_out", "_in", "_fingerprint")

    def __init__(self, k: int, arcs: Iterable[Sequence[int]]):
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise InputError(f"Vertex count must be a non-negative integer, got {k!r}")

        table = [[0] * k for _ in range(k)]
        arc_set: Set[Arc] = set()
        for index, arc in enumerate(arcs):
            u, v = _check_arc(arc, k, index)
            if u == v:
                raise InputError(f"Self-loop ({u},{v}) at arcs[{index}]")
            if table[u][v] == 1:
                raise InputError(f"Duplicate arc ({u},{v}) at arcs[{index}]")
            if table[u][v] == -1:
                raise InputError(f"Arcs ({u},{v}) and ({v},{u}) both present at arcs[{index}]")
            table[u][v] = 1
            table[v][u] = -1
            arc_set.add((u, v))

        self._k = k
        self._arcs: FrozenSet[Arc] = frozenset(arc_set)
        self._table: Tuple[Tuple[int, ...], ...] = tuple(tuple(row) for row in table)
        self._out: Tuple[FrozenSet[int], ...] = tuple(
            frozenset(j for j in range(k) if table[i][j] == 1) for i in range(k)
        )
        self._in: Tuple[FrozenSet[int], ...] = tuple(
            frozenset(j for j in range(k) if table[i][j] == -1) for i in range(k)
        )
        self._fingerprint: Optional[str] = None

    # ------------------------------------------------------------------ basics

    @property
    def k(self) -> int:
        return self._k

    @property
    def arcs(self) -> FrozenSet[Arc]:
        return self._arcs

    @property
    def vertices(self) -> range:
        return range(self._k)

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self._arcs)

    def orientation(self, u: int, v: int) -> int:
        """+1 if u->v, -1 if v->u, 0 otherwise"""
        self._check_vertex(u)
        self._check_vertex(v)
        return self._table[u][v]

    def orientation_table(self) -> Tuple[Tuple[int, ...], ...]:
        return self._table

    def has_arc(self, u: int, v: int) -> bool:
        return self.orientation(u, v) == 1

    def out_neighbors(self, v: int) -> FrozenSet[int]:
        self._check_vertex(v)
        return self._out[v]

    def in_neighbors(self, v: int) -> FrozenSet[int]:
        self._check_vertex(v)
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors(v))

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors(v))

    def is_tournament(self) -> bool:
        return len(self._arcs) == self._k * (self._k - 1) // 2

    def is_eulerian(self) -> bool:
        return all(len(self._out[v]) == len(self._in[v]) for v in range(self._k))

    def max_degree_gap(self) -> int:
        """max_v (d+(v) - d-(v)); 0 for the empty vertex set"""
        if self._k == 0:
            return 0
        return max(len(self._out[v]) - len(self._in[v]) for v in range(self._k))

    def with_reversed(self, arcs: Iterable[Arc]) -> "Digraph":
        """Copy of this digraph with each listed (present) arc reversed"""
        flipped = set()
        for u, v in arcs:
            if (u, v) not in self._arcs:
                raise InputError(f"Cannot reverse missing arc ({u},{v})")
            flipped.add((u, v))
        new_arcs = [(v, u) if (u, v) in flipped else (u, v) for (u, v) in self._arcs]
        return Digraph(self._k, new_arcs)

    def _check_vertex(self, v: int) -> None:
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self._k:
            raise InputError(f"Vertex {v!r} out of range for digraph on {self._k} vertices")

    # ------------------------------------------------------------ identity / IO

    def to_dict(self) -> Dict[str, object]:
        return {"k": self._k, "arcs": [list(arc) for arc in self.sorted_arcs()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def fingerprint(self) -> str:
        """Stable identifier: sha256 of the canonical JSON form"""
        if self._fingerprint is None:
            canonical = json.dumps(self.to_dict(), separators=(",", ":"))
            self._fingerprint = hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
        return self._fingerprint

    @classmethod
    def from_dict(cls, payload: Dict[str, object]) -> "Digraph":
        if not isinstance(payload, dict) or "k" not in payload or "arcs" not in payload:
            raise InputError("Digraph JSON must be an object with 'k' and 'arcs'")
        return cls(payload["k"], payload["arcs"])

    @classmethod
    def from_json(cls, text: str) -> "Digraph":
        """
        Parse the {"k": ..., "arcs": [[u, v], ...]} format

        Invariant violations are reported with the line of the offending arc.
        """
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"Malformed digraph JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e

        try:
            return cls.from_dict(payload)
        except InputError as e:
            lines = _arc_line_numbers(text)
            message = str(e)
            for index, line in enumerate(lines):
                if f"arcs[{index}]" in message:
                    raise InputError(f"{message} (line {line})") from e
            raise

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._k == other._k and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self._k, self._arcs))

    def __repr__(self) -> str:
        return f"Digraph(k={self._k}, arcs={self.sorted_arcs()})"


def _check_arc(arc: Sequence[int], k: int, index: int) -> Arc:
    try:
        u, v = arc
    except (TypeError, ValueError) as e:
        raise InputError(f"Arc at arcs[{index}] must be a pair, got {arc!r}") from e
    for x in (u, v):
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < k:
            raise InputError(f"Vertex {x!r} out of range 0..{k - 1} at arcs[{index}]")
    return u, v


def _arc_line_numbers(text: str) -> List[int]:
    """Line number of each inner '[' of the "arcs" array"""
    start = text.find('"arcs"')
    if start < 0:
        return []
    start = text.find("[", start)
    if start < 0:
        return []
    lines = []
    depth = 0
    for pos in range(start, len(text)):
        ch = text[pos]
        if ch == "[":
            depth += 1
            if depth == 2:
                lines.append(text.count("\n", 0, pos) + 1)
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
    return lines


def load_digraph(path: str) -> Digraph:
    """Read a digraph JSON file"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read digraph file {path}: {e}") from e
    return Digraph.from_json(text)


def save_digraph(D: Digraph, path: str) -> None:
    Path(path).write_text(json.dumps(D.to_dict(), indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------- generators


def cycle3() -> Digraph:
    """The rock-paper-scissors digraph 0->1->2->0 (0 Paper, 1 Rock, 2 Scissors)"""
    return Digraph(3, [(0, 1), (1, 2), (2, 0)])


def directed_path(n: int) -> Digraph:
    if n < 1:
        raise InputError(f"Path needs at least one vertex, got {n}")
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def circulant(k: int, offsets: Iterable[int]) -> Digraph:
    """
    Circulant digraph with i -> i+s (mod k) for every offset s

    Args:
        k: vertex count
        offsets: offsets in 1..k-1; s and k-s may not both appear

    Returns:
        Digraph: circulant digraph
    """
    offset_set = sorted(set(int(s) for s in offsets))
    for s in offset_set:
        if not 1 <= s < k:
            raise InputError(f"Circulant offset {s} outside 1..{k - 1}")
        if (k - s) in offset_set:
            raise InputError(f"Circulant offsets {s} and {k - s} give two arcs between the same pair")
    return Digraph(k, [(i, (i + s) % k) for i in range(k) for s in offset_set])


def empty(k: int) -> Digraph:
    return Digraph(k, [])


def make_named(name: str, *params: int) -> Digraph:
    """
    Build a named digraph

    Args:
        name: one of cycle3, path, circulant, empty, random
        *params: path(n), circulant(k, *offsets), empty(k), random(k, seed)

    Returns:
        Digraph: generated digraph
    """
    try:
        if name in ("cycle3", "rps"):
            return cycle3()
        if name in ("path", "directed_path"):
            return directed_path(params[0])
        if name == "circulant":
            return circulant(params[0], params[1:])
        if name == "empty":
            return empty(params[0])
        if name == "random":
            return random_tournament(params[0], params[1])
    except IndexError as e:
        raise InputError(f"Missing parameters for generator '{name}'") from e
    raise InputError(f"Unknown digraph generator '{name}'")


def parse_graph_spec(spec: str) -> Digraph:
    """
    Resolve a command-line graph specifier

    Accepted forms: an existing JSON file path, cycle3, path:<n>,
    circulant:<k>:<o1,o2,...>, random:<k>:<seed>, empty:<k>.
    """
    if Path(spec).is_file():
        return load_digraph(spec)

    parts = spec.split(":")
    name = parts[0]
    try:
        if name in ("cycle3", "rps") and len(parts) == 1:
            return cycle3()
        if name == "path" and len(parts) == 2:
            return directed_path(int(parts[1]))
        if name == "circulant" and len(parts) == 3:
            return circulant(int(parts[1]), [int(s) for s in parts[2].split(",") if s])
        if name == "random" and len(parts) == 3:
            return random_tournament(int(parts[1]), int(parts[2]))
        if name == "empty" and len(parts) == 2:
            return empty(int(parts[1]))
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"Malformed graph specifier '{spec}': {e}") from e
    raise InputError(
        f"Unknown graph specifier '{spec}' "
        "(expected a file, cycle3, path:n, circulant:k:o1,o2, random:k:seed or empty:k)"
    )


# --------------------------------------------------------------- enumeration


def vertex_pairs(k: int) -> List[Arc]:
    """Unordered pairs (i, j), i < j, in lexicographic order"""
    return list(itertools.combinations(range(k), 2))


def _tournament_from_bits(k: int, pairs: Sequence[Arc], bits: Sequence[int]) -> Digraph:
    # bit 0 orients i->j, bit 1 orients j->i
    return Digraph(k, [(i, j) if bit == 0 else (j, i) for (i, j), bit in zip(pairs, bits)])


def _check_enumeration_cap(k: int, cap: Optional[int], allow_large: bool) -> None:
    limit = Config.ENUMERATION_CAP if cap is None else cap
    if k < 0:
        raise InputError(f"Vertex count must be non-negative, got {k}")
    if k > limit and not allow_large:
        raise InputError(
            f"Refusing to enumerate tournaments on {k} vertices (cap {limit}, "
            f"{2 ** (k * (k - 1) // 2)} candidates); pass the override flag to proceed"
        )


def enumerate_tournaments(
    k: int,
    cap: Optional[int] = None,
    allow_large: bool = False,
    prefix: Sequence[int] = (),
) -> Iterator[Digraph]:
    """
    Stream every labeled tournament on k vertices exactly once

    Orientation bits follow vertex_pairs(k) order; the stream is sorted by the
    bit string. `prefix` fixes the leading bits so callers can partition the
    enumeration.

    Args:
        k: vertex count
        cap: largest k allowed without override (Config.ENUMERATION_CAP by default)
        allow_large: override the cap
        prefix: fixed leading orientation bits

    Returns:
        Iterator[Digraph]: tournaments in deterministic order
    """
    _check_enumeration_cap(k, cap, allow_large)
    pairs = vertex_pairs(k)
    fixed = _check_prefix(prefix, len(pairs))
    return (
        _tournament_from_bits(k, pairs, fixed + rest)
        for rest in itertools.product((0, 1), repeat=len(pairs) - len(fixed))
    )


def enumerate_eulerian_tournaments(
    k: int,
    cap: Optional[int] = None,
    allow_large: bool = False,
    prefix: Sequence[int] = (),
) -> Iterator[Digraph]:
    """
    Stream every labeled Eulerian tournament on k vertices exactly once

    Same order as filtering enumerate_tournaments(k) by is_eulerian, but
    orientations that can no longer balance a vertex are pruned early.

    Returns:
        Iterator[Digraph]: Eulerian tournaments in deterministic order
    """
    _check_enumeration_cap(k, cap, allow_large)
    pairs = vertex_pairs(k)
    fixed = _check_prefix(prefix, len(pairs))
    return _eulerian_stream(k, pairs, fixed)


def _eulerian_stream(k: int, pairs: Sequence[Arc], fixed: Tuple[int, ...]) -> Iterator[Digraph]:
    if k % 2 == 0 and k > 0:
        return

    half = (k - 1) // 2
    out_deg = [0] * k
    remaining = [k - 1] * k
    bits: List[int] = []

    def feasible(i: int, j: int) -> bool:
        for x in (i, j):
            if out_deg[x] > half or out_deg[x] + remaining[x] < half:
                return False
        return True

    def assign(index: int, bit: int) -> bool:
        i, j = pairs[index]
        winner = i if bit == 0 else j
        out_deg[winner] += 1
        remaining[i] -= 1
        remaining[j] -= 1
        bits.append(bit)
        if feasible(i, j):
            return True
        unassign(index, bit)
        return False

    def unassign(index: int, bit: int) -> None:
        i, j = pairs[index]
        winner = i if bit == 0 else j
        out_deg[winner] -= 1
        remaining[i] += 1
        remaining[j] += 1
        bits.pop()

    for index, bit in enumerate(fixed):
        if not assign(index, bit):
            return

    def search(index: int) -> Iterator[Digraph]:
        if index == len(pairs):
            yield _tournament_from_bits(k, pairs, bits)
            return
        for bit in (0, 1):
            if assign(index, bit):
                yield from search(index + 1)
                unassign(index, bit)

    yield from search(len(fixed))


def _check_prefix(prefix: Sequence[int], n_pairs: int) -> Tuple[int, ...]:
    fixed = tuple(int(b) for b in prefix)
    if len(fixed) > n_pairs or any(b not in (0, 1) for b in fixed):
        raise InputError(f"Invalid enumeration prefix {list(prefix)!r}")
    return fixed


def count_eulerian_tournaments(k: int, cap: Optional[int] = None, allow_large: bool = False) -> int:
    count = sum(1 for _ in enumerate_eulerian_tournaments(k, cap=cap, allow_large=allow_large))
    logger.info(f"✅ Enumerated {count} labeled Eulerian tournaments on {k} vertices")
    return count


def random_tournament(k: int, seed: int) -> Digraph:
    """Orient each vertex pair by an independent fair coin from the seeded generator"""
    if k < 1:
        raise InputError(f"Random tournament needs k >= 1, got {k}")
    pairs = vertex_pairs(k)
    rng = make_rng(seed)
    bits = rng.integers(0, 2, size=len(pairs)).tolist()
    return _tournament_from_bits(k, pairs, bits)


def random_digraph(k: int, seed: int) -> Digraph:
    """Each vertex pair independently: no arc, i->j or j->i, each with probability 1/3"""
    if k < 1:
        raise InputError(f"Random digraph needs k >= 1, got {k}")
    pairs = vertex_pairs(k)
    rng = make_rng(seed)
    choices = rng.integers(0, 3, size=len(pairs)).tolist()
    arcs = []
    for (i, j), choice in zip(pairs, choices):
        if choice == 1:
            arcs.append((i, j))
        elif choice == 2:
            arcs.append((j, i))
    return Digraph(k, arcs)


# ----------------------------------------------------------------- switching


@dataclass(frozen=True)
class ArcPair:
    """Two vertex-disjoint arcs a1->b1 and a2->b2, stored with first < second"""

    first: Arc
    second: Arc

    def __post_init__(self):
        endpoints = [self.first[0], self.first[1], self.second[0], self.second[1]]
        if len(set(endpoints)) != 4:
            raise InputError(f"Arcs {self.first} and {self.second} are not vertex-disjoint")
        if self.second < self.first:
            first, second = self.second, self.first
            object.__setattr__(self, "first", first)
            object.__setattr__(self, "second", second)

    def arcs(self) -> Tuple[Arc, Arc]:
        return self.first, self.second


def _half_size(D: Digraph) -> int:
    if D.k % 2 == 0 or not D.is_tournament() or not D.is_eulerian():
        raise InputError("Expected an Eulerian tournament on an odd number of vertices")
    return (D.k - 1) // 2


def in_E_vw(D: Digraph, v: int, w: int) -> bool:
    """
    Membership in E_n^{v,w}: v->w and |N+(v) & N+(w)| = n-1

    Args:
        D: Eulerian tournament on 2n+1 vertices
        v, w: distinct vertices

    Returns:
        bool: membership
    """
    n = _half_size(D)
    if v == w:
        raise InputError(f"Vertices v and w must differ, got {v}")
    if not D.has_arc(v, w):
        return False
    return len(D.out_neighbors(v) & D.out_neighbors(w)) == n - 1


def _common_sets(D: Digraph, v: int, w: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    return D.out_neighbors(v) & D.out_neighbors(w), D.in_neighbors(v) & D.in_neighbors(w)


def valid_pairs(D: Digraph, v: int, w: int) -> List[ArcPair]:
    """
    All unordered vertex-disjoint pairs of arcs a->b with a in A_D, b in B_D

    A_D = N+(v) & N+(w) and B_D = N-(v) & N-(w).
    """
    if not in_E_vw(D, v, w):
        raise InputError(f"Digraph is not in E^{{v,w}} for v={v}, w={w}")
    a_set, b_set = _common_sets(D, v, w)
    cross = sorted((a, b) for a in a_set for b in b_set if D.has_arc(a, b))
    pairs = []
    for i in range(len(cross)):
        for j in range(i + 1, len(cross)):
            (a1, b1), (a2, b2) = cross[i], cross[j]
            if a1 != a2 and b1 != b2:
                pairs.append(ArcPair(cross[i], cross[j]))
    return pairs


def _switch_arcs(pair: ArcPair, v: int) -> List[Arc]:
    # arcs of D that the switch reverses: a->b, v->a, b->v for each of the two arcs
    arcs: List[Arc] = []
    for a, b in pair.arcs():
        arcs.extend([(a, b), (v, a), (b, v)])
    return arcs


def _is_valid_pair(D: Digraph, pair: ArcPair, v: int, w: int) -> bool:
    a_set, b_set = _common_sets(D, v, w)
    return all(a in a_set and b in b_set and D.has_arc(a, b) for a, b in pair.arcs())


def switch(D: Digraph, pair: ArcPair, v: int, w: int) -> Digraph:
    """
    Switched digraph D[a1b1, a2b2]: b->a->v->b for both arcs, otherwise equal to D

    Six arcs change orientation; the result is again an Eulerian tournament.
    """
    if not in_E_vw(D, v, w) or not _is_valid_pair(D, pair, v, w):
        raise InputError(f"Arc pair {pair.first}, {pair.second} is not valid for v={v}, w={w}")
    return D.with_reversed(_switch_arcs(pair, v))


def unswitch(D_prime: Digraph, pair: ArcPair, v: int, w: int) -> Digraph:
    """Undo switch: reverse b->a, a->v, v->b for both arcs of the pair"""
    reversed_arcs: List[Arc] = []
    for a, b in pair.arcs():
        reversed_arcs.extend([(b, a), (a, v), (v, b)])
    for u, x in reversed_arcs:
        if not D_prime.has_arc(u, x):
            raise InputError(f"Arc ({u},{x}) missing; {pair.first}, {pair.second} was not switched here")
    original = D_prime.with_reversed(reversed_arcs)
    if not in_E_vw(original, v, w) or not _is_valid_pair(original, pair, v, w):
        raise InputError("Reverse switch does not land in E^{v,w} with a valid pair")
    return original


def mixed_vertices(D: Digraph, v: int, w: int) -> List[int]:
    """Vertices x other than v, w with one arc into {v, w} and one arc out of it"""
    mixed = []
    for x in D.vertices:
        if x in (v, w):
            continue
        into = int(D.has_arc(x, v)) + int(D.has_arc(x, w))
        out_of = int(D.has_arc(v, x)) + int(D.has_arc(w, x))
        if into == 1 and out_of == 1:
            mixed.append(x)
    return mixed


def switch_preimages(D_prime: Digraph, v: int, w: int) -> List[Digraph]:
    """
    Every D in E^{v,w} with switch(D, pair, v, w) == D_prime for some valid pair

    Tries all 5! assignments of the mixed vertices to the roles a1, b1, a2, b2, u.
    """
    _half_size(D_prime)
    if not D_prime.has_arc(v, w):
        return []
    mixed = mixed_vertices(D_prime, v, w)
    if len(mixed) != 5:
        return []

    found: Dict[Digraph, None] = {}
    for a1, b1, a2, b2, u in itertools.permutations(mixed):
        # u keeps w->u->v; the switched endpoints have a->v and v->b
        if not (D_prime.has_arc(w, u) and D_prime.has_arc(u, v)):
            continue
        if not (D_prime.has_arc(a1, v) and D_prime.has_arc(a2, v)):
            continue
        if not (D_prime.has_arc(v, b1) and D_prime.has_arc(v, b2)):
            continue
        if not (D_prime.has_arc(b1, a1) and D_prime.has_arc(b2, a2)):
            continue
        pair = ArcPair((a1, b1), (a2, b2))
        try:
            candidate = unswitch(D_prime, pair, v, w)
        except InputError:
            continue
        if switch(candidate, pair, v, w) == D_prime:
            found.setdefault(candidate, None)
    return list(found)


def construct_e_vw_instance(n: int) -> Tuple[Digraph, int, int]:
    """
    Explicit member of E_n^{v,w} on 2n+1 vertices with v=0, w=1

    Layout: u = n+1, A_D = {2..n}, B_D = {n+2..2n}. The vertices other than
    v, w carry a regular circulant tournament with one matching b->a reversed
    so every a gains and every b loses one out-arc.

    Returns:
        Tuple[Digraph, int, int]: (D, v, w)
    """
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    v, w = 0, 1
    m = 2 * n - 1
    position_a = list(range(0, n - 1))
    position_u = n - 1
    position_b = list(range(n, m))

    def label(p: int) -> int:
        return p + 2

    arcs: Set[Arc] = set()
    for i in range(m):
        for s in range(1, n):
            arcs.add((label(i), label((i + s) % m)))
    for i in position_a:
        b, a = label(i + n), label(i)
        arcs.discard((b, a))
        arcs.add((a, b))

    u = label(position_u)
    arcs.update({(v, w), (w, u), (u, v)})
    for p in position_a:
        arcs.update({(v, label(p)), (w, label(p))})
    for p in position_b:
        arcs.update({(label(p), v), (label(p), w)})

    return Digraph(2 * n + 1, arcs), v, w


def switching_walk(D: Digraph, v: int, w: int, steps: int, seed: int) -> Digraph:
    """
    Random walk inside E^{v,w} by reversing directed triangles that avoid v and w

    The walk is not uniform on E^{v,w}; it only supplies varied members for
    counting checks at sizes beyond exhaustive enumeration.
    """
    if not in_E_vw(D, v, w):
        raise InputError(f"Walk must start inside E^{{v,w}} for v={v}, w={w}")
    others = [x for x in D.vertices if x not in (v, w)]
    if len(others) < 3:
        return D

    table = [list(row) for row in D.orientation_table()]
    rng = make_rng(seed)
    flips = 0
    for _ in range(steps):
        x, y, z = (others[i] for i in rng.choice(len(others), size=3, replace=False))
        if table[x][y] == table[y][z] == table[z][x]:
            for a, b in ((x, y), (y, z), (z, x)):
                table[a][b] = -table[a][b]
                table[b][a] = -table[b][a]
            flips += 1

    logger.debug(f"Switching walk: {flips} triangle reversals in {steps} steps")
    arcs = [(i, j) for i in range(D.k) for j in range(D.k) if table[i][j] == 1]
    return Digraph(D.k, arcs)
