# Semigame - Skew Adjacency Algebra
# Exact kernel/determinant computations and numeric spectral quantities of A_D

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import Config
from .exceptions import InputError, InternalConsistencyError
from .graph import Digraph
from .utilities.rational_utils import to_fraction

# Set up logging
logger = logging.getLogger(__name__)


class SkewMatrix:
    """Antisymmetric k x k matrix with entries in {-1, 0, +1}"""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence[int]]):
        k = len(rows)
        checked = []
        for i, row in enumerate(rows):
            if len(row) != k:
                raise InputError(f"Row {i} has length {len(row)}, expected {k}")
            checked.append(tuple(int(x) for x in row))
        for i in range(k):
            if checked[i][i] != 0:
                raise InputError(f"Nonzero diagonal entry at ({i},{i})")
            for j in range(i + 1, k):
                if checked[i][j] not in (-1, 0, 1):
                    raise InputError(f"Entry ({i},{j}) = {checked[i][j]} not in {{-1, 0, 1}}")
                if checked[i][j] != -checked[j][i]:
                    raise InputError(f"Entries ({i},{j}) and ({j},{i}) are not antisymmetric")
        self._rows: Tuple[Tuple[int, ...], ...] = tuple(checked)

    @property
    def k(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self._rows[i][j]

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self._rows]

    def to_numpy(self) -> np.ndarray:
        return np.array(self._rows, dtype=np.float64).reshape(self.k, self.k)

    def matvec(self, vector: Sequence[Any]) -> List[Fraction]:
        """Exact product M @ vector"""
        if len(vector) != self.k:
            raise InputError(f"Vector length {len(vector)} does not match matrix size {self.k}")
        values = [to_fraction(x) for x in vector]
        result = []
        for row in self._rows:
            total = Fraction(0)
            for entry, x in zip(row, values):
                if entry:
                    total += entry * x
            result.append(total)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"SkewMatrix({self.to_list()})"


def skew_adjacency(D: Digraph) -> SkewMatrix:
    """A_D: +1 at (i,j) if i->j, -1 if j->i, 0 otherwise"""
    return SkewMatrix(D.orientation_table())


def _bareiss(rows: Sequence[Sequence[int]]) -> Tuple[int, int]:
    """
    Fraction-free Gaussian elimination

    Returns:
        Tuple[int, int]: (rank, determinant); the determinant is 0 unless the
        matrix is square with full rank
    """
    m = [list(row) for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    sign = 1
    prev_pivot = 1
    rank = 0

    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot_row = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != rank:
            m[rank], m[pivot_row] = m[pivot_row], m[rank]
            sign = -sign
        pivot = m[rank][col]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                # exact division: Sylvester's identity
                m[r][c] = (m[r][c] * pivot - m[r][col] * m[rank][c]) // prev_pivot
            m[r][col] = 0
        prev_pivot = pivot
        rank += 1

    if n_rows == n_cols and rank == n_rows:
        determinant = sign * (m[n_rows - 1][n_cols - 1] if n_rows else 1)
    else:
        determinant = 0
    return rank, determinant


def rank(M: SkewMatrix) -> int:
    return _bareiss(M.rows)[0] if M.k else 0


def nullspace_dimension(M: SkewMatrix) -> int:
    """Exact kernel dimension over the rationals"""
    return M.k - rank(M)


def determinant(M: SkewMatrix) -> int:
    """Exact integer determinant"""
    if M.k == 0:
        return 1
    return _bareiss(M.rows)[1]


def det_parity(M: SkewMatrix) -> str:
    return "odd" if determinant(M) % 2 else "even"


@dataclass(frozen=True)
class SpectralReport:
    """Exact kernel dimension plus numeric lambda_2 and alpha_D of a digraph"""

    k: int
    nullspace_dimension: int
    lambda2: float
    alpha: float
    det_parity: Optional[str]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "nullspace_dimension": self.nullspace_dimension,
            "lambda2": float(f"{self.lambda2:.17g}"),
            "alpha": float(f"{self.alpha:.17g}"),
            "det_parity": self.det_parity,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "SpectralReport":
        return cls(
            k=int(payload["k"]),
            nullspace_dimension=int(payload["nullspace_dimension"]),
            lambda2=float(payload["lambda2"]),
            alpha=float(payload["alpha"]),
            det_parity=payload.get("det_parity"),
        )


def singular_values(M: SkewMatrix) -> np.ndarray:
    if M.k == 0:
        return np.zeros(0)
    return np.linalg.svd(M.to_numpy(), compute_uv=False)


def spectral_report(D: Digraph, zero_tolerance: Optional[float] = None) -> SpectralReport:
    """
    Assemble the spectral report of A_D

    Singular values below zero_tolerance * k count as zero; that count must
    equal the exact kernel dimension.

    Args:
        D: digraph
        zero_tolerance: threshold factor (Config.ZERO_TOLERANCE by default)

    Returns:
        SpectralReport: report
    """
    tolerance = Config.ZERO_TOLERANCE if zero_tolerance is None else zero_tolerance
    M = skew_adjacency(D)
    exact_null = nullspace_dimension(M)
    values = singular_values(M)
    threshold = tolerance * max(D.k, 1)

    numeric_zero = int(np.count_nonzero(values < threshold))
    if numeric_zero != exact_null:
        raise InternalConsistencyError(
            f"Numeric zero count {numeric_zero} disagrees with exact nullspace dimension {exact_null}"
        )

    nonzero = values[values >= threshold]
    lambda2 = float(nonzero.min()) if nonzero.size else 0.0
    alpha = lambda2 / (D.k ** 2) if D.k else 0.0
    parity = det_parity(M) if D.is_tournament() else None

    logger.debug(f"Spectral report k={D.k}: null={exact_null}, lambda2={lambda2:.6g}")
    return SpectralReport(
        k=D.k,
        nullspace_dimension=exact_null,
        lambda2=lambda2,
        alpha=alpha,
        det_parity=parity,
    )


def _probability_weights(D: Digraph, p: Any) -> List[Fraction]:
    weights = getattr(p, "weights", p)
    if len(weights) != D.k:
        raise InputError(f"Distribution has {len(weights)} entries for {D.k} vertices")
    values = [to_fraction(x) for x in weights]
    if any(x < 0 for x in values):
        raise InputError(f"Distribution has a negative entry: {values}")
    if sum(values, Fraction(0)) != 1:
        raise InputError("Distribution does not sum to exactly 1")
    return values


def gains(D: Digraph, p: Any) -> List[Fraction]:
    """Norman's expected gain for each vertex: (A_D p)_v, exact"""
    return skew_adjacency(D).matvec(_probability_weights(D, p))


def punish_gap(D: Digraph, p: Any, alpha: Optional[float] = None) -> Tuple[Fraction, float]:
    """
    Compare the best gain against p with the spectral lower bound

    Args:
        D: digraph
        p: probability vector (sequence or Distribution)
        alpha: alpha_D, computed from spectral_report when omitted

    Returns:
        Tuple[Fraction, float]: (max_v (A_D p)_v exactly, alpha_D * max_v |p_v - 1/k|)
    """
    weights = _probability_weights(D, p)
    lhs = max(skew_adjacency(D).matvec(weights))
    if alpha is None:
        alpha = spectral_report(D).alpha
    uniform = Fraction(1, D.k)
    deviation = max(abs(float(x - uniform)) for x in weights)
    return lhs, alpha * deviation
