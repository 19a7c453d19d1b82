# Semigame - Statistics Utilities
# Sample summaries used by Monte Carlo experiments

from typing import Any, Dict, NamedTuple, Sequence

import numpy as np

from ..exceptions import InputError

# Normal quantile for two-sided 95% intervals
Z_95 = 1.959963984540054


class SampleSummary(NamedTuple):
    """Mean, standard error and normal 95% interval of a sample"""

    mean: float
    stderr: float
    ci95_low: float
    ci95_high: float
    reps: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "ci95": [self.ci95_low, self.ci95_high],
            "reps": self.reps,
        }

    def within(self, target: float, n_stderr: float) -> bool:
        """True if |mean - target| <= n_stderr * stderr (exact match when stderr is 0)"""
        return abs(self.mean - target) <= n_stderr * self.stderr + 1e-12


def summarize(values: Sequence[float]) -> SampleSummary:
    """
    Summarize a sample in the given order

    Args:
        values: observations; order is preserved so the fold is deterministic

    Returns:
        SampleSummary: mean, stderr (ddof=1, 0 for a single value) and CI95
    """
    data = np.asarray(values, dtype=np.float64)
    if data.size == 0:
        raise InputError("Cannot summarize an empty sample")

    mean = float(data.mean())
    if data.size > 1:
        stderr = float(data.std(ddof=1) / np.sqrt(data.size))
    else:
        stderr = 0.0

    return SampleSummary(
        mean=mean,
        stderr=stderr,
        ci95_low=mean - Z_95 * stderr,
        ci95_high=mean + Z_95 * stderr,
        reps=int(data.size),
    )
