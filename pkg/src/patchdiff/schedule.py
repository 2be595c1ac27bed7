"""Fixed variance schedule and sampling-step subsequences.

Timesteps are 1-based throughout the public API: ``t`` ranges over
``{1, ..., T}``, and the cumulative signal coefficient at ``t = 0`` is 1 by
convention (queried when a sampling loop takes its final step).  All schedule
arithmetic is float64; consumers cast down at the model boundary.
"""

from dataclasses import dataclass

import numpy as np

from .errors import RangeError

DEFAULT_TIMESTEPS = 1000
DEFAULT_BETA_START = 1e-4
DEFAULT_BETA_END = 0.02


@dataclass(frozen=True)
class NoiseSchedule:
    """Per-step variances and the derived signal coefficients.

    ``betas[i]`` holds the variance for timestep ``t = i + 1``; prefer the
    1-based accessors over raw array indexing.  Instances are immutable
    (arrays are marked read-only) and safe to share across threads.
    """

    T: int
    betas: np.ndarray
    alphas: np.ndarray
    alpha_bars: np.ndarray

    def __post_init__(self):
        if self.T < 1:
            raise RangeError(f"T must be >= 1, got {self.T}")
        for name in ("betas", "alphas", "alpha_bars"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            if arr.shape != (self.T,):
                raise RangeError(f"{name} must have shape ({self.T},), got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not np.all((self.betas > 0.0) & (self.betas < 1.0)):
            raise RangeError("betas must lie strictly inside (0, 1)")
        if self.T > 1 and not np.all(np.diff(self.betas) > 0.0):
            raise RangeError("betas must be strictly increasing")

    def beta(self, t: int) -> float:
        self._check_t(t)
        return float(self.betas[t - 1])

    def alpha(self, t: int) -> float:
        self._check_t(t)
        return float(self.alphas[t - 1])

    def alpha_bar(self, t: int) -> float:
        """Cumulative product of alphas up to ``t``; ``alpha_bar(0) == 1.0``."""
        if t == 0:
            return 1.0
        self._check_t(t)
        return float(self.alpha_bars[t - 1])

    def _check_t(self, t: int) -> None:
        if not 1 <= t <= self.T:
            raise RangeError(f"timestep {t} outside [1, {self.T}]")


@dataclass(frozen=True)
class TimestepSubsequence:
    """Sampling timesteps ``taus[0] < ... < taus[S-1]`` drawn from {1..T}."""

    S: int
    taus: tuple

    def __post_init__(self):
        if self.S < 1 or len(self.taus) != self.S:
            raise RangeError("subsequence length must equal S >= 1")
        if self.taus[0] != 1:
            raise RangeError("subsequence must start at timestep 1")
        if any(b <= a for a, b in zip(self.taus, self.taus[1:])):
            raise RangeError("subsequence must be strictly increasing")


def make_linear_schedule(
    T: int = DEFAULT_TIMESTEPS,
    beta_start: float = DEFAULT_BETA_START,
    beta_end: float = DEFAULT_BETA_END,
) -> NoiseSchedule:
    """Build the linearly increasing variance schedule.

    ``betas`` interpolate from ``beta_start`` at t=1 to ``beta_end`` at t=T.
    """
    if T < 1:
        raise RangeError(f"T must be >= 1, got {T}")
    if not 0.0 < beta_start < beta_end < 1.0:
        raise RangeError(
            f"need 0 < beta_start < beta_end < 1, got ({beta_start}, {beta_end})"
        )
    betas = np.linspace(beta_start, beta_end, T, dtype=np.float64)
    alphas = 1.0 - betas
    alpha_bars = np.cumprod(alphas)
    return NoiseSchedule(T=T, betas=betas, alphas=alphas, alpha_bars=alpha_bars)


def make_subsequence(T: int, S: int) -> TimestepSubsequence:
    """Uniformly interleaved sampling steps: ``tau_i = (i-1) * T/S + 1``.

    Requires ``S`` to divide ``T``; silently rounding a non-integral stride
    would shift the final step away from t=1, so that case is rejected.
    """
    if S < 1 or S > T:
        raise RangeError(f"S must satisfy 1 <= S <= T, got S={S}, T={T}")
    if T % S != 0:
        raise RangeError(f"S must divide T, got S={S}, T={T}")
    stride = T // S
    taus = tuple((i - 1) * stride + 1 for i in range(1, S + 1))
    return TimestepSubsequence(S=S, taus=taus)
