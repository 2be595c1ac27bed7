"""Forward diffusion, the noise-prediction objective, and reverse sampling.

Images are numpy arrays of shape (H, W, C) in model space [-1, 1]; noise
arrays share the shape but are unbounded.  Every function here is pure: equal
arguments (plus the explicit seed where one exists) give bitwise-equal
results.  Estimators passed in must honour the read-only contract from
:mod:`patchdiff.denoiser`.
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import RangeError, ShapeError
from .rng import generator
from .schedule import NoiseSchedule, TimestepSubsequence

MODEL_MIN = -1.0
MODEL_MAX = 1.0


def _require_same_shape(a: np.ndarray, b: np.ndarray, what: str) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"{what}: shapes {a.shape} and {b.shape} differ")


def forward_sample(
    x0: np.ndarray, t: int, eps: np.ndarray, sched: NoiseSchedule
) -> np.ndarray:
    """Noised sample at step ``t``: ``sqrt(ab_t) * x0 + sqrt(1 - ab_t) * eps``."""
    _require_same_shape(x0, eps, "forward_sample")
    ab = sched.alpha_bar(_check_step(t, sched))
    return sqrt(ab) * x0 + sqrt(1.0 - ab) * eps


def predict_x0(
    x_t: np.ndarray, eps_hat: np.ndarray, t: int, sched: NoiseSchedule
) -> np.ndarray:
    """Clean-image prediction implied by a noise estimate at step ``t``."""
    _require_same_shape(x_t, eps_hat, "predict_x0")
    ab = sched.alpha_bar(_check_step(t, sched))
    return (x_t - sqrt(1.0 - ab) * eps_hat) / sqrt(ab)


@dataclass(frozen=True)
class PosteriorParams:
    """Gaussian parameters of the reverse transition conditioned on x0."""

    mu_tilde: np.ndarray
    beta_tilde: float


def posterior_params(
    x_t: np.ndarray, eps: np.ndarray, t: int, sched: NoiseSchedule
) -> PosteriorParams:
    """Posterior mean/variance of the previous step given ``x_t`` and its noise.

    ``mu_tilde = (x_t - beta_t / sqrt(1 - ab_t) * eps) / sqrt(alpha_t)`` and
    ``beta_tilde = (1 - ab_{t-1}) / (1 - ab_t) * beta_t``; at ``t = 1`` the
    variance is exactly zero since ``ab_0 == 1``.
    """
    _require_same_shape(x_t, eps, "posterior_params")
    _check_step(t, sched)
    beta = sched.beta(t)
    ab_t = sched.alpha_bar(t)
    ab_prev = sched.alpha_bar(t - 1)
    mu = (x_t - beta / sqrt(1.0 - ab_t) * eps) / sqrt(sched.alpha(t))
    beta_tilde = (1.0 - ab_prev) / (1.0 - ab_t) * beta
    return PosteriorParams(mu_tilde=mu, beta_tilde=beta_tilde)


def training_loss(est, x0: np.ndarray, cond: np.ndarray, t: int, eps: np.ndarray) -> float:
    """Squared noise-prediction error, averaged over all elements.

    The mean reduction keeps the loss scale independent of patch size and is
    the per-example quantity whose batch mean the trainer optimizes.
    """
    _require_same_shape(x0, cond, "training_loss")
    _require_same_shape(x0, eps, "training_loss")
    x_t = forward_sample(x0, t, eps, sched=est.schedule) if hasattr(est, "schedule") else None
    raise NotImplementedError


def ancestral_step(
    x_t: np.ndarray,
    eps_hat: np.ndarray,
    t: int,
    sched: NoiseSchedule,
    z: np.ndarray,
) -> np.ndarray:
    """One stochastic reverse step: posterior mean plus ``sigma_t * z``.

    ``z`` is caller-supplied noise (zero at t=1 by convention).  Retained for
    completeness; restoration uses the deterministic :func:`implicit_step`.
    """
    _require_same_shape(x_t, eps_hat, "ancestral_step")
    _require_same_shape(x_t, z, "ancestral_step")
    params = posterior_params(x_t, eps_hat, t, sched)
    return params.mu_tilde + sqrt(params.beta_tilde) * z


def implicit_step(
    x_t: np.ndarray,
    eps_hat: np.ndarray,
    t: int,
    t_next: int,
    sched: NoiseSchedule,
) -> np.ndarray:
    """Deterministic reverse update from step ``t`` to ``t_next < t``.

    Extracts the clean-image prediction and re-noises it to level ``t_next``;
    with ``t_next = 0`` the noise term vanishes and the prediction itself is
    returned.
    """
    if not 0 <= t_next < t:
        raise RangeError(f"need 0 <= t_next < t, got t={t}, t_next={t_next}")
    x0_hat = predict_x0(x_t, eps_hat, t, sched)
    ab_next = sched.alpha_bar(t_next)
    return sqrt(ab_next) * x0_hat + sqrt(1.0 - ab_next) * eps_hat


def sample_patch(
    est,
    cond: np.ndarray,
    sched: NoiseSchedule,
    subseq: TimestepSubsequence,
    seed: int,
) -> np.ndarray:
    """Restore a single patch by deterministic reverse sampling.

    Draws the initial noise image from ``seed``, walks the subsequence in
    reverse down to ``t_next = 0``, and clamps the result to model range.
    Fully deterministic given ``(seed, est, cond)``.
    """
    if cond.ndim != 3 or cond.shape[2] != 3:
        raise ShapeError(f"cond must be (p, p, 3), got {cond.shape}")
    if subseq.taus[-1] > sched.T:
        raise RangeError(f"subsequence reaches {subseq.taus[-1]} > T={sched.T}")
    x = generator(seed).standard_normal(cond.shape)
    for i in range(subseq.S, 0, -1):
        t = subseq.taus[i - 1]
        t_next = subseq.taus[i - 2] if i > 1 else 0
        eps_hat = np.asarray(est.estimate(x, cond, t), dtype=np.float64)
        x = implicit_step(x, eps_hat, t, t_next, sched)
    return np.clip(x, MODEL_MIN, MODEL_MAX)


def _check_step(t: int, sched: NoiseSchedule) -> int:
    if not 1 <= t <= sched.T:
        raise RangeError(f"timestep {t} outside [1, {sched.T}]")
    return t
