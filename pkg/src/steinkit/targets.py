"""Target distributions defined through their score functions grad log p.

A target only needs its score to be usable: normalizing constants never enter.
Constructors also attach the unnormalized log density when it has a stable
closed form, which lets tests validate each score against finite differences.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .rng import make_rng

__all__ = [
    "Target",
    "gaussian_target",
    "mixture_target",
    "logistic_regression_target",
    "pseudo_huber_target",
    "dissipativity_profile",
    "target_from_json",
    "load_logistic_csv",
]


@dataclass(frozen=True)
class Target:
    """A distribution known through b = grad log p.

    score_rows evaluates the score at each row of an (n, d) array; score is
    the single-point form with argument validation.
    """

    dim: int
    score_rows: Callable[[np.ndarray], np.ndarray]
    log_density_unnormalized: Optional[Callable[[np.ndarray], float]] = None
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if int(self.dim) < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim}")

    def score(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"point has shape {x.shape}, target dimension is {self.dim}")
        if not np.all(np.isfinite(x)):
            raise ValueError("point has non-finite entries")
        return self.score_rows(x[None, :])[0]

    def spec(self) -> dict:
        return {"kind": self.kind, **self.params}


def gaussian_target(dim: int, mean=0.0) -> Target:
    """N(mean, I_d); score(x) = mean - x."""
    mean_vec = np.broadcast_to(np.asarray(mean, dtype=float), (dim,)).copy()

    def score_rows(x):
        return mean_vec - x

    def log_density(x):
        d = np.asarray(x, dtype=float) - mean_vec
        return -0.5 * float(np.dot(d, d))

    return Target(
        dim=dim,
        score_rows=score_rows,
        log_density_unnormalized=log_density,
        kind="gaussian",
        params={"d": dim, "mean": mean_vec.tolist()},
    )


def mixture_target(dim: int, delta: float) -> Target:
    """Even two-component Gaussian mixture with modes at -delta*e1 and +delta*e1.

    score(x) = -x + delta*tanh(delta*x_1)*e1.  The tanh form stays finite for
    large |x_1| where the ratio of component densities would overflow.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")

    def score_rows(x):
        b = -x.copy()
        b[:, 0] += delta * np.tanh(delta * x[:, 0])
        return b

    def log_density(x):
        x = np.asarray(x, dtype=float)
        a = -0.5 * float(np.dot(x + delta * _e1(dim), x + delta * _e1(dim)))
        b = -0.5 * float(np.dot(x - delta * _e1(dim), x - delta * _e1(dim)))
        return float(np.logaddexp(a, b))

    return Target(
        dim=dim,
        score_rows=score_rows,
        log_density_unnormalized=log_density,
        kind="mixture",
        params={"d": dim, "delta": delta},
    )


def logistic_regression_target(covariates, labels) -> Target:
    """Bayesian logistic regression with a flat prior.

    Labels are {0,1}; score(theta) = sum_l (y_l - sigmoid(<theta, v_l>)) v_l.
    """
    V = np.atleast_2d(np.asarray(covariates, dtype=float))
    y = np.asarray(labels, dtype=float).ravel()
    if V.shape[0] != y.shape[0]:
        raise ValueError(f"{V.shape[0]} covariate rows but {y.shape[0]} labels")
    if not np.all(np.isin(y, (0.0, 1.0))):
        raise ValueError("labels must be encoded in {0, 1}")
    dim = V.shape[1]

    def score_rows(theta):
        z = theta @ V.T                      # (n, L)
        return (y[None, :] - _sigmoid(z)) @ V

    def log_density(theta):
        z = np.asarray(theta, dtype=float) @ V.T
        # sum_l [y_l z_l - log(1 + e^{z_l})], stable for large |z|
        return float(np.sum(y * z - np.logaddexp(0.0, z)))

    return Target(
        dim=dim,
        score_rows=score_rows,
        log_density_unnormalized=log_density,
        kind="logistic",
        params={"d": dim, "observations": int(V.shape[0])},
    )


def pseudo_huber_target(dim: int) -> Target:
    """Heavy-tailed target with log p(x) = -sqrt(1 + ||x||^2).

    Its score -x / sqrt(1 + ||x||^2) has norm bounded by 1, which is the regime
    where discrepancies built from vanishing kernels lose control of tightness.
    """

    def score_rows(x):
        nrm = np.sqrt(1.0 + np.sum(x * x, axis=1, keepdims=True))
        return -x / nrm

    def log_density(x):
        x = np.asarray(x, dtype=float)
        return -float(np.sqrt(1.0 + np.dot(x, x)))

    return Target(
        dim=dim,
        score_rows=score_rows,
        log_density_unnormalized=log_density,
        kind="pseudo_huber",
        params={"d": dim},
    )


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _e1(dim):
    e = np.zeros(dim)
    e[0] = 1.0
    return e


def dissipativity_profile(
    target: Target,
    r: float,
    trials: int,
    seed: int,
    probe_half_width: float = 10.0,
) -> float:
    """Monte Carlo upper estimate of the contraction profile at separation r.

    Minimizes -2 <b(x) - b(y), x - y> / r^2 over random pairs with
    ||x - y|| = r: x uniform in the probe box [-w, w]^d, y = x + r * (random
    unit direction).  The true profile is an infimum over all of R^d, so the
    estimate can only overshoot it; the probe box makes runs reproducible.
    Base points and directions come from separate seeded streams, so a run
    with more trials extends (and can only lower) a shorter run's estimate.
    """
    if r <= 0:
        raise ValueError(f"r must be positive, got {r}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    d = target.dim
    rng_x = make_rng(seed, "dissipativity_x")
    rng_u = make_rng(seed, "dissipativity_u")
    x = rng_x.uniform(-probe_half_width, probe_half_width, size=(trials, d))
    u = rng_u.standard_normal((trials, d))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    y = x + r * u
    bx = target.score_rows(x)
    by = target.score_rows(y)
    # x - y = -r u, so the ratio reduces to 2 <b(x)-b(y), u> / r
    vals = 2.0 * np.sum((bx - by) * u, axis=1) / r
    return float(vals.min())


def load_logistic_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read rows of covariates with the label in the last column."""
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.reader(fh):
            if not rec:
                continue
            try:
                rows.append([float(v) for v in rec])
            except ValueError:
                continue  # header line
    if not rows:
        raise ValueError(f"no numeric rows in {path}")
    data = np.asarray(rows, dtype=float)
    if data.shape[1] < 2:
        raise ValueError("logistic CSV needs at least one covariate column plus a label")
    return data[:, :-1], data[:, -1]


def target_from_json(spec: dict) -> Target:
    """Build a target from {"kind": "gaussian"|"mixture"|"logistic"|"pseudo_huber", ...}."""
    spec = dict(spec)
    kind = spec.pop("kind", None)
    if kind == "gaussian":
        return gaussian_target(dim=int(spec.pop("d")), mean=spec.pop("mean", 0.0))
    if kind == "mixture":
        return mixture_target(dim=int(spec.pop("d")), delta=float(spec.pop("delta", 1.5)))
    if kind == "pseudo_huber":
        return pseudo_huber_target(dim=int(spec.pop("d")))
    if kind == "logistic":
        if "csv" in spec:
            V, y = load_logistic_csv(spec.pop("csv"))
        else:
            V, y = spec.pop("covariates"), spec.pop("labels")
        return logistic_regression_target(V, y)
    raise ValueError(f"unknown target kind {kind!r}")
