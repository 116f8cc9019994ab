"""Rational model fitting from sampled impulse responses.

A one-shot linear-prediction (Prony) fit initializes the Steiglitz-McBride
iteration, which refines numerator and denominator by prefiltered linear
least squares.  A bilinear (Tustin) substitution converts the fitted
discrete model to a continuous one of the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.signal

from .errors import (ConfigError, InsufficientData, NonFiniteIterate,
                     PoleAtMinusOne, SingularSystem)
from .lti import (ContinuousTransferFunction, DiscreteTransferFunction,
                  Polynomial, TimeSeries, poly_eval)

__all__ = ["FitConfig", "prony_init", "stmcb_fit", "bilinear_d2c"]


@dataclass(frozen=True)
class FitConfig:
    """Model orders and iteration knobs for :func:`stmcb_fit`.

    nb: numerator degree (nb + 1 coefficients); na: denominator degree.
    regularization adds a ridge term to the least-squares solves for
    near-singular data; zero keeps them plain.
    """

    nb: int
    na: int
    iterations: int = 5
    regularization: float = 0.0

    def __post_init__(self):
        if int(self.nb) < 0:
            raise ConfigError(f"nb must be >= 0, got {self.nb!r}")
        if int(self.na) < 1:
            raise ConfigError(f"na must be >= 1, got {self.na!r}")
        if int(self.iterations) < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations!r}")
        reg = float(self.regularization)
        if not (math.isfinite(reg) and reg >= 0.0):
            raise ConfigError(f"regularization must be >= 0, got {self.regularization!r}")
        object.__setattr__(self, "nb", int(self.nb))
        object.__setattr__(self, "na", int(self.na))
        object.__setattr__(self, "iterations", int(self.iterations))
        object.__setattr__(self, "regularization", reg)


def _lstsq(mat: np.ndarray, rhs: np.ndarray, regularization: float) -> np.ndarray:
    """Least squares via orthogonal factorization (SVD); minimum-norm on
    rank-deficient systems.  A degenerate all-zero system has no usable
    solution and raises SingularSystem."""
    if not np.any(mat):
        raise SingularSystem("all-zero regression matrix")
    if regularization > 0.0:
        k = mat.shape[1]
        mat = np.vstack([mat, math.sqrt(regularization) * np.eye(k)])
        rhs = np.concatenate([rhs, np.zeros(k)])
    sol, _, _, _ = np.linalg.lstsq(mat, rhs, rcond=None)
    return sol


def _lagged(x: np.ndarray, lags: range) -> np.ndarray:
    """Column-stack x delayed by each lag, zero prehistory."""
    n = len(x)
    cols = []
    for lag in lags:
        col = np.zeros(n)
        col[lag:] = x[:n - lag]
        cols.append(col)
    return np.column_stack(cols)


def prony_init(h: TimeSeries, nb: int, na: int,
               regularization: float = 0.0) -> DiscreteTransferFunction:
    """One-shot rational fit of an impulse response.

    The denominator comes from linear prediction on samples nb+1 onward
    (each predicted from the previous na); the numerator from the first
    nb + 1 terms of the convolution identity b = a * h.
    """
    if nb < 0 or na < 1:
        raise ConfigError("need nb >= 0 and na >= 1")
    y = h.values
    n = len(y)
    if n < nb + na + 2:
        raise InsufficientData(f"need at least {nb + na + 2} samples, got {n}")
    rows = _lagged(y, range(1, na + 1))[nb + 1:]
    a_tail = _lstsq(rows, -y[nb + 1:], regularization)
    a = np.concatenate(([1.0], a_tail))
    b = np.convolve(a, y)[:nb + 1]
    return DiscreteTransferFunction(Polynomial(tuple(b)), Polynomial(tuple(a)), h.dt)


def stmcb_fit(h: TimeSeries, cfg: FitConfig) -> DiscreteTransferFunction:
    """Fit a discrete rational model to an impulse response by
    Steiglitz-McBride iteration.

    Starting from :func:`prony_init`, each pass prefilters the unit
    impulse and the data through 1/A(z) of the previous pass (zero initial
    state), then solves one joint least-squares problem for all numerator
    coefficients and the trailing denominator coefficients (a0 pinned at
    one), minimizing ||A(z)*h_f - B(z)*delta_f|| over all samples.

    Noiseless data from a model inside the (nb, na) class is recovered to
    roundoff; the iteration is then a fixed point.  No stabilization is
    applied: data that grows without bound fits to a model with poles
    outside the unit circle, and the stability flag is left to the caller
    (see :func:`irid.lti.is_stable_discrete`).
    """
    nb, na = cfg.nb, cfg.na
    y = h.values
    n = len(y)
    if n < 3 * (nb + na):
        raise InsufficientData(f"need at least {3 * (nb + na)} samples, got {n}")
    init = prony_init(h, nb, na, cfg.regularization)
    a = np.array(init.den.coeffs)
    b = np.array(init.num.coeffs)
    delta = np.zeros(n)
    delta[0] = 1.0
    for it in range(cfg.iterations):
        hf = scipy.signal.lfilter([1.0], a, y)
        xf = scipy.signal.lfilter([1.0], a, delta)
        if not (np.all(np.isfinite(hf)) and np.all(np.isfinite(xf))):
            raise NonFiniteIterate("prefiltered data overflowed", it)
        mat = np.hstack([-_lagged(hf, range(1, na + 1)),
                         _lagged(xf, range(0, nb + 1))])
        sol = _lstsq(mat, hf, cfg.regularization)
        if not np.all(np.isfinite(sol)):
            raise NonFiniteIterate("least-squares solution is non-finite", it)
        a = np.concatenate(([1.0], sol[:na]))
        b = sol[na:]
    return DiscreteTransferFunction(Polynomial(tuple(b)), Polynomial(tuple(a)), h.dt)


def bilinear_d2c(g: DiscreteTransferFunction) -> ContinuousTransferFunction:
    """Continuous model from the exact substitution
    z = (1 + s*ts/2) / (1 - s*ts/2).

    The resulting rational function satisfies Gc(s) == Gd(z(s)) pointwise
    up to roundoff wherever both sides are defined.  A denominator root at
    z = -1 maps a pole to infinity and is rejected.
    """
    ts = g.ts
    num_c = tuple(c for c in g.num.coeffs)
    den_c = tuple(c for c in g.den.coeffs)
    den_at_minus1 = poly_eval(g.den, -1.0)
    if abs(den_at_minus1) <= 1e-12 * sum(abs(c) for c in den_c):
        raise PoleAtMinusOne("discrete denominator has a root at z = -1")

    p = np.array([ts / 2.0, 1.0])   # numerator of z(s)
    q = np.array([-ts / 2.0, 1.0])  # denominator of z(s)
    deg = max(len(num_c), len(den_c)) - 1

    def lift(coeffs: Tuple[float, ...]) -> np.ndarray:
        # sum_i c_i * p^(d-i) * q^(deg-d+i)  with d = len(coeffs)-1, i.e.
        # substitute z = p/q and clear q^deg
        d = len(coeffs) - 1
        out = np.zeros(1)
        for i, ci in enumerate(coeffs):
            term = np.array([ci])
            for _ in range(d - i):
                term = np.polymul(term, p)
            for _ in range(deg - d + i):
                term = np.polymul(term, q)
            out = np.polyadd(out, term)
        return out

    num_s = lift(num_c)
    den_s = lift(den_c)
    return ContinuousTransferFunction(Polynomial(tuple(num_s)),
                                      Polynomial(tuple(den_s)))
