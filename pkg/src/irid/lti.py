"""Polynomials, rational transfer functions and sampled signals.

Coefficient convention used everywhere in this package: lists are ordered by
DESCENDING powers, leading coefficient first, so ``[1, -3, 2]`` is
``x**2 - 3*x + 2``.  Discrete filtering pairs numerator and denominator
entries by lag index (entry ``i`` multiplies the input/output delayed by
``i`` samples); when numerator and denominator are equally long this agrees
with reading ``num(z)/den(z)`` as polynomials in ``z``, which is the only
shape the fitting pipeline produces.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
import scipy.signal

from .errors import DegreeError, DenominatorZero, ParamError

__all__ = [
    "Polynomial",
    "DiscreteTransferFunction",
    "ContinuousTransferFunction",
    "TimeSeries",
    "FrequencyGrid",
    "FrequencyResponseSeries",
    "poly_eval",
    "poly_roots",
    "discrete_impulse",
    "discrete_freq_response",
    "continuous_freq_response",
    "is_stable_discrete",
]

PolyLike = Union["Polynomial", Sequence[float]]


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial; ``coeffs`` in descending powers, never empty."""

    coeffs: Tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ParamError("polynomial needs at least one coefficient")
        if not all(math.isfinite(c) for c in coeffs):
            raise ParamError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def normalized(self) -> "Polynomial":
        """Strip leading zeros; the zero polynomial stays as ``(0.0,)``."""
        c = self.coeffs
        k = 0
        while k < len(c) - 1 and c[k] == 0.0:
            k += 1
        return Polynomial(c[k:]) if k else self

    def scaled(self, factor: float) -> "Polynomial":
        return Polynomial(tuple(c * factor for c in self.coeffs))

    def __call__(self, x: complex) -> complex:
        return poly_eval(self, x)


def _as_poly(p: PolyLike) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(tuple(p))


def poly_eval(p: PolyLike, x: complex) -> complex:
    """Evaluate ``p`` at ``x`` by Horner's nested multiplication."""
    acc = 0j
    for c in _as_poly(p).coeffs:
        acc = acc * x + c
    return acc


def poly_roots(p: PolyLike) -> np.ndarray:
    """All roots of ``p`` via the companion-matrix eigenvalue method.

    Raises DegreeError for (effectively) constant polynomials.  Each
    returned root r satisfies
    ``|p(r)| <= 1e-8 * max|coeff| * max(1, |r|)**degree``.
    """
    q = _as_poly(p).normalized()
    if q.degree < 1 or q.coeffs[0] == 0.0:
        raise DegreeError("root finding needs degree >= 1")
    return np.roots(q.coeffs)


def _monic_pair(num: PolyLike, den: PolyLike) -> Tuple[Polynomial, Polynomial]:
    num = _as_poly(num)
    den = _as_poly(den)
    lead = den.coeffs[0]
    if lead == 0.0:
        raise ParamError("denominator leading coefficient must be nonzero")
    if lead != 1.0:
        num = num.scaled(1.0 / lead)
        den = den.scaled(1.0 / lead)
    return num, den


@dataclass(frozen=True)
class DiscreteTransferFunction:
    """Rational function of z with sample period ``ts``; denominator is
    normalized to monic on construction (numerator rescaled to match)."""

    num: Polynomial
    den: Polynomial
    ts: float

    def __post_init__(self):
        num, den = _monic_pair(self.num, self.den)
        ts = float(self.ts)
        if not (math.isfinite(ts) and ts > 0.0):
            raise ParamError("sample period must be positive and finite")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "ts", ts)


@dataclass(frozen=True)
class ContinuousTransferFunction:
    """Rational function of s; denominator normalized to monic."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        num, den = _monic_pair(self.num, self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Uniformly sampled real signal; sample k sits at ``t0 + k*dt``.

    Construction rejects NaN/Inf samples; the stored array is read-only.
    """

    t0: float
    dt: float
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ParamError("values must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(values)):
            raise ParamError("time series rejects NaN/Inf samples")
        dt = float(self.dt)
        t0 = float(self.t0)
        if not (math.isfinite(dt) and dt > 0.0) or not math.isfinite(t0):
            raise ParamError("need finite t0 and dt > 0")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "t0", t0)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self.values))

    def sliced(self, mask: np.ndarray) -> "TimeSeries":
        """Restrict to a boolean mask that keeps a contiguous prefix."""
        idx = np.flatnonzero(mask)
        if idx.size == 0 or idx[0] != 0 or idx[-1] != idx.size - 1:
            raise ParamError("mask must select a non-empty prefix")
        return TimeSeries(self.t0, self.dt, self.values[mask])


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Strictly increasing positive angular frequencies in rad/s."""

    omegas: np.ndarray

    def __post_init__(self):
        omegas = np.array(self.omegas, dtype=float)
        if omegas.ndim != 1 or omegas.size == 0:
            raise ParamError("omegas must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(omegas)) or np.any(omegas <= 0.0):
            raise ParamError("frequencies must be finite and > 0")
        if np.any(np.diff(omegas) <= 0.0):
            raise ParamError("frequencies must be strictly increasing")
        omegas.flags.writeable = False
        object.__setattr__(self, "omegas", omegas)

    def __len__(self) -> int:
        return len(self.omegas)

    @classmethod
    def log_spaced(cls, wmin: float, wmax: float, npoints: int) -> "FrequencyGrid":
        """Logarithmically spaced grid over [wmin, wmax], inclusive."""
        if not (0.0 < wmin < wmax):
            raise ParamError("need 0 < wmin < wmax")
        if npoints < 2:
            raise ParamError("need at least two grid points")
        omegas = np.logspace(math.log10(wmin), math.log10(wmax), npoints)
        # pin the endpoints exactly; logspace only hits them to roundoff
        omegas[0], omegas[-1] = wmin, wmax
        return cls(omegas)


@dataclass(frozen=True, eq=False)
class FrequencyResponseSeries:
    """Complex response sampled on a FrequencyGrid."""

    grid: FrequencyGrid
    response: np.ndarray

    def __post_init__(self):
        response = np.array(self.response, dtype=complex)
        if response.shape != (len(self.grid),):
            raise ParamError("response length must match the grid")
        response.flags.writeable = False
        object.__setattr__(self, "response", response)

    def magnitude_db(self) -> np.ndarray:
        return 20.0 * np.log10(np.abs(self.response))

    def phase_deg(self) -> np.ndarray:
        """Phase in degrees, unwrapped along the grid."""
        return np.degrees(np.unwrap(np.angle(self.response)))


def discrete_impulse(g: DiscreteTransferFunction, n: int) -> TimeSeries:
    """First ``n`` samples of the unit-impulse response of ``g``.

    Runs the difference equation defined by (num, den) directly, so the
    response starts at t=0 with ``num[0]/den[0]``.
    """
    if n < 1:
        raise ParamError("need at least one output sample")
    x = np.zeros(n)
    x[0] = 1.0
    y = scipy.signal.lfilter(g.num.coeffs, g.den.coeffs, x)
    return TimeSeries(0.0, g.ts, y)


def _rational_response(num: Polynomial, den: Polynomial, points: np.ndarray,
                       grid: FrequencyGrid) -> FrequencyResponseSeries:
    nv = np.polyval(num.coeffs, points)
    dv = np.polyval(den.coeffs, points)
    small = np.abs(dv) < 1e-300
    if np.any(small):
        w = grid.omegas[np.argmax(small)]
        raise DenominatorZero(f"denominator vanishes near omega={w:g} rad/s")
    return FrequencyResponseSeries(grid, nv / dv)


def discrete_freq_response(g: DiscreteTransferFunction,
                           grid: FrequencyGrid) -> FrequencyResponseSeries:
    """Evaluate num(z)/den(z) at z = exp(j*omega*ts) over the grid.

    Frequencies above the Nyquist rate are evaluated anyway, with a warning.
    """
    w = grid.omegas
    if np.any(w * g.ts > math.pi):
        warnings.warn("grid extends above the Nyquist frequency pi/ts",
                      stacklevel=2)
    z = np.exp(1j * w * g.ts)
    return _rational_response(g.num, g.den, z, grid)


def continuous_freq_response(g: ContinuousTransferFunction,
                             grid: FrequencyGrid) -> FrequencyResponseSeries:
    """Evaluate num(s)/den(s) at s = j*omega over the grid."""
    return _rational_response(g.num, g.den, 1j * grid.omegas, grid)


def is_stable_discrete(g: DiscreteTransferFunction) -> Tuple[bool, float]:
    """Whether all denominator roots lie inside the unit circle.

    Returns (stable, margin) with margin = 1 - max root modulus; a
    constant denominator has no poles and reports (True, 1.0).
    """
    den = g.den.normalized()
    if den.degree < 1:
        return True, 1.0
    margin = 1.0 - float(np.max(np.abs(poly_roots(den))))
    return margin > 0.0, margin
