"""Jordan curve geometry via arc-length parameterization.

A CurveSpec (circle / ellipse / polar graph / position Fourier series /
point samples) is compiled into a JordanCurve: a positively oriented,
arc-length parameterized closed curve exposing the position map g, the unit
tangent g', a continuous tangent angle, and a grid estimator for the modulus
of continuity of g'.

The native parameter is always theta in [0, 2pi).  Cumulative arc length is
integrated spectrally (term-by-term antiderivative of the Fourier series of
the parametric speed), inverted with a monotone PCHIP table and polished by
Newton steps, so g(s) is accurate to ~1e-12 for analytic curve kinds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator
from shapely.geometry import LinearRing

from .errors import DegenerateTangent, OutOfRange, SelfIntersecting, TooFewSamples

TWO_PI = 2.0 * math.pi

CURVE_KINDS = ("circle", "ellipse", "polar-graph", "fourier-coefficients", "sample-table")


@dataclass(frozen=True)
class CurveSpec:
    """Declarative description of a closed curve.

    parameters, by kind:
      circle               [radius]
      ellipse              [semi_axis_x, semi_axis_y]
      polar-graph          [a0, a1, b1, a2, b2, ...] for r(t) = a0 + sum a_k cos kt + b_k sin kt
      fourier-coefficients [c0_re, c0_im, p1_re, p1_im, q1_re, q1_im, ...]
                           for z(t) = c0 + sum_k (p_k e^{ikt} + q_k e^{-ikt})
      sample-table         [x0, y0, x1, y1, ...] closed polyline samples (periodic cubic spline)

    alpha / holder_c may be supplied for analytic specs; otherwise alpha
    defaults to 1 with holder_c estimated from the curvature (or fitted by
    log-log regression for sample tables).  c2 declares curvature continuity
    for consumers that require it; it is a recorded flag, not verified.
    """

    kind: str
    parameters: tuple[float, ...]
    alpha: float | None = None
    holder_c: float | None = None
    c2: bool = True

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise OutOfRange(f"unknown curve kind {self.kind!r}; expected one of {CURVE_KINDS}")
        object.__setattr__(self, "parameters", tuple(float(p) for p in self.parameters))
        if self.alpha is not None and not (0.0 < self.alpha <= 1.0):
            raise OutOfRange("alpha must lie in (0, 1]")


class _NativeParam:
    """Position/derivative callables of the native parameterization."""

    def __init__(self, pos, d1, d2):
        self.pos = pos
        self.d1 = d1
        self.d2 = d2

    def reversed(self) -> "_NativeParam":
        pos, d1, d2 = self.pos, self.d1, self.d2
        return _NativeParam(
            lambda t: pos(TWO_PI - np.asarray(t, dtype=float)),
            lambda t: -d1(TWO_PI - np.asarray(t, dtype=float)),
            lambda t: d2(TWO_PI - np.asarray(t, dtype=float)),
        )


def _trig_series(params: Sequence[float]):
    """(a0, a[], b[]) from the interleaved polar-graph parameter list."""
    a0 = params[0]
    rest = list(params[1:])
    if len(rest) % 2 == 1:
        rest.append(0.0)
    a = np.asarray(rest[0::2], dtype=float)
    b = np.asarray(rest[1::2], dtype=float)
    return a0, a, b


def _native_param(spec: CurveSpec) -> _NativeParam:
    p = spec.parameters
    if spec.kind == "circle":
        if len(p) != 1 or p[0] <= 0:
            raise OutOfRange("circle expects [radius] with radius > 0")
        r = p[0]
        return _NativeParam(
            lambda t: r * np.exp(1j * np.asarray(t, dtype=float)),
            lambda t: 1j * r * np.exp(1j * np.asarray(t, dtype=float)),
            lambda t: -r * np.exp(1j * np.asarray(t, dtype=float)),
        )
    if spec.kind == "ellipse":
        if len(p) != 2 or min(p) <= 0:
            raise OutOfRange("ellipse expects [a, b] with a, b > 0")
        a, b = p
        return _NativeParam(
            lambda t: a * np.cos(t) + 1j * b * np.sin(t),
            lambda t: -a * np.sin(t) + 1j * b * np.cos(t),
            lambda t: -a * np.cos(t) - 1j * b * np.sin(t),
        )
    if spec.kind == "polar-graph":
        if not p:
            raise OutOfRange("polar-graph expects [a0, a1, b1, ...]")
        a0, ac, bs = _trig_series(p)
        ks = np.arange(1, len(ac) + 1, dtype=float)

        def radius(t, order=0):
            t = np.asarray(t, dtype=float)
            ang = np.multiply.outer(t, ks)
            if order == 0:
                return a0 + np.cos(ang) @ ac + np.sin(ang) @ bs
            if order == 1:
                return -np.sin(ang) @ (ks * ac) + np.cos(ang) @ (ks * bs)
            return -np.cos(ang) @ (ks * ks * ac) - np.sin(ang) @ (ks * ks * bs)

        def pos(t):
            t = np.asarray(t, dtype=float)
            return radius(t) * np.exp(1j * t)

        def d1(t):
            t = np.asarray(t, dtype=float)
            return (radius(t, 1) + 1j * radius(t)) * np.exp(1j * t)

        def d2(t):
            t = np.asarray(t, dtype=float)
            return (radius(t, 2) + 2j * radius(t, 1) - radius(t)) * np.exp(1j * t)

        return _NativeParam(pos, d1, d2)
    if spec.kind == "fourier-coefficients":
        if len(p) < 6 or (len(p) - 2) % 4 != 0:
            raise OutOfRange(
                "fourier-coefficients expects [c0_re, c0_im] + 4 reals (p_re, p_im, q_re, q_im) per mode"
            )
        c0 = complex(p[0], p[1])
        body = np.asarray(p[2:], dtype=float).reshape(-1, 4)
        pk = body[:, 0] + 1j * body[:, 1]
        qk = body[:, 2] + 1j * body[:, 3]
        ks = np.arange(1, len(pk) + 1, dtype=float)

        def eval_series(t, order):
            t = np.asarray(t, dtype=float)
            e = np.exp(1j * np.multiply.outer(t, ks))
            out = e @ (((1j * ks) ** order) * pk) + np.conj(e) @ (((-1j * ks) ** order) * qk)
            return out + (c0 if order == 0 else 0.0)

        return _NativeParam(
            lambda t: eval_series(t, 0),
            lambda t: eval_series(t, 1),
            lambda t: eval_series(t, 2),
        )
    # sample-table
    if len(p) < 8 or len(p) % 2 != 0:
        raise OutOfRange("sample-table expects a flat [x0, y0, ...] list with >= 4 points")
    pts = np.asarray(p, dtype=float).reshape(-1, 2)
    if np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    n = len(pts)
    th = np.linspace(0.0, TWO_PI, n + 1)
    closed = np.vstack([pts, pts[:1]])
    sx = CubicSpline(th, closed[:, 0], bc_type="periodic", extrapolate="periodic")
    sy = CubicSpline(th, closed[:, 1], bc_type="periodic", extrapolate="periodic")
    dx, dy = sx.derivative(), sy.derivative()
    dx2, dy2 = sx.derivative(2), sy.derivative(2)
    return _NativeParam(
        lambda t: sx(t) + 1j * sy(t),
        lambda t: dx(t) + 1j * dy(t),
        lambda t: dx2(t) + 1j * dy2(t),
    )


def _check_simple(native: _NativeParam, n_vertices: int):
    """Self-intersection check on a dense polygonal proxy of the trace."""
    t = np.linspace(0.0, TWO_PI, n_vertices, endpoint=False)
    z = native.pos(t)
    ring = LinearRing(np.column_stack([z.real, z.imag]))
    if not ring.is_valid:
        raise SelfIntersecting("curve trace self-intersects on the polygonal proxy")


class JordanCurve:
    """Arc-length parameterized, positively oriented smooth Jordan curve."""

    def __init__(self, spec: CurveSpec, native: _NativeParam, n_samples: int, dense: int):
        self.spec = spec
        self.n_samples = n_samples
        self._native = native
        self._dense = dense

        theta = np.linspace(0.0, TWO_PI, dense, endpoint=False)
        d1 = native.d1(theta)
        speed = np.abs(d1)
        if speed.min() < 1e-12:
            raise DegenerateTangent(f"min |gamma'| = {speed.min():.3e} below 1e-12")

        # Spectral antiderivative of the speed: length(theta) is evaluable
        # anywhere, which lets Newton polish the arc-length inversion.
        coeffs = np.fft.rfft(speed) / dense
        self._a0 = coeffs[0].real
        amps = np.abs(coeffs[1:])
        keep = amps > 1e-16 * max(1.0, np.max(amps, initial=0.0), abs(self._a0))
        ks = np.arange(1, len(coeffs), dtype=float)[keep]
        ck = coeffs[1:][keep]
        self._ks = ks
        self._cos_amp = 2.0 * ck.real
        self._sin_amp = -2.0 * ck.imag
        self.length = float(self._a0 * TWO_PI)

        ltab = self._length_at(theta)
        self._theta_dense = np.append(theta, TWO_PI)
        self._ltab = np.append(ltab, self.length)
        self._inverse = PchipInterpolator(self._ltab, self._theta_dense)

        beta_raw = np.unwrap(np.angle(d1 / speed))
        self._beta_dense = np.append(beta_raw, beta_raw[0] + TWO_PI)

        self.alpha = spec.alpha if spec.alpha is not None else 1.0
        if spec.holder_c is not None:
            self.holder_c = spec.holder_c
        elif spec.kind == "sample-table" and spec.alpha is None:
            self.alpha, self.holder_c = self._fit_holder()
        else:
            self.holder_c = float(np.max(np.abs(self.curvature_native(theta)))) + 1e-9

    # -- native-parameter helpers -------------------------------------------------

    def curvature_native(self, theta):
        d1 = self._native.d1(theta)
        d2 = self._native.d2(theta)
        return np.imag(np.conj(d1) * d2) / np.abs(d1) ** 3

    def _length_at(self, theta):
        """Arc length from 0 to theta (valid for any real theta)."""
        th = np.asarray(theta, dtype=float)
        ang = np.multiply.outer(th, self._ks)
        periodic = np.sin(ang) @ (self._cos_amp / self._ks) - (np.cos(ang) - 1.0) @ (
            self._sin_amp / self._ks
        )
        return self._a0 * th + periodic

    def theta_of_s(self, s):
        """Invert the cumulative length: monotone PCHIP seed + Newton polish."""
        s = np.asarray(s, dtype=float)
        wraps = np.floor(s / self.length)
        rem = s - wraps * self.length
        th = self._inverse(rem)
        for _ in range(3):
            th = th - (self._length_at(th) - rem) / np.abs(self._native.d1(th))
        return th + wraps * TWO_PI

    # -- arc-length interface ------------------------------------------------------

    def g(self, s):
        return self._native.pos(self.theta_of_s(s) % TWO_PI)

    def gprime(self, s):
        d1 = self._native.d1(self.theta_of_s(s) % TWO_PI)
        return d1 / np.abs(d1)

    def curvature(self, s):
        return self.curvature_native(self.theta_of_s(s) % TWO_PI)

    def tangent_angle(self, s):
        """Continuous tangent angle; increases by 2pi per positive traversal."""
        s = np.asarray(s, dtype=float)
        wraps = np.floor(s / self.length)
        rem = s - wraps * self.length
        approx = np.interp(rem, self._ltab, self._beta_dense)
        raw = np.angle(self.gprime(rem))
        beta = approx + np.mod(raw - approx + math.pi, TWO_PI) - math.pi
        return beta + TWO_PI * wraps

    def winding_number(self, z0: complex | None = None) -> int:
        if z0 is None:
            t = np.linspace(0.0, TWO_PI, 1024, endpoint=False)
            z0 = complex(np.mean(self._native.pos(t)))
        t = np.linspace(0.0, TWO_PI, 4097)
        arg = np.unwrap(np.angle(self._native.pos(t) - z0))
        return int(round((arg[-1] - arg[0]) / TWO_PI))

    def arc_samples(self, n: int | None = None) -> np.ndarray:
        n = n or self.n_samples
        return np.arange(n) * (self.length / n)

    # -- modulus of continuity of the unit tangent ---------------------------------

    @cached_property
    def _omega_table(self):
        """Per-lag sup of |g'(x+lag) - g'(x)| on a uniform grid, cumulative-maxed.

        Index j holds the estimate for lag j*h with h = length/m; entries are
        nondecreasing.  Lags only go to length/2: the sup over |x-y| <= rho is
        attained at periodic distance <= length/2.
        """
        m = min(self.n_samples, 2048)
        tang = self.gprime(np.arange(m) * (self.length / m))
        half = m // 2
        lag_max = np.empty(half + 1)
        lag_max[0] = 0.0
        for j in range(1, half + 1):
            lag_max[j] = np.max(np.abs(np.roll(tang, -j) - tang))
        return np.maximum.accumulate(lag_max), self.length / m

    def modulus_of_continuity(self, rho: float) -> float:
        if rho < 0 or rho > self.length:
            raise OutOfRange(f"rho = {rho} outside [0, length]")
        table, h = self._omega_table
        u = min(rho, self.length / 2.0)
        x = u / h
        j = min(int(x), len(table) - 1)
        if j >= len(table) - 1:
            return float(table[-1])
        return float(table[j] + (x - j) * (table[j + 1] - table[j]))

    def omega_majorant_integral(self, u: float) -> float:
        """Integral over [0, u] of the right-continuous step majorant of the
        lag table.  Overestimates the integral of the (nondecreasing) modulus
        estimator, keeping the chord-kernel bound check one-sided."""
        table, h = self._omega_table
        u = float(min(max(u, 0.0), self.length / 2.0))
        csum = getattr(self, "_omega_csum", None)
        if csum is None:
            csum = np.concatenate([[0.0], np.cumsum(table[1:]) * h])
            self._omega_csum = csum
        j = min(int(u / h), len(table) - 1)
        partial = csum[j]
        step = table[min(j + 1, len(table) - 1)]
        return float(partial + (u - j * h) * step)

    def _fit_holder(self):
        table, h = self._omega_table
        rhos = np.arange(1, len(table)) * h
        vals = table[1:]
        mask = (vals > 1e-14) & (rhos < self.length / 4)
        if mask.sum() < 4:
            return 1.0, float(np.max(vals) / max(h, 1e-12)) + 1e-9
        slope, intercept = np.polyfit(np.log(rhos[mask]), np.log(vals[mask]), 1)
        alpha = float(min(1.0, max(slope, 0.05)))
        c = float(np.exp(intercept))
        # enforce the envelope on the grid
        c = max(c, float(np.max(vals / rhos**alpha))) * (1 + 1e-9)
        return alpha, c


def build_curve(spec: CurveSpec, n_samples: int = 1024) -> JordanCurve:
    """Compile a CurveSpec into an arc-length parameterized JordanCurve.

    Raises TooFewSamples (n_samples < 64), SelfIntersecting, DegenerateTangent.
    Orientation is normalized to positive (winding +1).
    """
    if n_samples < 64:
        raise TooFewSamples(f"n_samples = {n_samples} < 64")
    native = _native_param(spec)

    probe = np.linspace(0.0, TWO_PI, 512, endpoint=False)
    z = native.pos(probe)
    area = 0.5 * np.sum(np.imag(np.conj(z) * native.d1(probe))) * (TWO_PI / 512)
    if not np.isfinite(area) or abs(area) < 1e-14:
        raise DegenerateTangent("curve encloses no area")
    if area < 0:
        native = native.reversed()

    _check_simple(native, 4 * n_samples)

    dense = 1
    while dense < max(4 * n_samples, 2048):
        dense *= 2
    return JordanCurve(spec, native, n_samples, dense)


def convexity_certificate(curve: JordanCurve, grid: int = 512):
    """Evaluate the chord-projection kernel on a grid x grid lattice.

    Returns (is_nonnegative, min_value): a convex trace keeps the kernel
    nonnegative everywhere, so min >= -1e-12 certifies convexity at grid
    resolution.
    """
    from .analysis import kernel_matrix

    s = curve.arc_samples(grid)
    kmin = float(np.min(kernel_matrix(curve, s)))
    return kmin >= -1e-12, kmin
