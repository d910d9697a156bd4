"""Closed-form evaluation of the model function families and their Wirtinger
derivatives on the disc of radius 1/2.

Every family is built from the radial quantities

    s(r) = log(1/r^2) = -2 log r        (positive for 0 < r < 1)
    L(r) = log s(r)

and the complex monomial factors z^k, z/zbar, |z|^a.  The base family is

    z^(k+1) |z|^(1/nu) L(|z|)           ("power_log", k >= 0)

whose a = 0, k = 0 degeneration z*L is the classical log-log example
("sikorav").  Radial cutoffs multiply in:

    cutoff=True     multiplies by psi(|z|^2), a smooth step that is 1 on
                    [0, 1/16] and 0 on [1/4, inf);
    "interpolant"   multiplies the a = 0 field by phi_nu(|z|^2), which equals
                    4 t^(1/(2 nu)) below the splice interval and 1 above it,
                    so the field coincides with 4*power_log(nu) near 0 and
                    with the plain log-log field for |z| >= 4^-nu.

"mollified" is the convolution of the log-log field with the standard bump
kernel, computed by quadrature (see :func:`mollify`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

DISC_RADIUS = 0.5
# the log-log source extends to this radius, which is what makes the
# convolution with an eps < 0.1 kernel well defined up to |z| = 1/2
SOURCE_RADIUS = 0.6
MAX_MOLLIFIER_EPS = 0.1

PSI_PLATEAU_T = 1.0 / 16.0   # psi == 1 for t <= 1/16
PSI_SUPPORT_T = 0.25         # psi == 0 for t >= 1/4
_PSI_KAPPA = 1.0 / (PSI_SUPPORT_T - PSI_PLATEAU_T)

FAMILIES = ("sikorav", "power_log", "interpolant", "mollified", "custom")


class DomainError(ValueError):
    """Evaluation point outside the field's domain of definition."""


class ParameterError(ValueError):
    """Invalid field parameters (nu, k, epsilon, ...)."""


class SlopeBoundError(RuntimeError):
    """The smoothed interpolant profile violated its derivative bound."""


@dataclass(frozen=True)
class FieldSpec:
    """Symbolic descriptor of one function family.

    nu is required for power_log/interpolant, epsilon for mollified.  k is
    the extra integer power of z carried by power_log (k = 0 is the basic
    family).  cutoff multiplies any family by psi(|z|^2).  custom_jet is a
    callable z-array -> (value, dbar, dz[, dzz, dzbar, dbarbar]) used by the
    "custom" family for test injection.
    """

    family: str
    nu: int | None = None
    k: int = 0
    epsilon: float | None = None
    cutoff: bool = False
    custom_jet: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")
        if self.family in ("power_log", "interpolant"):
            if self.nu is None or int(self.nu) != self.nu or self.nu < 1:
                raise ParameterError("nu must be a positive integer")
        if self.k < 0 or int(self.k) != self.k:
            raise ParameterError("k must be a nonnegative integer")
        if self.family == "interpolant" and self.k != 0:
            raise ParameterError("interpolant is defined for k = 0 only")
        if self.family == "mollified":
            if self.epsilon is None or not (0.0 < self.epsilon < MAX_MOLLIFIER_EPS):
                raise ParameterError(
                    f"mollification radius must lie in (0, {MAX_MOLLIFIER_EPS})")
        if self.family == "custom" and self.custom_jet is None:
            raise ParameterError("custom family needs a custom_jet callable")

    @classmethod
    def sikorav(cls, cutoff=False):
        return cls("sikorav", cutoff=cutoff)

    @classmethod
    def power_log(cls, nu, k=0, cutoff=False):
        return cls("power_log", nu=nu, k=k, cutoff=cutoff)

    @classmethod
    def interpolant(cls, nu, cutoff=False):
        return cls("interpolant", nu=nu, cutoff=cutoff)

    @classmethod
    def mollified(cls, epsilon, cutoff=False):
        return cls("mollified", epsilon=epsilon, cutoff=cutoff)

    @classmethod
    def custom(cls, jet, cutoff=False):
        return cls("custom", custom_jet=jet, cutoff=cutoff)

    def describe(self) -> str:
        parts = [self.family]
        if self.nu is not None:
            parts.append(f"nu={self.nu}")
        if self.k:
            parts.append(f"k={self.k}")
        if self.epsilon is not None:
            parts.append(f"eps={self.epsilon:g}")
        if self.cutoff:
            parts.append("cutoff")
        return ",".join(parts)


@dataclass
class WirtingerValue:
    """Value and first-order Wirtinger derivatives of a field.

    dbar is the (d/dx + i d/dy)/2 derivative, dz the (d/dx - i d/dy)/2 one.
    A False defined flag marks a point where that derivative does not extend
    continuously (the numeric slot then holds 0 by convention, never NaN).
    """

    value: complex | np.ndarray
    dbar: complex | np.ndarray
    dz: complex | np.ndarray
    dbar_defined: bool | np.ndarray = True
    dz_defined: bool | np.ndarray = True


@dataclass
class WirtingerJet2:
    """Second-order Wirtinger jet: adds dzz, dzbar (mixed) and dbarbar."""

    value: complex | np.ndarray
    dbar: complex | np.ndarray
    dz: complex | np.ndarray
    dzz: complex | np.ndarray
    dzbar: complex | np.ndarray
    dbarbar: complex | np.ndarray
    second_defined: bool | np.ndarray = True


# ---------------------------------------------------------------------------
# radial building blocks
# ---------------------------------------------------------------------------

def _s_L(r):
    """s = log(1/r^2) and L = log s for r in (0, 1).

    Stable for arbitrarily small positive r: s is computed from log r
    directly (never from r**2, which could underflow), so the log-log
    singularity at 0 produces large finite numbers, not NaN.
    """
    s = -2.0 * np.log(r)
    return s, np.log(s)


def _smoothstep_jet(x):
    """C-infinity monotone step on [0,1] built from exp(-1/x).

    Returns (S, S', S'') with S(0)=0, S(1)=1 and all derivatives flat at the
    endpoints.  Vectorized; endpoint regions are handled exactly.
    """
    x = np.asarray(x, dtype=float)
    S = np.where(x >= 1.0, 1.0, 0.0)
    S1 = np.zeros_like(x)
    S2 = np.zeros_like(x)
    m = (x > 0.0) & (x < 1.0)
    if np.any(m):
        xm = x[m]
        a = np.exp(-1.0 / xm)
        b = np.exp(-1.0 / (1.0 - xm))
        ap = a / xm**2
        bp = -b / (1.0 - xm) ** 2
        app = a * (1.0 / xm**4 - 2.0 / xm**3)
        bpp = b * (1.0 / (1.0 - xm) ** 4 - 2.0 / (1.0 - xm) ** 3)
        d = a + b
        num1 = ap * b - a * bp
        S[m] = a / d
        S1[m] = num1 / d**2
        S2[m] = (app * b - a * bpp) / d**2 - 2.0 * num1 * (ap + bp) / d**3
    return S, S1, S2


def _psi_jet(t):
    """psi(t) with first and second derivatives (radial cutoff profile)."""
    t = np.asarray(t, dtype=float)
    w = np.where(t <= PSI_PLATEAU_T, 1.0, 0.0)
    w1 = np.zeros_like(t)
    w2 = np.zeros_like(t)
    m = (t > PSI_PLATEAU_T) & (t < PSI_SUPPORT_T)
    if np.any(m):
        x = (PSI_SUPPORT_T - t[m]) * _PSI_KAPPA
        S, S1, S2 = _smoothstep_jet(x)
        w[m] = S
        w1[m] = -_PSI_KAPPA * S1
        w2[m] = _PSI_KAPPA**2 * S2
    return w, w1, w2


def cutoff_psi(t):
    """The radial cutoff profile: 1 on [0, 1/16], 0 on [1/4, inf).

    Returns (value, derivative); both come from the same closed form, so the
    derivative is exactly consistent with the value.  Accepts scalars or
    arrays; t must be >= 0.
    """
    scalar = np.isscalar(t)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("cutoff argument must be nonnegative")
    w, w1, _ = _psi_jet(t)
    if scalar:
        return float(w), float(w1)
    return w, w1


def _phi_thresholds(nu):
    t_hi = 16.0 ** -nu
    t_lo = 1.0 / (16.0**nu + 1.0)
    return t_lo, t_hi


def _phi_jet(nu, t):
    """phi_nu(t) with first and second derivatives on [0, 1/2).

    Exactly 4 t^(1/(2 nu)) for t <= 1/(16^nu + 1), exactly 1 for
    t >= 16^-nu, and a smooth-step blend of the two in between.  The blend
    keeps phi' below double the plain-profile slope; this is checked once per
    nu by :func:`verify_interpolant_slope`.
    """
    t = np.asarray(t, dtype=float)
    t_lo, t_hi = _phi_thresholds(nu)
    b = 1.0 / (2.0 * nu)
    w = np.ones_like(t)
    w1 = np.zeros_like(t)
    w2 = np.zeros_like(t)
    lo = t <= t_lo
    if np.any(lo):
        tl = t[lo]
        w[lo] = 4.0 * tl**b
        pos = tl > 0.0
        w1[lo] = np.where(pos, 4.0 * b * np.where(pos, tl, 1.0) ** (b - 1.0), np.inf)
        w2[lo] = np.where(pos, 4.0 * b * (b - 1.0) * np.where(pos, tl, 1.0) ** (b - 2.0), -np.inf)
    mid = (t > t_lo) & (t < t_hi)
    if np.any(mid):
        tm = t[mid]
        width = t_hi - t_lo
        x = (tm - t_lo) / width
        S, S1, S2 = _smoothstep_jet(x)
        g = 4.0 * tm**b
        g1 = 4.0 * b * tm ** (b - 1.0)
        g2 = 4.0 * b * (b - 1.0) * tm ** (b - 2.0)
        w[mid] = g + S * (1.0 - g)
        w1[mid] = g1 * (1.0 - S) + S1 * (1.0 - g) / width
        w2[mid] = g2 * (1.0 - S) - 2.0 * g1 * S1 / width + S2 * (1.0 - g) / width**2
    return w, w1, w2


@lru_cache(maxsize=None)
def verify_interpolant_slope(nu, n_samples=10000):
    """Check 0 <= phi_nu' < (4/nu) t^(1/(2 nu)-1) on (0, 16^-nu).

    Samples the pure-profile region geometrically and the splice interval
    uniformly, n_samples points each.  Returns the largest ratio
    phi'/bound observed; raises SlopeBoundError on any violation, so an
    invalid construction can never be used silently.
    """
    t_lo, t_hi = _phi_thresholds(nu)
    ts = np.concatenate([
        np.geomspace(t_lo * 1e-12, t_lo, n_samples),
        t_lo + (t_hi - t_lo) * np.linspace(1e-9, 1.0 - 1e-9, n_samples),
    ])
    _, w1, _ = _phi_jet(nu, ts)
    bound = (4.0 / nu) * ts ** (1.0 / (2.0 * nu) - 1.0)
    if np.any(w1 < 0.0) or np.any(w1 >= bound):
        raise SlopeBoundError(f"interpolant profile slope bound violated at nu={nu}")
    return float(np.max(w1 / bound))


def phi_nu(nu, t):
    """Smoothed interpolation profile on [0, 1/2): (value, derivative).

    Coincides with 4 t^(1/(2 nu)) below the splice interval and with 1 above
    it; C^1 on (0, 1/2) with 0 <= phi' strictly below twice the plain slope.
    The right-derivative at t = 0 is unbounded and reported as +inf.
    """
    if int(nu) != nu or nu < 1:
        raise ParameterError("nu must be a positive integer")
    verify_interpolant_slope(nu)
    scalar = np.isscalar(t)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(t >= 0.5):
        raise DomainError("phi_nu argument must lie in [0, 1/2)")
    w, w1, _ = _phi_jet(nu, t)
    if scalar:
        return float(w), float(w1)
    return w, w1


# ---------------------------------------------------------------------------
# the pure power-log jet (no cutoff): f = z^(k+1) |z|^a L
# ---------------------------------------------------------------------------

def _power_log_jet(z, a, k, order):
    """Wirtinger jet of z^(k+1) |z|^a L(|z|) away from z = 0.

    a = 0 gives the plain log-log field.  The derivative formulas follow
    from dbar|z|^a = (a/2)|z|^(a-2) z, dbar L = -1/(zbar s), dbar s = -1/zbar
    and their dz analogues; each component is a product of z^m zbar^n |z|^a
    with a polynomial in L, 1/s.  Every monomial factor is assembled as
    r^power times a unit phase, so no intermediate under- or overflows for
    extreme |z|; components underflow to 0 (never NaN) exactly when the
    mathematical value does.
    """
    r = np.abs(z)
    s, L = _s_L(r)
    phase = z / r
    inv_s = 1.0 / s
    half_a = 0.5 * a

    value = r ** (k + 1 + a) * phase ** (k + 1) * L
    dz = r ** (k + a) * phase**k * ((k + 1 + half_a) * L - inv_s)
    dbar = r ** (k + a) * phase ** (k + 2) * (half_a * L - inv_s)
    if order < 2:
        return value, dbar, dz, None, None, None

    inv_s2 = inv_s * inv_s
    low = r ** (k - 1 + a)
    dzz = low * phase ** (k - 1) * (
        (k + half_a) * (k + 1 + half_a) * L - (2 * k + 1 + a) * inv_s - inv_s2)
    dzbar = low * phase ** (k + 1) * (
        half_a * (k + 1 + half_a) * L - (k + 1 + a) * inv_s - inv_s2)
    dbarbar = low * phase ** (k + 3) * (
        half_a * (half_a - 1.0) * L + (1.0 - a) * inv_s - inv_s2)
    return value, dbar, dz, dzz, dzbar, dbarbar


def _apply_radial_weight(z, t, jet, wjet, order):
    """Multiply a field jet by a radial profile w(|z|^2) (product rule)."""
    f, fb, fz, fzz, fzb, fbb = jet
    w, w1, w2 = wjet
    value = w * f
    dbar = w1 * z * f + w * fb
    dz = w1 * np.conj(z) * f + w * fz
    if order < 2:
        return value, dbar, dz, None, None, None
    zc = np.conj(z)
    dzz = w2 * zc * zc * f + 2.0 * w1 * zc * fz + w * fzz
    dzbar = w2 * t * f + w1 * (f + z * fz + zc * fb) + w * fzb
    dbarbar = w2 * z * z * f + 2.0 * w1 * z * fb + w * fbb
    return value, dbar, dz, dzz, dzbar, dbarbar


def _interpolant_jet(z, t, nu, order):
    """Jet of phi_nu(|z|^2) * (log-log field), branch-exact.

    Below the splice interval the product equals 4 * power_log(nu) and above
    it equals the plain log-log field; those regions reuse the corresponding
    closed forms verbatim so the advertised identities hold bit for bit.
    """
    verify_interpolant_slope(nu)
    t_lo, t_hi = _phi_thresholds(nu)
    out = [np.zeros_like(z) for _ in range(6)]
    lo = t <= t_lo
    hi = t >= t_hi
    mid = ~(lo | hi)
    if np.any(lo):
        parts = _power_log_jet(z[lo], 1.0 / nu, 0, order)
        for i, p in enumerate(parts):
            if p is not None:
                out[i][lo] = 4.0 * p
    if np.any(hi):
        parts = _power_log_jet(z[hi], 0.0, 0, order)
        for i, p in enumerate(parts):
            if p is not None:
                out[i][hi] = p
    if np.any(mid):
        parts = _power_log_jet(z[mid], 0.0, 0, order)
        wjet = _phi_jet(nu, t[mid])
        parts = _apply_radial_weight(z[mid], t[mid], parts, wjet, order)
        for i, p in enumerate(parts):
            if p is not None:
                out[i][mid] = p
    if order < 2:
        out[3] = out[4] = out[5] = None
    return tuple(out)


def _center_flags(spec):
    """dz defined flag at z = 0 (all families vanish there).

    The cutoff leaves a neighbourhood of 0 untouched, so the log-log field
    has no continuous dz extension with or without it.
    """
    return spec.family != "sikorav"


def _evaluate_arrays(spec, z, order):
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    limit = DISC_RADIUS
    if spec.family == "mollified":
        if np.any(r > limit):
            raise DomainError("point outside the closed disc of radius 1/2")
    elif np.any(r >= limit):
        raise DomainError("point outside the open disc of radius 1/2")

    if spec.family == "mollified":
        if order >= 2:
            raise ParameterError("second-order jet unavailable for mollified fields")
        return _mollify_arrays(spec, z)

    if spec.family == "custom":
        parts = spec.custom_jet(z)
        if len(parts) < 3 or (order >= 2 and len(parts) < 6):
            raise ParameterError("custom jet does not provide enough derivatives")
        jet = tuple(np.asarray(p, dtype=complex) for p in parts[:3])
        jet += tuple(np.asarray(p, dtype=complex) for p in parts[3:6]) if len(parts) >= 6 else (None, None, None)
    else:
        jet = [np.zeros_like(z) for _ in range(6)]
        nz = r > 0.0
        if np.any(nz):
            if spec.family == "sikorav":
                parts = _power_log_jet(z[nz], 0.0, 0, order)
            elif spec.family == "power_log":
                parts = _power_log_jet(z[nz], 1.0 / spec.nu, spec.k, order)
            else:  # interpolant
                parts = _interpolant_jet(z[nz], r[nz] ** 2, spec.nu, order)
            for i, p in enumerate(parts):
                if p is not None:
                    jet[i][nz] = p
        if order < 2:
            jet[3] = jet[4] = jet[5] = None
        jet = tuple(jet)

    if spec.cutoff:
        t = r * r
        wjet = _psi_jet(t)
        jet = _apply_radial_weight(z, t, jet, wjet, order)
    return jet


def evaluate(spec: FieldSpec, z) -> WirtingerValue:
    """Field value and first Wirtinger derivatives, closed form.

    z may be a complex scalar or an ndarray; points must satisfy |z| < 1/2
    (|z| <= 1/2 for mollified fields).  At z = 0 every family returns value
    0 with derivative slots 0; the dz_defined flag is False for the plain
    log-log field, whose dz has no continuous extension there.
    """
    scalar = np.isscalar(z) or (isinstance(z, np.ndarray) and z.ndim == 0)
    za = np.atleast_1d(np.asarray(z, dtype=complex))
    value, dbar, dz, *_ = _evaluate_arrays(spec, za, order=1)
    origin = np.abs(za) == 0.0
    dz_ok = np.where(origin, _center_flags(spec), True)
    dbar_ok = np.ones_like(dz_ok, dtype=bool)
    if scalar:
        return WirtingerValue(complex(value[0]), complex(dbar[0]), complex(dz[0]),
                              bool(dbar_ok[0]), bool(dz_ok[0]))
    return WirtingerValue(value, dbar, dz, dbar_ok, dz_ok)


def evaluate_jet2(spec: FieldSpec, z) -> WirtingerJet2:
    """Second-order Wirtinger jet for the closed-form families.

    Available for sikorav, power_log and interpolant (with or without
    cutoff) and for custom jets that supply six components.  At z = 0 the
    second derivatives extend continuously only when k >= 1; the
    second_defined flag records this.
    """
    scalar = np.isscalar(z) or (isinstance(z, np.ndarray) and z.ndim == 0)
    za = np.atleast_1d(np.asarray(z, dtype=complex))
    value, dbar, dz, dzz, dzbar, dbarbar = _evaluate_arrays(spec, za, order=2)
    origin = np.abs(za) == 0.0
    second_ok = np.where(origin, spec.family == "power_log" and spec.k >= 1, True)
    if scalar:
        return WirtingerJet2(complex(value[0]), complex(dbar[0]), complex(dz[0]),
                             complex(dzz[0]), complex(dzbar[0]), complex(dbarbar[0]),
                             bool(second_ok[0]))
    return WirtingerJet2(value, dbar, dz, dzz, dzbar, dbarbar, second_ok)


# ---------------------------------------------------------------------------
# mollification
# ---------------------------------------------------------------------------

def _gauss_panels(a, b, n_panels, order=10):
    xg, wg = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    return x, w


@lru_cache(maxsize=1)
def _mollifier_constant():
    """Normalization making the bump kernel integrate to 1 over the plane.

    2*pi*int_0^1 exp(1/(r^2-1)) r dr reduces, with u = r^2, to
    pi*int_0^1 exp(1/(u-1)) du, evaluated here by high-order panels; the
    constant is computed once and cached.
    """
    u, w = _gauss_panels(0.0, 1.0, 256, order=12)
    integral = math.pi * float(np.sum(np.exp(1.0 / (u - 1.0)) * w))
    return 1.0 / integral


def mollifier_rho(z, epsilon):
    """Rescaled standard bump: eps^-2 * C * exp(1/(|z/eps|^2 - 1)) inside
    |z| < eps, 0 outside; integrates to 1 over the plane."""
    if epsilon <= 0.0:
        raise ParameterError("epsilon must be positive")
    scalar = np.isscalar(z)
    u = np.abs(np.atleast_1d(np.asarray(z, dtype=complex))) / epsilon
    out = np.zeros_like(u)
    m = u < 1.0
    if np.any(m):
        out[m] = _mollifier_constant() * np.exp(1.0 / (u[m] ** 2 - 1.0)) / epsilon**2
    return float(out[0]) if scalar else out


def mollifier_rho_jet(z, epsilon):
    """(rho_eps, dbar rho_eps, dz rho_eps); derivatives from the chain rule
    dbar rho(u) = rho(u) * (-(|u|^2-1)^-2) * u with u = z/eps."""
    if epsilon <= 0.0:
        raise ParameterError("epsilon must be positive")
    z = np.asarray(z, dtype=complex)
    u = z / epsilon
    au2 = np.abs(u) ** 2
    rho = np.zeros(z.shape, dtype=float)
    dbar = np.zeros(z.shape, dtype=complex)
    dz = np.zeros(z.shape, dtype=complex)
    m = au2 < 1.0
    if np.any(m):
        q = 1.0 / (au2[m] - 1.0)
        core = _mollifier_constant() * np.exp(q)
        rho[m] = core / epsilon**2
        grad = core * (-q * q) / epsilon**3
        dbar[m] = grad * u[m]
        dz[m] = grad * np.conj(u[m])
    return rho, dbar, dz


def _conv_rule_source(z0, epsilon, n_panels, n_angular):
    """Quadrature nodes/weights for the convolution at z0, kernel-centered.

    Valid when the integrand is smooth on the kernel support, i.e. when the
    source field's singular point 0 is well outside |z0 - w| < eps.
    """
    rr, rw = _gauss_panels(0.0, epsilon, n_panels, order=10)
    th = np.linspace(0.0, 2.0 * np.pi, n_angular, endpoint=False)
    w_nodes = rr[:, None] * np.exp(1j * th[None, :])
    weights = (mollifier_rho(w_nodes.ravel(), epsilon).reshape(w_nodes.shape)
               * (rr * rw)[:, None] * (2.0 * np.pi / n_angular))
    return w_nodes, weights


def _conv_rule_origin(z0, epsilon, n_panels, n_angular):
    """Origin-centered rule for the convolution at z0 with |z0| <~ eps.

    Integrates rho_eps(z0 - v) g(v) over |v| < |z0| + eps in polar
    coordinates around v = 0, with a log-substituted core (r = e^-t) so the
    log-log behaviour of g near 0 is resolved; the kernel vanishes smoothly
    where |z0 - v| >= eps, so the support boundary costs no accuracy.
    """
    R = abs(z0) + epsilon
    r_split = R * 1e-3
    rr, rw = _gauss_panels(r_split, R, n_panels, order=10)
    t0 = math.log(1.0 / r_split)
    tt, tw = _gauss_panels(t0, t0 + 80.0, max(8, n_panels // 2), order=10)
    radii = np.concatenate([np.exp(-tt), rr])
    rad_w = np.concatenate([np.exp(-2.0 * tt) * tw, rr * rw])
    th = np.linspace(0.0, 2.0 * np.pi, n_angular, endpoint=False)
    v_nodes = radii[:, None] * np.exp(1j * th[None, :])
    weights = (mollifier_rho((z0 - v_nodes).ravel(), epsilon).reshape(v_nodes.shape)
               * rad_w[:, None] * (2.0 * np.pi / n_angular))
    return v_nodes, weights


def _source_jet(z):
    """Log-log field jet on the extended source disc |z| < 0.6.

    The convolution shifts arguments by up to the kernel radius, so the
    source must be evaluated slightly beyond the half-disc; s stays
    positive there, hence the closed forms remain valid.
    """
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    if np.any(r >= SOURCE_RADIUS):
        raise DomainError("source point outside the disc of radius 0.6")
    val = np.zeros_like(z)
    dbar = np.zeros_like(z)
    dz = np.zeros_like(z)
    m = r > 0.0
    if np.any(m):
        val[m], dbar[m], dz[m], *_ = _power_log_jet(z[m], 0.0, 0, 1)
    return val, dbar, dz


def _mollify_point(z0, epsilon, n_panels, n_angular):
    """(value, dbar, dz) of the mollified log-log field at one point.

    value and dbar are the convolutions of the field and of its continuous
    dbar derivative; dz is the convolution of the unbounded-but-integrable
    dz derivative, which is why the origin-centered branch substitutes
    r = e^-t near the singular preimage.
    """
    if abs(z0) > 2.5 * epsilon:
        nodes, weights = _conv_rule_source(z0, epsilon, n_panels, n_angular)
        val, dbar, dz = _source_jet(z0 - nodes)
    else:
        nodes, weights = _conv_rule_origin(z0, epsilon, n_panels, n_angular)
        val, dbar, dz = _source_jet(nodes)
    return (np.sum(val * weights), np.sum(dbar * weights), np.sum(dz * weights))


def _mollify_arrays(spec, z):
    out = [np.zeros_like(z) for _ in range(3)]
    flat = z.ravel()
    res = [_mollify_point(complex(p), spec.epsilon, 16, 128) for p in flat]
    for i in range(3):
        out[i] = np.array([r[i] for r in res]).reshape(z.shape)
    return out[0], out[1], out[2], None, None, None


def mollify(spec: FieldSpec, epsilon, z, *, n_panels=16, n_angular=128) -> WirtingerValue:
    """Convolve the log-log field with the bump kernel at radius epsilon.

    Only the plain log-log source is admissible (it extends to radius 0.6,
    which keeps the convolution defined on the closed half-disc for
    epsilon < 0.1).  Returns value, dbar = kernel * dbar-source and
    dz = kernel * dz-source, all by quadrature.
    """
    if not (0.0 < epsilon < MAX_MOLLIFIER_EPS):
        raise ParameterError(f"epsilon must lie in (0, {MAX_MOLLIFIER_EPS})")
    if spec.family != "sikorav" or spec.cutoff:
        raise ParameterError("mollification source must be the plain log-log field")
    scalar = np.isscalar(z)
    za = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(za) > DISC_RADIUS):
        raise DomainError("point outside the closed disc of radius 1/2")
    vals = [_mollify_point(complex(p), epsilon, n_panels, n_angular) for p in za.ravel()]
    value = np.array([v[0] for v in vals]).reshape(za.shape)
    dbar = np.array([v[1] for v in vals]).reshape(za.shape)
    dz = np.array([v[2] for v in vals]).reshape(za.shape)
    if scalar:
        return WirtingerValue(complex(value[0]), complex(dbar[0]), complex(dz[0]))
    return WirtingerValue(value, dbar, dz)
