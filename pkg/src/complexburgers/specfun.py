"""Complex special functions: erf, Gamma, Kummer M/U, parabolic cylinder U, Airy, arctan.

Everything is double precision.  Each public function returns a
:class:`SpecFunResult` carrying an error estimate, so callers can see when a
parameter regime has run out of digits instead of getting a silently wrong
number.

erf, Gamma and Airy values are delegated to :mod:`scipy.special`; the
confluent hypergeometric and parabolic cylinder functions are evaluated here
because scipy does not accept complex parameters for them.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sps

from .errors import BranchCutError, ConvergenceError, DomainError, RangeError

EPS = np.finfo(float).eps

ERF_MAX_ABS = 1e4
KUMMER_MAX_TERMS = 10_000
KUMMER_ASYMPTOTIC_RADIUS = 30.0
AIRY_SERIES_RADIUS = 6.0
ERF_SERIES_RADIUS = 4.0

# parabolic cylinder U: Maclaurin radius and Taylor-continuation step
PCF_SERIES_RADIUS = 3.0
PCF_STEP = 0.5
PCF_TARGET = 1e-14


class EvalMethod(str, enum.Enum):
    SERIES = "Series"
    ASYMPTOTIC = "Asymptotic"
    RECURRENCE = "Recurrence"
    INTEGRAL = "Integral"


@dataclass(frozen=True)
class SpecFunResult:
    value: complex
    est_error: float
    method: EvalMethod

    def __complex__(self):
        return complex(self.value)


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


# --------------------------------------------------------------------------- erf

def erf_c(z: complex) -> SpecFunResult:
    """Complex error function (Faddeeva-based evaluation from scipy)."""
    z = complex(z)
    if abs(z) > ERF_MAX_ABS:
        raise RangeError(f"|z| = {abs(z):.3g} exceeds {ERF_MAX_ABS:g}")
    with np.errstate(over="ignore", invalid="ignore"):
        v = complex(sps.erf(z))
    if not _finite(v):
        raise RangeError(f"erf({z}) overflows")
    method = EvalMethod.SERIES if abs(z) <= ERF_SERIES_RADIUS else EvalMethod.ASYMPTOTIC
    return SpecFunResult(v, 4 * EPS * max(1.0, abs(v)), method)


def erfcx_c(z: complex) -> complex:
    """Scaled complementary error function exp(z^2) erfc(z) (finite for Re z >= 0)."""
    with np.errstate(over="ignore", invalid="ignore"):
        return complex(sps.erfcx(complex(z)))


# ------------------------------------------------------------------------- gamma

def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == round(z.real)


def gamma_c(z: complex) -> SpecFunResult:
    """Gamma function of a complex argument."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise DomainError(f"Gamma has a pole at {z.real:g}")
    with np.errstate(over="ignore", invalid="ignore"):
        v = complex(sps.gamma(z))
    if not _finite(v):
        raise RangeError(f"Gamma({z}) overflows")
    return SpecFunResult(v, 1e-14 * abs(v), EvalMethod.SERIES)


def loggamma_c(z: complex) -> complex:
    """Principal branch of log Gamma (continuous off the negative real axis)."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise DomainError(f"log Gamma has a pole at {z.real:g}")
    return complex(sps.loggamma(z))


def rgamma_c(z: complex) -> complex:
    """1/Gamma(z), entire."""
    return complex(sps.rgamma(complex(z)))


# -------------------------------------------------------------------- Kummer M/U

def _kummer_series(a: complex, b: complex, z: complex):
    term = 1.0 + 0j
    total = 1.0 + 0j
    abs_sum = 1.0
    small = 0
    for k in range(KUMMER_MAX_TERMS):
        term *= (a + k) / (b + k) * z / (k + 1)
        total += term
        at = abs(term)
        abs_sum += at
        if at == 0.0:
            return total, abs_sum
        if at <= 1e-16 * abs(total) and k + 1 > abs(z):
            small += 1
            if small >= 2:
                return total, abs_sum
        else:
            small = 0
    raise ConvergenceError(f"M({a}, {b}, {z}) series did not converge in {KUMMER_MAX_TERMS} terms")


def kummer_m(a: complex, b: complex, z: complex) -> SpecFunResult:
    """Kummer's confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).

    Maclaurin series with term-ratio stopping; arguments with Re z < 0 go
    through Kummer's transformation so the summed terms do not alternate in
    sign along the negative real axis.
    """
    a, b, z = complex(a), complex(b), complex(z)
    if _is_nonpositive_integer(b):
        raise DomainError("M(a, b, z) needs b not a non-positive integer")
    if z.real < 0:
        s, abs_sum = _kummer_series(b - a, b, -z)
        pref = cmath.exp(z)
        v = pref * s
        err = 8 * EPS * abs(pref) * abs_sum
    else:
        v, abs_sum = _kummer_series(a, b, z)
        err = 8 * EPS * abs_sum
    return SpecFunResult(v, err, EvalMethod.SERIES)


def _kummer_u_asymptotic(a, b, z):
    # U(a,b,z) ~ z^-a sum (a)_k (a-b+1)_k / k! (-1/z)^k
    term = 1.0 + 0j
    total = 1.0 + 0j
    last = 1.0
    for k in range(200):
        nxt = term * (a + k) * (a - b + 1 + k) / (k + 1) * (-1 / z)
        if abs(nxt) >= last and k > 2:
            break
        term = nxt
        total += term
        last = abs(term)
        if last <= 1e-17 * abs(total):
            break
    pref = cmath.exp(-a * cmath.log(z))
    return pref * total, abs(pref) * last


def kummer_u(a: complex, b: complex, z: complex) -> SpecFunResult:
    """Tricomi's confluent hypergeometric function U(a, b, z), principal branch."""
    a, b, z = complex(a), complex(b), complex(z)
    if z == 0:
        raise DomainError("U(a, b, z) is singular at z = 0")
    if abs(z) >= KUMMER_ASYMPTOTIC_RADIUS:
        v, err = _kummer_u_asymptotic(a, b, z)
        if err > 1e-8 * abs(v):
            raise ConvergenceError(f"asymptotic U({a}, {b}, {z}) not accurate enough")
        return SpecFunResult(v, err, EvalMethod.ASYMPTOTIC)
    if b.imag == 0 and b.real == round(b.real):
        raise DomainError("integer b is outside the supported parameter range")
    m1 = kummer_m(a, b, z)
    m2 = kummer_m(a - b + 1, 2 - b, z)
    c1 = gamma_c(1 - b).value * rgamma_c(a - b + 1)
    c2 = gamma_c(b - 1).value * rgamma_c(a) * cmath.exp((1 - b) * cmath.log(z))
    v = c1 * m1.value + c2 * m2.value
    err = abs(c1) * m1.est_error + abs(c2) * m2.est_error + 4 * EPS * (abs(c1 * m1.value) + abs(c2 * m2.value))
    return SpecFunResult(v, err, EvalMethod.SERIES)


# ------------------------------------------------------------ parabolic cylinder

def _pcf_y1(a, z):
    pref = gamma_c(0.25 - a / 2).value / (math.sqrt(math.pi) * 2 ** (a / 2 + 0.25))
    m = kummer_m(a / 2 + 0.25, 0.5, z * z / 2)
    e = cmath.exp(-z * z / 4)
    return pref * e * m.value, abs(pref * e) * m.est_error


def _pcf_y2(a, z):
    pref = gamma_c(0.75 - a / 2).value / (math.sqrt(math.pi) * 2 ** (a / 2 - 0.25))
    m = kummer_m(a / 2 + 0.75, 1.5, z * z / 2)
    e = cmath.exp(-z * z / 4)
    return pref * z * e * m.value, abs(pref * z * e) * m.est_error


def _pcf_series(a: complex, z: complex):
    """U(a, z) = cos(pi(1/4 + a/2)) Y1 - sin(pi(1/4 + a/2)) Y2."""
    ang = math.pi * (0.25 + a / 2)
    try:
        c1, c2 = cmath.cos(ang), cmath.sin(ang)
        y1, e1 = _pcf_y1(a, z)
        y2, e2 = _pcf_y2(a, z)
        t1, t2 = c1 * y1, c2 * y2
        err = abs(c1) * e1 + abs(c2) * e2
    except DomainError:
        # a Gamma prefactor sits on a pole; the reflection-formula form is finite
        sq = math.sqrt(math.pi)
        ez = cmath.exp(-z * z / 4)
        m1 = kummer_m(a / 2 + 0.25, 0.5, z * z / 2)
        m2 = kummer_m(a / 2 + 0.75, 1.5, z * z / 2)
        t1 = sq * rgamma_c(0.75 + a / 2) / 2 ** (a / 2 + 0.25) * ez * m1.value
        t2 = sq * rgamma_c(0.25 + a / 2) * 2 ** (0.25 - a / 2) * z * ez * m2.value
        err = abs(t1) * m1.est_error / max(abs(m1.value), 1e-300) + abs(t2) * m2.est_error / max(abs(m2.value), 1e-300)
    v = t1 - t2
    err += 4 * EPS * (abs(t1) + abs(t2))
    return v, err


def _pcf_asymptotic(a: complex, z: complex):
    """U(a, z) ~ exp(-z^2/4) z^(-a-1/2) sum (-1)^s (1/2+a)_{2s} / (s! (2z^2)^s).

    Returns (value, error estimate); the error is the first omitted term.
    """
    z2 = 2 * z * z
    term = 1.0 + 0j
    total = 1.0 + 0j
    last = 1.0
    for s in range(400):
        nxt = -term * (0.5 + a + 2 * s) * (1.5 + a + 2 * s) / ((s + 1) * z2)
        an = abs(nxt)
        if an >= last and s > 1:
            break
        term = nxt
        total += term
        last = an
        if an <= 1e-18 * abs(total):
            break
    pref = cmath.exp(-z * z / 4 - (a + 0.5) * cmath.log(z))
    return pref * total, abs(pref) * last


def _weber_taylor(a: complex, z0: complex, u: complex, du: complex, z1: complex):
    """Continue a solution of u'' = (z^2/4 + a) u from z0 to z1 by Taylor steps."""
    dist = abs(z1 - z0)
    nsteps = max(1, math.ceil(dist / PCF_STEP))
    h = (z1 - z0) / nsteps
    zc = z0
    for _ in range(nsteps):
        c = [u, du]
        zz = zc * zc
        sum_u = u + du * h
        sum_du = du
        hp = 1.0 + 0j  # h^k before the update
        small = 0
        k = 0
        while True:
            cm1 = c[k - 1] if k >= 1 else 0.0
            cm2 = c[k - 2] if k >= 2 else 0.0
            ck2 = (a * c[k] + 0.25 * (zz * c[k] + 2 * zc * cm1 + cm2)) / ((k + 2) * (k + 1))
            c.append(ck2)
            hk1 = hp * h  # h^(k+1)
            sum_du += (k + 2) * ck2 * hk1
            sum_u += ck2 * hk1 * h
            hp = hk1
            mag = abs(ck2 * hk1 * h)
            if mag <= 1e-17 * (abs(sum_u) + 1e-300):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            k += 1
            if k > 400:
                raise ConvergenceError("Taylor continuation failed to converge")
        u, du = sum_u, sum_du
        zc = zc + h
    return u, du


def _pcf_direct(a: complex, z: complex):
    """U(a, z) for |arg z| <= pi/2 (value, error, method)."""
    r = abs(z)
    if r <= PCF_SERIES_RADIUS:
        v, err = _pcf_series(a, z)
        return v, err, EvalMethod.SERIES
    v, err = _pcf_asymptotic(a, z)
    if err <= PCF_TARGET * abs(v):
        return v, err, EvalMethod.ASYMPTOTIC
    direction = z / r
    if abs(cmath.phase(z)) < math.pi / 4:
        # U is recessive along this ray: integrate inward from where the
        # asymptotic expansion is accurate
        R = r
        while True:
            R *= 1.25
            zs = direction * R
            us, es = _pcf_asymptotic(a, zs)
            if es <= 1e-16 * abs(us) or R > 60 + 4 * abs(a):
                break
        um1, _ = _pcf_asymptotic(a - 1, zs)
    else:
        # U is dominant along this ray: integrate outward from the series disc
        zs = direction * PCF_SERIES_RADIUS
        us, es = _pcf_series(a, zs)
        um1, _ = _pcf_series(a - 1, zs)
    dus = zs / 2 * us - um1
    v, _ = _weber_taylor(a, zs, us, dus, z)
    err = max(es / max(abs(us), 1e-300), 1e-15) * abs(v) * 10
    return v, err, EvalMethod.RECURRENCE


def _pcf_value(a: complex, z: complex):
    if abs(z) <= PCF_SERIES_RADIUS or abs(cmath.phase(z)) <= math.pi / 2:
        if abs(z) <= PCF_SERIES_RADIUS:
            v, err = _pcf_series(a, z)
            return v, err, EvalMethod.SERIES
        return _pcf_direct(a, z)
    # |arg z| > pi/2: write z = -w and use the connection formula with U(-a, +-iw)
    w = -z
    phase = cmath.exp(-1j * math.pi * (a / 2 - 0.25))
    rg = rgamma_c(0.5 + a)
    s2p = math.sqrt(2 * math.pi)
    if w.imag <= 0:
        u1, e1, m1 = _pcf_direct(-a, 1j * w)
        u2, e2, m2 = _pcf_direct(a, w)
        t1, t2 = phase * s2p * u1 * rg, phase * phase * u2
    else:
        u1, e1, m1 = _pcf_direct(-a, -1j * w)
        u2, e2, m2 = _pcf_direct(a, w)
        t1, t2 = s2p * u1 * rg / phase, u2 / (phase * phase)
    v = t1 - t2
    err = abs(t1) * e1 / max(abs(u1), 1e-300) + abs(t2) * e2 / max(abs(u2), 1e-300) + 4 * EPS * (abs(t1) + abs(t2))
    method = m1 if m1 is m2 else EvalMethod.RECURRENCE
    return v, err, method


def pcf_u(a: complex, z: complex) -> SpecFunResult:
    """Parabolic cylinder function U(a, z) (Whittaker's D_{-a-1/2}(z)).

    Near the origin it is assembled from the even/odd solutions Y1, Y2 built
    on 1F1; far out it uses the large-|z| expansion, continued into the left
    half-plane with the U(-a, +-iz) connection formula.  In the annulus where
    neither is accurate a Taylor-series integration of Weber's equation links
    the two regions along a ray, in whichever direction U grows.
    """
    a, z = complex(a), complex(z)
    v, err, method = _pcf_value(a, z)
    if not _finite(v):
        raise RangeError(f"U({a}, {z}) overflows")
    return SpecFunResult(v, err, method)


def pcf_u_ratio(a: complex, z: complex):
    """U(a, z) / U(a-1, z) with a combined relative error estimate."""
    n = pcf_u(a, z)
    d = pcf_u(a - 1, z)
    if d.value == 0:
        raise DomainError("U(a-1, z) vanishes")
    rel = n.est_error / max(abs(n.value), 1e-300) + d.est_error / abs(d.value)
    return n.value / d.value, rel


# -------------------------------------------------------------------------- Airy

def airy_ai(z: complex) -> SpecFunResult:
    """Ai(z)."""
    z = complex(z)
    ai, _, _, _ = sps.airy(z)
    method = EvalMethod.SERIES if abs(z) <= AIRY_SERIES_RADIUS else EvalMethod.ASYMPTOTIC
    return SpecFunResult(complex(ai), 1e-14 * max(abs(ai), 1e-300), method)


def airy_ai_prime(z: complex) -> SpecFunResult:
    """Ai'(z)."""
    z = complex(z)
    _, aip, _, _ = sps.airy(z)
    method = EvalMethod.SERIES if abs(z) <= AIRY_SERIES_RADIUS else EvalMethod.ASYMPTOTIC
    return SpecFunResult(complex(aip), 1e-14 * max(abs(aip), 1e-300), method)


def airy_ai_zeros(k: int) -> list[float]:
    """First ``k`` zeros of Ai on the negative real axis."""
    if int(k) != k or not 1 <= k <= 100:
        raise DomainError("k must be an integer in [1, 100]")
    zeros = []
    for j in range(1, int(k) + 1):
        x = -(3 * math.pi * (4 * j - 1) / 8) ** (2 / 3)
        for _ in range(50):
            ai, aip, _, _ = sps.airy(x)
            dx = ai / aip
            x -= dx
            if abs(dx) < 1e-15 * max(1.0, abs(x)):
                break
        else:
            raise ConvergenceError(f"Newton failed for Airy zero {j}")
        zeros.append(float(x))
    return zeros


# ------------------------------------------------------------------------ arctan

def on_arctan_cut(z: complex) -> bool:
    z = complex(z)
    return z.real == 0 and abs(z.imag) >= 1


def arctan_c(z: complex) -> SpecFunResult:
    """Principal arctan, (1/2i) log((1+iz)/(1-iz)), cuts on the imaginary axis beyond +-i."""
    z = complex(z)
    if on_arctan_cut(z):
        raise BranchCutError(f"{z} lies on the arctan branch cut")
    v = cmath.log((1 + 1j * z) / (1 - 1j * z)) / 2j
    return SpecFunResult(v, 4 * EPS * max(1.0, abs(v)), EvalMethod.SERIES)
