"""Chromatic roots, holomorphic moments and entropy per vertex."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import mpmath
import numpy as np

from .chromatic import chromatic_coefficients, chromatic_dc
from .graph import SimpleGraph
from .poly import IntPolynomial, squarefree_decomposition

SOKAL_C = 7.963907
DEFAULT_MAX_DEGREE = 64


class NonConvergence(ArithmeticError):
    pass


class ChromaticRootError(ValueError):
    """Logarithm requested at a chromatic root."""


@dataclass
class ChromaticMeasure:
    roots: list[tuple[complex, int]]
    total: int = field(default=0)

    def __post_init__(self):
        if not self.total:
            self.total = sum(m for _, m in self.roots)

    def flat(self) -> list[complex]:
        return [z for z, m in self.roots for _ in range(m)]

    def max_modulus(self) -> float:
        return max((abs(z) for z, _ in self.roots), default=0.0)

    def to_csv(self) -> str:
        lines = ["re,im,multiplicity"]
        lines.extend(f"{z.real:.15g},{z.imag:.15g},{m}" for z, m in self.roots)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SokalDisc:
    d: int
    C: float = SOKAL_C

    @property
    def radius(self) -> float:
        return self.C * self.d


def find_roots(p: IntPolynomial, tol: float = 1e-12, max_sweeps: int = 1000,
               max_degree: int = DEFAULT_MAX_DEGREE, polish_dps: int = 40) -> ChromaticMeasure:
    """All complex roots of ``p`` with multiplicities.

    The factor z^m is split off exactly and the rest is broken into
    squarefree parts over Q: small integer roots by exact division, then a
    modular squarefree test, with Yun's algorithm as fallback. Each part is
    solved by Aberth-Ehrlich in double precision with a Newton polish at
    ``polish_dps`` digits; mpmath Aberth takes over when that result fails
    the residual check.
    Multiplicities are therefore exact.
    """
    if p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if p.degree > max_degree:
        raise ValueError(f"degree {p.degree} exceeds the root-finding cap {max_degree}")
    zeros = p.trailing_zeros()
    roots: list[tuple[complex, int]] = []
    if zeros:
        roots.append((0j, zeros))
    rest = p.shift_down(zeros)
    for factor, mult in squarefree_decomposition(rest):
        for z in _solve_squarefree(factor, tol, max_sweeps, polish_dps):
            roots.append((z, mult))
    roots.sort(key=lambda r: (round(r[0].real, 9), round(r[0].imag, 9)))
    measure = ChromaticMeasure(roots, p.degree)
    _check_residuals(p, measure, tol)
    return measure


def _solve_squarefree(f: IntPolynomial, tol, max_sweeps, polish_dps) -> list[complex]:
    d = f.degree
    if d == 1:
        return [complex(Fraction(-f[0], f[1]))]
    guess = None
    try:
        z = _polish(f, _aberth(f, tol, max_sweeps), polish_dps)
        if _acceptable(f, z, polish_dps):
            return _conjugate_close(_to_complex(z), tol)
        guess = z
    except NonConvergence:
        pass
    # double precision cannot resolve this coefficient vector; iterate in mpmath,
    # each level warm-started from the previous estimate
    # evaluating near the roots cancels about as many digits as the coefficients carry
    digits = len(str(max(abs(c) for c in f.coeffs)))
    levels = [dps for dps in (30, 60, 120, 240) if dps >= 15 + digits] or [240]
    for dps in levels:
        try:
            start = _aberth_mp(f, dps, max_sweeps, guess)
        except NonConvergence:
            continue
        guess = start
        work = max(polish_dps, 2 * dps)
        z = _polish(f, start, work)
        if _acceptable(f, z, work):
            return _conjugate_close(_to_complex(z), tol)
    raise NonConvergence(f"could not isolate the roots of a degree-{d} factor")


def _to_complex(z) -> np.ndarray:
    return np.array([complex(w) for w in z])


def _acceptable(f: IntPolynomial, z, dps: int) -> bool:
    """Residuals at ``dps`` digits are tiny, no two roots coincide (f is squarefree)
    and the roots sum to -a_(d-1)/a_d."""
    coeffs = list(reversed(f.coeffs))
    with mpmath.workdps(dps):
        if not all(mpmath.isfinite(w) for w in z):
            return False
        for w in z:
            val = abs(mpmath.polyval(coeffs, w))
            size = mpmath.polyval([abs(c) for c in coeffs], abs(w))
            if val > size * mpmath.mpf(10) ** (-(dps // 2)):
                return False
        target = mpmath.mpf(-f[f.degree - 1]) / f[f.degree]
        if abs(mpmath.fsum(z) - target) > mpmath.mpf(10) ** (-(dps // 3)) * max(1, abs(target)):
            return False
    zc = _to_complex(z)
    scale = max(1.0, float(np.max(np.abs(zc))))
    diff = np.abs(zc[:, None] - zc[None, :])
    np.fill_diagonal(diff, np.inf)
    return diff.min() > 1e-9 * scale


def _aberth(f: IntPolynomial, tol, max_sweeps) -> np.ndarray:
    lead = f[f.degree]
    c = np.array([x / lead for x in reversed(f.coeffs)], dtype=complex)  # highest degree first
    dc = np.polyder(c)
    absc = np.abs(c)
    d = f.degree
    radius = _fujiwara_bound(f)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4142135623730951))
    active = np.ones(d, dtype=bool)
    eps = np.finfo(float).eps
    for _ in range(max_sweeps):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        # |p(z)| under the Horner rounding bound: the root is as good as double allows
        noise = 4 * d * eps * np.polyval(absc, np.abs(z))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1 / diff
            np.fill_diagonal(inv, 0)
            s = inv.sum(axis=1)
            step = ratio / (1 - ratio * s)
        step = np.where(np.isfinite(step) & active, step, 0)
        z = z - step
        small = np.abs(step) <= tol * np.maximum(1, np.abs(z))
        active &= ~(small | (np.abs(pz) <= noise))
        if not active.any():
            return z
    raise NonConvergence(f"Aberth iteration did not converge in {max_sweeps} sweeps (degree {d})")


def _aberth_mp(f: IntPolynomial, dps: int, max_sweeps: int, start=None) -> list:
    d = f.degree
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c) for c in reversed(f.coeffs)]
        absc = [abs(c) for c in coeffs]
        dcoeffs = [mpmath.mpf(c) for c in reversed(f.derivative().coeffs)]
        radius = _fujiwara_bound(f)
        if start is not None and len(start) == d and all(mpmath.isfinite(w) for w in start):
            z = [mpmath.mpc(w) for w in start]
        else:
            z = [radius * mpmath.expj(2 * mpmath.pi * k / d + mpmath.mpf("0.4142135623730951")) for k in range(d)]
        eps = mpmath.mpf(10) ** (-(dps - 8))
        active = [True] * d
        for _ in range(max_sweeps):
            moved = False
            for k in range(d):
                if not active[k]:
                    continue
                pz = mpmath.polyval(coeffs, z[k])
                dpz = mpmath.polyval(dcoeffs, z[k])
                noise = 4 * d * mpmath.mpf(10) ** (-dps) * mpmath.polyval(absc, abs(z[k]))
                if abs(pz) <= noise or dpz == 0:
                    active[k] = False
                    continue
                ratio = pz / dpz
                s = mpmath.fsum(1 / (z[k] - z[j]) for j in range(d) if j != k)
                step = ratio / (1 - ratio * s)
                z[k] -= step
                if abs(step) <= eps * max(1, abs(z[k])):
                    active[k] = False
                moved = True
            if not moved:
                return z
    raise NonConvergence(f"extended-precision Aberth did not converge at {dps} digits")


def _fujiwara_bound(f: IntPolynomial) -> float:
    """2 max |a_(n-k)/a_n|^(1/k) (last term halved): an upper bound on root moduli."""
    n = f.degree
    lead = abs(f[n])
    best = 0.0
    for k in range(1, n + 1):
        a = abs(f[n - k])
        if a:
            if k == n:
                a /= 2
            best = max(best, math.exp((math.log(a) - math.log(lead)) / k))
    return 2 * best if best else 1.0


def _polish(f: IntPolynomial, z, dps: int) -> list:
    """Newton steps at ``dps`` digits; returns mpc values."""
    coeffs = list(reversed(f.coeffs))
    dcoeffs = list(reversed(f.derivative().coeffs))
    out = []
    with mpmath.workdps(dps):
        for root in z:
            w = mpmath.mpc(root)
            for _ in range(12):
                fw = mpmath.polyval(coeffs, w)
                dw = mpmath.polyval(dcoeffs, w)
                if dw == 0:
                    break
                delta = fw / dw
                w -= delta
                if abs(delta) <= mpmath.mpf(10) ** (-(dps * 3 // 4)) * max(1, abs(w)):
                    break
            out.append(w)
    return out


def _conjugate_close(z: np.ndarray, tol: float) -> list[complex]:
    """Real-coefficient input: snap near-real roots and pair the rest exactly."""
    scale = max(1.0, float(np.max(np.abs(z))))
    snap = max(1e-10, 100 * tol) * scale
    real = [complex(x.real, 0) for x in z if abs(x.imag) <= snap]
    upper = sorted((x for x in z if x.imag > snap), key=lambda x: (x.real, x.imag))
    lower = [x for x in z if x.imag < -snap]
    if len(upper) != len(lower):
        raise NonConvergence("roots are not closed under conjugation")
    out = real
    for x in upper:
        j = min(range(len(lower)), key=lambda k: abs(lower[k] - x.conjugate()))
        y = lower.pop(j)
        mid = (x + y.conjugate()) / 2
        out.extend([complex(mid), complex(mid).conjugate()])
    return out


def _check_residuals(p: IntPolynomial, m: ChromaticMeasure, tol: float):
    n = p.degree
    e1 = -p[n - 1] / p[n]
    s = sum(z * k for z, k in m.roots)
    if abs(s - e1) > max(1e-9, 1e3 * tol) * max(1, abs(e1)) * n:
        raise NonConvergence(f"root sum {s} disagrees with -a_(n-1)/a_n = {e1}")


def chromatic_measure(g: SimpleGraph, **kwargs) -> ChromaticMeasure:
    return find_roots(chromatic_dc(g), **kwargs)


def holomorphic_moment(m: ChromaticMeasure, k: int) -> complex:
    """``(1/total) * sum of lambda^k`` over the roots with multiplicity."""
    if k == 0:
        return 1 + 0j
    return sum(mult * z ** k for z, mult in m.roots) / m.total


def power_sums_newton(e: Sequence[int], kmax: int) -> list[int]:
    """Exact power sums p_1..p_kmax of the roots from the chromatic coefficients e_0, e_1, ..."""
    if not e or e[0] != 1:
        raise ValueError("e_0 must be 1")

    def ek(k):
        return e[k] if k < len(e) else 0

    p: list[int] = []
    for k in range(1, kmax + 1):
        val = (-1) ** (k - 1) * k * ek(k)
        for i in range(1, k):
            val += (-1) ** (k - i - 1) * p[i - 1] * ek(k - i)
        p.append(val)
    return p


def power_sums(p: IntPolynomial, kmax: int) -> list[int]:
    return power_sums_newton(chromatic_coefficients(p), kmax)


def _mp_eval(p: IntPolynomial, z):
    """Evaluate with enough digits that cancellation between terms is resolved."""
    coeffs = list(reversed(p.coeffs))
    dps = 30
    for _ in range(8):
        with mpmath.workdps(dps):
            w = mpmath.mpmathify(z)
            val = mpmath.polyval(coeffs, w)
            size = mpmath.polyval([abs(c) for c in coeffs], abs(w))
            if val == 0:
                if dps > 2000:
                    return val
                dps *= 2
                continue
            need = int(mpmath.log10(size / abs(val))) + 25 if size else 25
            if need <= dps:
                return val
            dps = need + 10
    return val


def log_evaluate(p: IntPolynomial, z) -> complex:
    """Principal ln p(z); exact evaluation for rational z."""
    if isinstance(z, (int, Fraction)) or isinstance(z, Rational):
        v = p(Fraction(z))
        if v == 0:
            raise ChromaticRootError(f"{z} is a root")
        mag = math.log(abs(v.numerator)) - math.log(v.denominator)
        return complex(mag, math.pi if v < 0 else 0.0)
    val = _mp_eval(p, complex(z))
    if val == 0:
        raise ChromaticRootError(f"{z} is a root")
    with mpmath.workdps(30):
        return complex(mpmath.log(val))


def entropy_per_vertex(g: SimpleGraph | None, z, poly: IntPolynomial | None = None) -> complex:
    """t_G(z) = ln ch_G(z) / |V(G)| with the principal logarithm."""
    if poly is None:
        poly = chromatic_dc(g)
    n = poly.degree
    return log_evaluate(poly, z) / n


def entropy_from_roots(m: ChromaticMeasure, z: complex) -> complex:
    """``(1/total) * sum ln(z - lambda)``; its real part equals Re t_G(z)."""
    total = 0j
    for lam, mult in m.roots:
        if z == lam:
            raise ChromaticRootError(f"{z} is a root")
        total += mult * cmath.log(z - lam)
    return total / m.total


def sokal_radius(d: int, C: float = SOKAL_C) -> float:
    if d < 1:
        raise ValueError("maximum degree must be at least 1")
    return C * d


def in_disc(m: ChromaticMeasure, disc: SokalDisc) -> dict:
    radius = disc.radius
    worst = m.max_modulus()
    # an edgeless graph has d = 0 and every root at the centre
    inside = worst == 0 if disc.d == 0 else all(abs(z) < radius for z, _ in m.roots)
    return {
        "inside": inside,
        "max_modulus": worst,
        "radius": radius,
        "C": disc.C,
        "d": disc.d,
    }
