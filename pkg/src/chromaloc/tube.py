"""Tubes T_n = C4 x P_n: transfer matrix, eigenvalue closed form and the limiting root curve."""

from __future__ import annotations

import cmath
import csv
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .poly import IntPolynomial
from .spectra import find_roots


def _p(*coeffs_high_to_low) -> IntPolynomial:
    return IntPolynomial(reversed(coeffs_high_to_low))


# row vector for the first C4 layer, then the layer-to-layer matrix
V1 = (
    _p(1, -6, 11, -6, 0),
    _p(2, -6, 4, 0),
    _p(1, -1, 0),
)
M = (
    (_p(1, -10, 41, -84, 73), _p(2, -14, 38, -40), _p(1, -5, 8)),
    (_p(1, -10, 40, -77, 60), _p(2, -13, 32, -29), _p(1, -4, 5)),
    (_p(1, -10, 39, -70, 48), _p(2, -12, 26, -20), _p(1, -3, 3)),
)

LAMBDA_BASE = _p(1, -8, 29, -55, 46)
A_FACTOR = _p(1, -8, 27, -47, 36)
A_QUINTIC = _p(1, -9, 35, -70, 73, -36)
R_SQUARED = _p(1, -16, 118, -526, 1569, -3250, 4617, -4136, 1776)
SEXTIC = _p(1, -12, 61, -169, 269, -231, 85)

SPECIAL_FACTORS = (
    ("z", _p(1, 0)),
    ("z-1", _p(1, -1)),
    ("z-2", _p(1, -2)),
    ("2z-5", _p(2, -5)),
    ("z^2-3z+1", _p(1, -3, 1)),
    ("z^2-4z+6", _p(1, -4, 6)),
    ("sextic", SEXTIC),
    ("octic", R_SQUARED),
)


class SingularPoint(ZeroDivisionError):
    def __init__(self, z, factor):
        super().__init__(f"closed form is singular at z={z}: {factor} vanishes")
        self.z = z
        self.factor = factor


@lru_cache(maxsize=None)
def tube_chromatic(n: int) -> IntPolynomial:
    """ch of C4 x P_n as v1 M^(n-1) 1^T, by n-1 vector-matrix products."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vec = list(V1)
    for _ in range(n - 1):
        vec = [sum((vec[i] * M[i][j] for i in range(3)), IntPolynomial()) for j in range(3)]
    return vec[0] + vec[1] + vec[2]


def tube_value(n: int, z):
    """v1(z) M(z)^(n-1) 1^T evaluated numerically; exact for int and Fraction z."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vec = [p(z) for p in V1]
    mz = [[p(z) for p in row] for row in M]
    for _ in range(n - 1):
        vec = [vec[0] * mz[0][j] + vec[1] * mz[1][j] + vec[2] * mz[2][j] for j in range(3)]
    return vec[0] + vec[1] + vec[2]


@dataclass(frozen=True)
class EigenData:
    z: complex
    r: complex
    lam1: complex
    lam2: complex
    a1: complex
    a2: complex

    def value(self, n: int) -> complex:
        return self.a1 * self.lam1 ** (n - 1) + self.a2 * self.lam2 ** (n - 1)


def eigen_data(z: complex) -> EigenData:
    z = complex(z)
    if z == 2:
        raise SingularPoint(z, "z-2")
    if z * z - 4 * z + 6 == 0:
        raise SingularPoint(z, "z^2-4z+6")
    r = cmath.sqrt(R_SQUARED(z))
    if r == 0:
        raise SingularPoint(z, "r")
    base = LAMBDA_BASE(z)
    fa, fq = A_FACTOR(z), A_QUINTIC(z)
    den = 4 * (z - 2) * (z * z - 4 * z + 6)

    def branch(ri):
        lam = (base + ri) / 2
        a = z * (z - 1) * (fa + ri) * (fq + z * ri - ri) / (ri * den)
        return lam, a

    lam1, a1 = branch(r)
    lam2, a2 = branch(-r)
    return EigenData(z, r, lam1, lam2, a1, a2)


def tube_closed_form(n: int, z: complex) -> complex:
    """a1 lam1^(n-1) + a2 lam2^(n-1); symmetric in the two branches of r."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return eigen_data(z).value(n)


# ---------------------------------------------------------------------------
# limiting curve

@dataclass
class CurveSample:
    points: np.ndarray  # complex
    special: list[tuple[complex, str]]
    region: tuple[float, float, float, float]
    grid: float
    tol: float

    def all_points(self) -> np.ndarray:
        return np.concatenate([self.points, np.array([z for z, _ in self.special], dtype=complex)])


def eigen_gap(z: np.ndarray) -> np.ndarray:
    """| |lam1| - |lam2| | / max(|lam1|, |lam2|) on an array; independent of the branch of r."""
    base = _np_eval(LAMBDA_BASE, z)
    r = np.sqrt(_np_eval(R_SQUARED, z).astype(complex))
    m1, m2 = np.abs(base + r), np.abs(base - r)
    top = np.maximum(m1, m2)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.abs(m1 - m2) / top
    return np.where(top == 0, 0.0, out)


def _np_eval(p: IntPolynomial, z):
    acc = np.zeros_like(z, dtype=complex)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def special_set() -> list[tuple[complex, str]]:
    out = []
    for tag, f in SPECIAL_FACTORS:
        for root, _ in find_roots(f).roots:
            out.append((root, tag))
    return out


def limit_curve_sample(region=(-1.0, 5.0, -3.5, 3.5), grid: float = 0.01, tol: float = 0.02) -> CurveSample:
    """Grid points with | |lam1| - |lam2| | <= tol * max|lam_i|, plus the special set."""
    if tol <= 0 or grid <= 0:
        raise ValueError("tol and grid must be positive")
    x0, x1, y0, y1 = region
    xs = x0 + grid * np.arange(int(round((x1 - x0) / grid)) + 1)
    # grid symmetric about the real axis so the output is conjugation-closed
    ymax = max(abs(y0), abs(y1))
    ys = grid * np.arange(0, int(round(ymax / grid)) + 1)
    zz = xs[None, :] + 1j * ys[:, None]
    mask = eigen_gap(zz) <= tol
    upper = zz[mask]
    pts = np.concatenate([upper, np.conj(upper[upper.imag > 0])])
    pts = pts[(pts.imag >= y0 - 1e-12) & (pts.imag <= y1 + 1e-12)]
    order = np.lexsort((pts.imag, pts.real))
    return CurveSample(pts[order], special_set(), tuple(region), grid, tol)


def distance_to_sample(roots, sample: CurveSample) -> np.ndarray:
    pts = sample.all_points()
    out = []
    for z in roots:
        out.append(np.min(np.abs(pts - z)))
    return np.array(out)


def write_curve_csv(path, sample: CurveSample):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im"])
        for z in sample.points:
            w.writerow([f"{z.real:.15g}", f"{z.imag:.15g}"])


def write_special_csv(path, sample: CurveSample):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "tag"])
        for z, tag in sample.special:
            w.writerow([f"{z.real:.15g}", f"{z.imag:.15g}", tag])
