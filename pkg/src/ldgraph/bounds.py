"""Closed-form bound functions on z in [2*sqrt(2), 4].

``h_of(R)`` is the sharp measure bound for diameter-2 subsets of the annulus
{2 <= |x| <= R}; ``f_of = 2 (g + h)`` bounds the measure of a K3-free planar set
of diameter R; ``g_of(R)`` is half the area of the lens of two radius-2 disks
whose centres are R apart.  Derivatives are transcribed closed forms, not
symbolic results.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .geometry import DomainError, ball_volume

Z_MIN = 2.0 * math.sqrt(2.0)
Z_MAX = 4.0
# a'(z) has a sqrt(16 - z^2) denominator; it is only evaluated up to here
Z_DERIV_MAX = Z_MAX - 1e-9
_RADICAND_CLAMP = -1e-12


def _check(z, lo=Z_MIN, hi=Z_MAX):
    z = float(z)
    slack = 1e-12 * hi
    if not (lo - slack <= z <= hi + slack):
        raise DomainError(f"z={z!r} is outside [{lo}, {hi}]")
    return min(max(z, lo), hi)


def _a(z):
    rad = (-(z**4) + 16.0 * z * z) / (8.0 * (z * z + 2.0))
    if rad < 0:
        if rad < _RADICAND_CLAMP:
            raise DomainError(f"negative radicand {rad} at z={z}")
        rad = 0.0
    return math.sqrt(rad)


def a_of(z: float) -> float:
    """Half-height of the optimal annulus set's corner rectangle."""
    return _a(_check(z))


def a_prime(z: float) -> float:
    z = _check(z)
    if z > Z_DERIV_MAX:
        return -math.inf
    return -(z * z - 4.0) * (z * z + 8.0) / ((2.0 * (z * z + 2.0)) ** 1.5 * math.sqrt(16.0 - z * z))


def _g(z):
    return 4.0 * math.acos(min(z / 4.0, 1.0)) - 0.5 * z * math.sqrt(max(4.0 - z * z / 4.0, 0.0))


def g_of(z: float) -> float:
    return _g(_check(z))


def g_prime(z: float) -> float:
    z = _check(z)
    return -0.5 * math.sqrt(max(16.0 - z * z, 0.0))


def _asin(x):
    return math.asin(min(max(x, -1.0), 1.0))


def h_of(z: float) -> float:
    """Sharp upper bound on the measure of a diameter-2 subset of {2 <= |x| <= z}."""
    z = _check(z)
    a = _a(z)
    return z * z * _asin(a / z) - 4.0 * _asin(a / 2.0) + 2.0 * math.acos(min(a, 1.0))


def f_of(z: float) -> float:
    return 2.0 * (g_of(z) + h_of(z))


def H_of(z: float) -> float:
    """The residual term of h'(z) built from the printed a'(z); identically zero."""
    z = _check(z)
    if z > Z_DERIV_MAX:
        return 0.0  # continuous extension
    a, da = _a(z), a_prime(z)
    return (
        z * (z * da - a) / math.sqrt(z * z - a * a)
        - 4.0 * da / math.sqrt(4.0 - a * a)
        - 2.0 * da / math.sqrt(1.0 - a * a)
    )


def h_prime(z: float) -> float:
    z = _check(z)
    return 2.0 * _asin(_a(z) / z) * z + H_of(z)


def f_prime(z: float) -> float:
    """f'(z) = 4 z arcsin(a(z)/z) - sqrt(16 - z^2), using H = 0."""
    z = _check(z)
    return 4.0 * _asin(_a(z) / z) * z - math.sqrt(max(16.0 - z * z, 0.0))


def lens_area(z: float) -> float:
    """Area of D(x, 2) & D(y, 2) with |x - y| = z."""
    z = float(z)
    if z < 0:
        raise DomainError("centre distance must be nonnegative")
    if z >= 4.0:
        return 0.0
    return 2.0 * _g(z)


# --- internal scaffolding for the H = 0 identity -----------------------------


def _q(z):
    return 8.0 * (z * z + 2.0)


def _s_terms(z):
    """(S1, S2, S3) = (z^2 - a^2, 4 - a^2, 1 - a^2) in their factored forms."""
    q = _q(z)
    return 9.0 * z**4 / q, (z * z + 8.0) ** 2 / q, (z * z - 4.0) ** 2 / q


def _r_terms(z):
    return 3.0 * z * z, z * z + 8.0, z * z - 4.0


def H_factored(z: float) -> float:
    """H via sqrt(Q) (z^2/R1 - 4/R2 - 2/R3) a' - z a sqrt(Q) / R1."""
    z = _check(z)
    if z > Z_DERIV_MAX:
        return 0.0
    q = math.sqrt(_q(z))
    r1, r2, r3 = _r_terms(z)
    return q * ((z * z / r1 - 4.0 / r2 - 2.0 / r3) * a_prime(z) - z / r1 * _a(z))


def interior_grid(n: int) -> np.ndarray:
    """``n`` uniform points strictly inside (2*sqrt(2), 4)."""
    return np.linspace(Z_MIN, Z_MAX, n + 2)[1:-1]


def verify_H_identity(grid: int = 1000) -> float:
    """max |H(z)| over ``grid`` interior points."""
    return max(abs(H_of(z)) for z in interior_grid(grid))


class MonotonicityCheck(NamedTuple):
    min_derivative: float
    argmin: float
    max_fd_error: float


def verify_f_monotone(grid: int = 1000, fd_step: float = 1e-5) -> MonotonicityCheck:
    """Minimum of the closed-form f' on the interior grid, and the largest gap
    between it and a central difference of f_of with step ``fd_step``."""
    if grid < 2:
        raise DomainError("grid must have at least 2 points")
    zs = interior_grid(grid)
    zs = zs[(zs - fd_step > Z_MIN) & (zs + fd_step < Z_MAX)]
    fp = np.array([f_prime(z) for z in zs])
    fd = np.array([(f_of(z + fd_step) - f_of(z - fd_step)) / (2 * fd_step) for z in zs])
    i = int(np.argmin(fp))
    return MonotonicityCheck(float(fp[i]), float(zs[i]), float(np.max(np.abs(fp - fd))))


def crude_bounds(d: int, k: int) -> tuple:
    """(measure bound, edge-measure bound) for K_k-free sets in R^d from the
    covering argument: (k-1) 2^d w_d and (k-1)^2 2^(2d-1) w_d^2."""
    if int(k) != k or k < 2:
        raise DomainError("k must be an integer >= 2")
    w = ball_volume(d)
    return (k - 1) * 2.0**d * w, (k - 1) ** 2 * 2.0 ** (2 * d - 1) * w * w


@dataclass(frozen=True)
class BoundLedger:
    z: float
    a: float
    a_prime: float
    g: float
    g_prime: float
    h: float
    H: float
    f: float
    f_prime: float

    @classmethod
    def at(cls, z: float) -> "BoundLedger":
        z = _check(z)
        return cls(z, a_of(z), a_prime(z), g_of(z), g_prime(z), h_of(z), H_of(z), f_of(z), f_prime(z))

    CSV_HEADER = ("z", "a", "g", "h", "H", "f", "f'")

    def csv_row(self) -> tuple:
        return (self.z, self.a, self.g, self.h, self.H, self.f, self.f_prime)

    def as_dict(self) -> dict:
        return asdict(self)


def ledger_csv(zs, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(BoundLedger.CSV_HEADER)
    for z in zs:
        w.writerow([repr(float(v)) for v in BoundLedger.at(z).csv_row()])
    return buf.getvalue()
