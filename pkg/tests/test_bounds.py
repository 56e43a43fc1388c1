import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from ldgraph import bounds
from ldgraph.geometry import DomainError, ball_volume

Z = st.floats(min_value=bounds.Z_MIN + 1e-6, max_value=bounds.Z_MAX - 1e-6)


def corner_s(R):
    a = bounds.a_of(R)
    return 0.5 * (math.sqrt(R * R - a * a) + math.sqrt(4 - a * a))


def cap_annulus_area(R):
    """Area of D((s,0),1) & Annulus(2,R) integrated ring by ring (independent of h_of)."""
    s = corner_s(R)

    def ring(r):
        c = (r * r + s * s - 1.0) / (2.0 * r * s)
        return 2.0 * r * math.acos(max(-1.0, min(1.0, c)))

    lo, hi = max(2.0, s - 1.0), min(R, s + 1.0)
    return integrate.quad(ring, lo, hi, epsabs=1e-13, epsrel=1e-13, limit=200)[0]


def lens_oracle(z):
    """Area of two radius-2 disks centred at (+-z/2, 0), by quadrature of the
    vertical chord; for x >= 0 the disk on the left is the binding one."""
    half = 0.5 * z

    def chord(x):
        return 2.0 * math.sqrt(max(4.0 - (x + half) ** 2, 0.0))

    return 2.0 * integrate.quad(chord, 0.0, 2.0 - half, epsabs=1e-13)[0]


def test_anchor_values():
    assert bounds.f_of(4.0) == pytest.approx(2 * math.pi, abs=1e-12)
    assert bounds.h_of(4.0) == pytest.approx(math.pi, abs=1e-12)
    assert bounds.a_of(4.0) == 0.0
    assert bounds.g_of(4.0) == 0.0


@pytest.mark.parametrize("R, expected", [
    (2 * math.sqrt(2), 1.646709),
    (3.0, 1.9502821),
    (3.5, 2.708322),
    (4.0, math.pi),
])
def test_h_matches_ring_integral(R, expected):
    assert bounds.h_of(R) == pytest.approx(cap_annulus_area(R), abs=1e-10)
    assert bounds.h_of(R) == pytest.approx(expected, abs=1e-6)


def test_a_at_three():
    assert bounds.a_of(3.0) == pytest.approx(0.846114, abs=1e-6)
    assert bounds.a_of(2 * math.sqrt(2)) ** 2 == pytest.approx(0.8, abs=1e-12)


@pytest.mark.parametrize("z", [0.0, 1.0, 2.5, 3.0, 3.99])
def test_lens_area(z):
    assert bounds.lens_area(z) == pytest.approx(lens_oracle(z), abs=1e-9)


def test_lens_area_edges():
    assert bounds.lens_area(4.0) == 0.0
    assert bounds.lens_area(7.0) == 0.0
    assert bounds.lens_area(0.0) == pytest.approx(4 * math.pi)
    with pytest.raises(DomainError):
        bounds.lens_area(-0.1)


def test_H_identity():
    assert bounds.verify_H_identity(1000) < 1e-9


@given(Z)
def test_H_forms_agree(z):
    assert bounds.H_factored(z) == pytest.approx(bounds.H_of(z), abs=1e-9)
    assert abs(bounds.H_of(z)) < 1e-9


@given(st.floats(min_value=bounds.Z_MIN + 1e-3, max_value=bounds.Z_MAX - 1e-3))
def test_derivatives_match_finite_differences(z):
    eps = 1e-6
    for fn, dfn in [(bounds.a_of, bounds.a_prime), (bounds.g_of, bounds.g_prime),
                    (bounds.h_of, bounds.h_prime), (bounds.f_of, bounds.f_prime)]:
        fd = (fn(z + eps) - fn(z - eps)) / (2 * eps)
        assert dfn(z) == pytest.approx(fd, rel=1e-5, abs=1e-6)


def test_f_monotone():
    check = bounds.verify_f_monotone(grid=1000)
    assert check.min_derivative > 0
    assert check.max_fd_error < 1e-6
    fd100 = bounds.verify_f_monotone(grid=100)
    assert fd100.max_fd_error < 1e-6


def test_derivative_endpoint():
    assert bounds.a_prime(4.0) == -math.inf
    assert bounds.H_of(4.0) == 0.0
    assert bounds.f_prime(4.0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("z", [2.0, 4.5, float("nan")])
def test_domain_errors(z):
    with pytest.raises(DomainError):
        bounds.h_of(z)


def test_crude_bounds():
    lam, e = bounds.crude_bounds(2, 3)
    assert lam == pytest.approx(2 * 4 * math.pi)
    assert e == pytest.approx(4 * 8 * math.pi**2)
    with pytest.raises(DomainError):
        bounds.crude_bounds(2, 1)


def test_ball_volume():
    assert ball_volume(1) == pytest.approx(2.0)
    assert ball_volume(2) == pytest.approx(math.pi)
    assert ball_volume(3) == pytest.approx(4 * math.pi / 3)
    assert ball_volume(4) == pytest.approx(math.pi**2 / 2)


def test_ledger_csv_is_monotone_in_f():
    zs = np.linspace(bounds.Z_MIN, bounds.Z_MAX, 100)
    rows = bounds.ledger_csv(zs).strip().splitlines()
    assert rows[0] == "z,a,g,h,H,f,f'"
    assert len(rows) == 101
    f = [float(r.split(",")[5]) for r in rows[1:]]
    assert all(b > a for a, b in zip(f, f[1:]))


def test_ledger_row():
    row = bounds.BoundLedger.at(4.0)
    assert row.f == pytest.approx(2 * math.pi)
    assert set(row.as_dict()) >= {"z", "a", "g", "h", "H", "f", "f_prime"}


@settings(max_examples=50)
@given(Z)
def test_f_is_twice_g_plus_h(z):
    assert bounds.f_of(z) == pytest.approx(2 * (bounds.g_of(z) + bounds.h_of(z)), abs=1e-14)
