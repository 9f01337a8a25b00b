"""Spectral curves: construction, singularity detection, squarefree structure."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylcurve import (
    ParamRing,
    SpectralCurve,
    UnboundParameterError,
    XDependenceError,
    XPoly,
    curve_is_singular,
    curve_structure,
    render_zpoly,
    spectral_curve,
)
from weylcurve.chain import QPoly

from support import solved_family, zpoly_mul


def numeric_curve(*ascending) -> SpectralCurve:
    ring = ParamRing(())
    return SpectralCurve(ring, tuple(ring.const(c) for c in ascending))


def test_order_zero_q_gives_line():
    ring = ParamRing(())
    Q = QPoly.from_xpoly(XPoly.const(ring, 1))
    curve = spectral_curve(Q, XPoly.x(ring) ** 2, XPoly.const(ring, 5))
    assert curve.degree == 1
    assert curve.coeffs == (ring.const(-5), ring.one())
    assert curve.genus_bound == 0


def test_curve_is_monic_of_odd_degree():
    for kind, params, m in [
        ("thm1", {"g": 1}, 1),
        ("thm1", {"g": 1}, 2),
        ("thm2", {"g": 2}, 2),
        ("mironov_x3", {"g": 1}, 1),
    ]:
        _, _, _, curve = solved_family(kind, params, m)
        assert curve.degree == 2 * m + 1
        assert curve.genus_bound == m
        assert curve.coeffs[-1].is_one()


def test_monic_constraint_enforced():
    ring = ParamRing(())
    with pytest.raises(ValueError):
        SpectralCurve(ring, (ring.one(), ring.const(2)))


def test_x_dependence_is_an_error_with_offenders():
    ring = ParamRing(())
    V = XPoly.zero(ring)
    Q = QPoly.z(ring) + QPoly.from_xpoly(XPoly.x(ring))  # does not certify closure
    with pytest.raises(XDependenceError) as err:
        spectral_curve(Q, V, V)
    assert err.value.offenders  # the non-constant z-coefficients are reported
    assert any(not p.is_constant() for p in err.value.offenders.values())


def test_singularity_examples():
    assert curve_is_singular(numeric_curve(0, 0, 0, 1)).witness == (0, 0, 1)  # z^3
    report = curve_is_singular(numeric_curve(3072, 448, 32, 1))
    assert not report.singular and report.witness is None
    # repeated root away from the origin: (z-1)^2 (z+2)
    report = curve_is_singular(numeric_curve(2, -3, 0, 1))
    assert report.singular and report.witness == (-1, 1)


def test_singularity_respects_bindings():
    _, _, _, curve = solved_family("thm1", {"g": 1}, 1)
    with pytest.raises(UnboundParameterError):
        curve_is_singular(curve)
    report = curve_is_singular(curve, {"A6": 1, "A2": 1})
    assert not report.singular
    # leftover symbol still rejected, by name
    with pytest.raises(UnboundParameterError) as err:
        curve_is_singular(curve, {"A6": 1})
    assert "A2" in str(err.value)


def shift_curve(curve: SpectralCurve, r: Fraction) -> SpectralCurve:
    ring = curve.ring
    shifted = [ring.zero()] * len(curve.coeffs)
    z_plus_r = [ring.const(r), ring.one()]
    power = [ring.one()]
    for k, c in enumerate(curve.coeffs):
        for i, p in enumerate(power):
            shifted[i] = shifted[i] + c * p
        power = zpoly_mul(ring, power, z_plus_r)
    return SpectralCurve(ring, tuple(shifted))


def test_shift_invariance_of_singularity():
    singular = numeric_curve(2, -3, 0, 1)
    smooth = numeric_curve(3072, 448, 32, 1)
    for r in (Fraction(3), Fraction(-7, 2)):
        assert curve_is_singular(shift_curve(singular, r)).singular
        assert not curve_is_singular(shift_curve(smooth, r)).singular


def test_structure_examples():
    # (z-1)^2 (z+2) = z^3 - 3z + 2
    structure = curve_structure(numeric_curve(2, -3, 0, 1))
    assert [(tuple(Fraction(str(c)) for c in f), m) for f, m in structure] == [
        ((2, 1), 1),
        ((-1, 1), 2),
    ]
    assert curve_structure(numeric_curve(0, 0, 0, 1)) == (((0, 1), 3),)
    squarefree = curve_structure(numeric_curve(3072, 448, 32, 1))
    assert len(squarefree) == 1 and squarefree[0][1] == 1


def test_structure_symbolic_square():
    _, _, _, curve = solved_family("thm1", {"g": 1}, 3)
    ring = curve.ring
    a2, a6 = ring.param("A2"), ring.param("A6")
    structure = dict()
    for coeffs, mult in curve_structure(curve):
        structure[mult] = coeffs
    assert structure[2] == (256 * a2**2, -16 * a2, ring.one())
    assert structure[1] == (3072 * a6 * a2, 256 * a2**2 + 192 * a6, 32 * a2, ring.one())
    rebuilt = zpoly_mul(
        ring, structure[1], structure[2], structure[2]
    )
    assert tuple(rebuilt) == curve.coeffs


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=5), st.integers(1, 3))
def test_structure_multiplies_back(roots, extra_mult):
    ring = ParamRing(())
    factors = [[ring.const(-r), ring.one()] for r in roots]
    factors += [[ring.const(-roots[0]), ring.one()]] * (extra_mult - 1)
    coeffs = zpoly_mul(ring, *factors)
    if len(coeffs) % 2 == 0:  # keep the degree odd as the constructor demands
        coeffs = zpoly_mul(ring, coeffs, [ring.const(-roots[-1]), ring.one()])
    curve = SpectralCurve(ring, tuple(coeffs))
    rebuilt = [ring.one()]
    for f, mult in curve_structure(curve):
        for _ in range(mult):
            rebuilt = zpoly_mul(ring, rebuilt, list(f))
    assert tuple(rebuilt) == curve.coeffs


def test_render_zpoly():
    ring = ParamRing(("A2",))
    text = render_zpoly((ring.const(5), ring.param("A2"), ring.one()))
    assert text == "z^2 + (A2)*z + 5"
