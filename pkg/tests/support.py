"""Shared helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction

from weylcurve import (
    FamilySpec,
    SpectralCurve,
    assemble_q,
    build_family,
    build_qchain,
    extract_constraints,
    solve_constants,
    spectral_curve,
)


def family_chain(kind, params, m):
    """Chain of length m for a family's (V, W), constants left symbolic."""
    ring, V, W = build_family(FamilySpec(kind, params))
    return build_qchain(V, W, m)


def solved_family(kind, params, m, free_values=None):
    """(chain, outcome, Q, curve) for a family solved at target degree m.

    Free constants default to zero; raises if the solve is infeasible.
    """
    chain = family_chain(kind, params, m)
    outcome = solve_constants(extract_constraints(chain))
    Q = assemble_q(chain, outcome, free_values)
    curve = spectral_curve(Q, chain.V, chain.W)
    return chain, outcome, Q, curve


def zpoly_mul(ring, *factors):
    """Product of z-polynomials given as ascending ParamScalar coefficient lists."""
    out = [ring.one()]
    for f in factors:
        acc = [ring.zero()] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                acc[i + j] = acc[i + j] + a * b
        out = acc
    return out


def curve_equals(curve: SpectralCurve, coeffs) -> bool:
    """Coefficient-wise exact comparison against an ascending scalar list."""
    if len(curve.coeffs) != len(coeffs):
        return False
    return all(a == b for a, b in zip(curve.coeffs, coeffs))


def frac(value) -> Fraction:
    return Fraction(value)
