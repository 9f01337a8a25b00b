"""Hyperelliptic spectral curves w^2 = F(z) attached to a certified pair.

For L = (D^2 + V)^2 + W and a closing polynomial Q of degree m in z, the
commuting operator M of order 4m + 2 satisfies M^2 = F(L) with

  4 F(z) = 4 (z - W) Q^2 - 4 V (Q')^2 + (Q'')^2 - 2 Q' Q'''
           + 2 Q (2 V' Q' + 4 V Q'' + Q''''),

primes denoting x-derivatives.  When Q certifies closure the right side is
constant in x and F is monic of degree 2m + 1, the defining polynomial of a
genus <= m hyperelliptic curve.  This module evaluates F exactly, decides
singularity (a repeated root of F), and splits off repeated factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .scalars import ParamRing, ParamScalar, RatLike
from .weyl import XPoly
from .chain import QPoly


class XDependenceError(ValueError):
    """The curve expression failed to be constant in x."""

    def __init__(self, offenders: dict[int, XPoly]):
        self.offenders = offenders
        shown = "; ".join(f"z^{zp}: {p}" for zp, p in sorted(offenders.items()))
        super().__init__(f"spectral expression depends on x ({shown})")


class UnboundParameterError(ValueError):
    """A numeric decision was requested while parameters remain symbolic."""


@dataclass(frozen=True)
class SpectralCurve:
    """Monic odd-degree polynomial F with w^2 = F(z); coeffs ascending in z."""

    ring: ParamRing
    coeffs: tuple[ParamScalar, ...]

    def __post_init__(self):
        if not self.coeffs or not self.coeffs[-1].is_one():
            raise ValueError("spectral curve polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def genus_bound(self) -> int:
        return (self.degree - 1) // 2

    def coefficient(self, power: int) -> ParamScalar:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return self.ring.zero()

    def substitute_params(
        self, bindings: Mapping[str, "RatLike | ParamScalar"]
    ) -> "SpectralCurve":
        return SpectralCurve(
            self.ring, tuple(c.substitute(bindings) for c in self.coeffs)
        )

    def free_params(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for c in self.coeffs:
            out |= c.free_params()
        return out

    def __str__(self) -> str:
        return render_zpoly(self.coeffs)


def render_zpoly(coeffs: Sequence) -> str:
    """Human-readable z-polynomial from ascending coefficients."""
    parts = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if not c:
            continue
        body = str(c)
        one = body == "1"
        if power == 0:
            parts.append(f"({body})" if body.startswith("-") else body)
        elif power == 1:
            parts.append("z" if one else f"({body})*z")
        else:
            parts.append(f"z^{power}" if one else f"({body})*z^{power}")
    return " + ".join(parts) if parts else "0"


def spectral_curve(Q: QPoly, V: XPoly, W: XPoly) -> SpectralCurve:
    """Evaluate F(z) from a closing polynomial Q.

    Raises XDependenceError when the expression is not constant in x, which
    happens exactly when Q does not certify closure.
    """
    ring = Q.ring
    V = V.lift(ring)
    W = W.lift(ring)
    q1 = Q.dx()
    q2 = Q.dx(2)
    q3 = Q.dx(3)
    q4 = Q.dx(4)
    zW = Q.times_z() - Q.scale_x(W)
    four_f = (
        (zW * Q).scale_x(4)
        - (q1 * q1).scale_x(4 * V)
        + q2 * q2
        - (q1 * q3).scale_x(2)
        + (Q * (q1.scale_x(2 * V.derivative()) + q2.scale_x(4 * V) + q4)).scale_x(2)
    )
    offenders: dict[int, XPoly] = {}
    coeffs: list[ParamScalar] = []
    for power in range((four_f.z_degree or 0) + 1):
        c = four_f.coefficient(power)
        if c.is_constant():
            coeffs.append(c.constant_value() / 4)
        else:
            offenders[power] = c
    if offenders:
        raise XDependenceError(offenders)
    return SpectralCurve(ring, tuple(coeffs))


# -- generic univariate arithmetic over a field ---------------------------------
#
# Coefficients are ParamScalar or Fraction; both support field operations and
# truthiness.  Lists are ascending in z and trimmed.


def _trim(cs: list) -> list:
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _deriv(cs: Sequence) -> list:
    return _trim([(i + 1) * cs[i + 1] for i in range(len(cs) - 1)])


def _divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _trim(list(a))
    lead = b[-1]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    zero = lead * 0
    quot = [zero] * (len(rem) - db)
    while rem and len(rem) - 1 >= db:
        shift = len(rem) - 1 - db
        factor = rem[-1] / lead
        quot[shift] = factor
        for i, bc in enumerate(b):
            rem[shift + i] = rem[shift + i] - factor * bc
        rem.pop()
        _trim(rem)
    return _trim(quot), rem


def _monic(cs: Sequence) -> list:
    lead = cs[-1]
    return [c / lead for c in cs]


def _gcd_monic(a: Sequence, b: Sequence) -> list:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a) if a else a


def _mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        for j, bc in enumerate(b):
            out[i + j] = out[i + j] + ac * bc
    return _trim(out)


def curve_is_singular(
    curve: SpectralCurve,
    bindings: Mapping[str, RatLike] | None = None,
) -> "SingularityReport":
    """Decide whether F has a repeated root after binding all parameters."""
    bindings = bindings or {}
    bound = curve.substitute_params(bindings) if bindings else curve
    unbound = sorted(bound.free_params())
    if unbound:
        raise UnboundParameterError(
            f"cannot decide singularity with unbound parameters: {', '.join(unbound)}"
        )
    f = [c.numeric_value() for c in bound.coeffs]
    g = _gcd_monic(f, _deriv(f))
    if len(g) <= 1:
        return SingularityReport(singular=False, witness=None)
    return SingularityReport(singular=True, witness=tuple(g))


@dataclass(frozen=True)
class SingularityReport:
    """Verdict plus, when singular, the monic gcd(F, F') in ascending coeffs."""

    singular: bool
    witness: tuple[Fraction, ...] | None


def curve_structure(curve: SpectralCurve) -> tuple[tuple[tuple[ParamScalar, ...], int], ...]:
    """Squarefree decomposition F = prod_i P_i^i over the parameter field.

    Returns ((coeffs_of_P_i, i), ...) for the nonconstant P_i, ascending in
    multiplicity; the decomposition is exact for the symbolic coefficients as
    given (specializing parameters can merge roots further).
    """
    f = list(curve.coeffs)
    if len(f) <= 1:
        return ()
    fp = _deriv(f)
    a0 = _gcd_monic(f, fp)
    if len(a0) <= 1:
        return ((tuple(f), 1),)
    b, _ = _divmod(f, a0)
    c, _ = _divmod(fp, a0)
    d = _sub(c, _deriv(b))
    factors = []
    i = 1
    while len(b) > 1:
        a = _gcd_monic(b, d)
        if len(a) > 1:
            factors.append((tuple(a), i))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        d = _sub(c, _deriv(b))
        i += 1
    return tuple(factors)


def _sub(a: Sequence, b: Sequence) -> list:
    if not a and not b:
        return []
    zero = (a[0] if a else b[0]) * 0
    n = max(len(a), len(b))
    av = list(a) + [zero] * (n - len(a))
    bv = list(b) + [zero] * (n - len(b))
    return _trim([x - y for x, y in zip(av, bv)])
