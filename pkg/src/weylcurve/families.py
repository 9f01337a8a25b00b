"""Named families of candidate operator pairs and their expected behavior.

Each family fixes a polynomial potential pair (V, W) with coefficients that
may stay symbolic or be bound to rationals:

  * ``thm1``: V = A6 x^6 + A2 x^2, W = 16 g (g+1) A6 x^4 (A6 != 0); closes at
    every degree m >= g.
  * ``thm2``: V = A4 x^4 + A2 x^2 + A0, W = 4 g (g+1) A4 x^2 (A4 != 0).
  * ``thm3``: V = A x^n, W = B x^k for n > 3 (A != 0); closure at some degree
    requires k = n - 2 and, for a degree-m chain, B = (n-2)^2 m (m+1) A;
    for n in {4, 6} that family extends to all higher degrees, for n = 5 only
    B = 18 A (m = 1) closes, and for n >= 7 no choice closes.
  * ``mironov_x3``: V = A3 x^3 + A2 x^2 + A1 x + A0, W = g (g+1) A3 x
    (A3 != 0).
  * ``dixmier_rank2`` / ``dixmier_rank3``: the two classical commuting pairs
    built from D^2 + x^3 + alpha and D^3 + x^2 + alpha.

Closed-form single-monomial images of the chain recursion are provided for
the first three families as independent oracles; they drop pure constants
(absorbed by the integration constant, matching the zero-constant
antiderivative used by the recursion).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Mapping

from .scalars import ParamRing, ParamScalar, RatLike
from .weyl import DiffOp, XPoly, build_square_form
from .chain import build_qchain, extract_constraints, solve_constants, assemble_q
from .curve import SpectralCurve, spectral_curve

KINDS = ("thm1", "thm2", "thm3", "mironov_x3", "dixmier_rank2", "dixmier_rank3")

# Symbol names each family may use, in declaration order.
_FAMILY_SYMBOLS = {
    "thm1": ("A6", "A2"),
    "thm2": ("A4", "A2", "A0"),
    "thm3": ("A",),
    "mironov_x3": ("A3", "A2", "A1", "A0"),
    "dixmier_rank2": ("alpha",),
    "dixmier_rank3": ("alpha",),
}

_INT_KEYS = {"g", "n", "k", "m", "b_mult"}
_EXTRA_KEYS = {"b_over_a"} | _INT_KEYS


class FamilySpecError(ValueError):
    """A family description is malformed or inconsistent."""


@dataclass
class FamilySpec:
    """A family kind plus its parameters.

    ``parameters`` holds the shape parameters (g for the graded families;
    n, k, and m or b_over_a for the monomial family, where m fixes
    B = (n-2)^2 m(m+1) A) together with optional rational bindings for the
    coefficient symbols listed above.  Unbound symbols stay symbolic.
    ``b_mult`` is accepted as an alias for m.
    """

    kind: str
    parameters: dict = field(default_factory=dict)

    def symbol_bindings(self) -> dict[str, Fraction]:
        symbols = _FAMILY_SYMBOLS.get(self.kind, ())
        out = {}
        for name in symbols:
            if name in self.parameters:
                out[name] = Fraction(self.parameters[name])
        return out

    def shape(self, key: str, default=None):
        return self.parameters.get(key, default)


def _validate(spec: FamilySpec) -> None:
    if spec.kind not in KINDS:
        raise FamilySpecError(f"unknown family kind {spec.kind!r}; known: {', '.join(KINDS)}")
    symbols = set(_FAMILY_SYMBOLS[spec.kind])
    for key in spec.parameters:
        if key in symbols or key in _EXTRA_KEYS:
            continue
        raise FamilySpecError(f"family {spec.kind!r} does not accept parameter {key!r}")
    for key in _INT_KEYS & spec.parameters.keys():
        value = spec.parameters[key]
        if not isinstance(value, int):
            raise FamilySpecError(f"parameter {key!r} must be an integer, got {value!r}")


def _ring_for(spec: FamilySpec) -> tuple[ParamRing, dict[str, ParamScalar]]:
    """Ring containing the family's unbound symbols, plus a value per symbol."""
    bindings = spec.symbol_bindings()
    names = [n for n in _FAMILY_SYMBOLS[spec.kind] if n not in bindings]
    ring = ParamRing(tuple(names))
    values = {}
    for name in _FAMILY_SYMBOLS[spec.kind]:
        if name in bindings:
            values[name] = ring.const(bindings[name])
        else:
            values[name] = ring.param(name)
    return ring, values


def _require_g(spec: FamilySpec) -> int:
    g = spec.shape("g")
    if not isinstance(g, int) or g < 1:
        raise FamilySpecError(f"family {spec.kind!r} needs an integer parameter g >= 1")
    return g


def _require_nonzero(spec: FamilySpec, name: str) -> None:
    bindings = spec.symbol_bindings()
    if name in bindings and bindings[name] == 0:
        raise FamilySpecError(f"family {spec.kind!r} needs {name} != 0")


def build_family(spec: FamilySpec) -> tuple[ParamRing, XPoly, XPoly]:
    """The potential pair (V, W) of a family; dixmier_rank3 has none."""
    _validate(spec)
    kind = spec.kind
    if kind == "thm1":
        g = _require_g(spec)
        _require_nonzero(spec, "A6")
        ring, val = _ring_for(spec)
        V = XPoly.monomial(ring, 6, val["A6"]) + XPoly.monomial(ring, 2, val["A2"])
        W = XPoly.monomial(ring, 4, 16 * g * (g + 1) * val["A6"])
        return ring, V, W
    if kind == "thm2":
        g = _require_g(spec)
        _require_nonzero(spec, "A4")
        ring, val = _ring_for(spec)
        V = (
            XPoly.monomial(ring, 4, val["A4"])
            + XPoly.monomial(ring, 2, val["A2"])
            + XPoly.const(ring, val["A0"])
        )
        W = XPoly.monomial(ring, 2, 4 * g * (g + 1) * val["A4"])
        return ring, V, W
    if kind == "thm3":
        n = spec.shape("n")
        if not isinstance(n, int) or n <= 3:
            raise FamilySpecError("family 'thm3' needs an integer parameter n > 3")
        _require_nonzero(spec, "A")
        ring, val = _ring_for(spec)
        a = val["A"]
        k = spec.shape("k", n - 2)
        if not isinstance(k, int) or k < 0:
            raise FamilySpecError("parameter k must be a nonnegative integer")
        b_mult = spec.shape("m", spec.shape("b_mult"))
        b_over_a = spec.shape("b_over_a")
        if b_mult is not None and b_over_a is not None:
            raise FamilySpecError("give at most one of m and b_over_a")
        if b_mult is not None:
            if b_mult < 1:
                raise FamilySpecError("m must be a positive integer")
            b = (n - 2) ** 2 * b_mult * (b_mult + 1) * a
        elif b_over_a is not None:
            b = Fraction(b_over_a) * a
        else:
            raise FamilySpecError("family 'thm3' needs m or b_over_a")
        V = XPoly.monomial(ring, n, a)
        W = XPoly.monomial(ring, k, b)
        return ring, V, W
    if kind == "mironov_x3":
        g = _require_g(spec)
        _require_nonzero(spec, "A3")
        ring, val = _ring_for(spec)
        V = (
            XPoly.monomial(ring, 3, val["A3"])
            + XPoly.monomial(ring, 2, val["A2"])
            + XPoly.monomial(ring, 1, val["A1"])
            + XPoly.const(ring, val["A0"])
        )
        W = XPoly.monomial(ring, 1, g * (g + 1) * val["A3"])
        return ring, V, W
    if kind == "dixmier_rank2":
        ring, val = _ring_for(spec)
        V = XPoly.monomial(ring, 3) + XPoly.const(ring, val["alpha"])
        W = XPoly.monomial(ring, 1, 2)
        return ring, V, W
    raise FamilySpecError(f"family {kind!r} has no (D^2+V)^2+W presentation")


# -- closed-form recursion images (oracles) ------------------------------------


def _as_scalar(ring: ParamRing, value) -> ParamScalar:
    if isinstance(value, ParamScalar):
        return value.lift(ring) if value.ring != ring else value
    return ring.const(value)


def thm1_monomial_step(
    ring: ParamRing, k: int, g: int, a6, a2, constant: str = "C"
) -> XPoly:
    """Image of x^(4k) under one chain rung for the x^6 family.

    x^(4k) -> C - k(4k-1)(4k-2)(4k-3) x^(4k-4) - 16 A2 k^2 x^(4k)
              + 8 A6 (2k+1)/(k+1) (g-k)(g+k+1) x^(4k+4),
    with pure constants folded into C.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    a6 = _as_scalar(ring, a6)
    a2 = _as_scalar(ring, a2)
    out = XPoly.const(ring, ring.param(constant))
    terms = [
        (4 * k - 4, ring.const(-k * (4 * k - 1) * (4 * k - 2) * (4 * k - 3))),
        (4 * k, -16 * k * k * a2),
        (4 * k + 4, 8 * Fraction(2 * k + 1, k + 1) * (g - k) * (g + k + 1) * a6),
    ]
    for power, coeff in terms:
        if power >= 1 and not coeff.is_zero():
            out = out + XPoly.monomial(ring, power, coeff)
    return out


def thm2_monomial_step(
    ring: ParamRing, k: int, g: int, a4, a2, a0, constant: str = "C"
) -> XPoly:
    """Image of x^(2k) under one chain rung for the x^4 family.

    x^(2k) -> C - k(2k-1)(k-1)(2k-3) x^(2k-4) - 2 A0 k(2k-1) x^(2k-2)
              - 4 A2 k^2 x^(2k) + 2 A4 (2k+1)/(k+1) (g-k)(g+k+1) x^(2k+2),
    with pure constants folded into C.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    a4 = _as_scalar(ring, a4)
    a2 = _as_scalar(ring, a2)
    a0 = _as_scalar(ring, a0)
    out = XPoly.const(ring, ring.param(constant))
    terms = [
        (2 * k - 4, ring.const(-k * (2 * k - 1) * (k - 1) * (2 * k - 3))),
        (2 * k - 2, -2 * k * (2 * k - 1) * a0),
        (2 * k, -4 * k * k * a2),
        (2 * k + 2, 2 * Fraction(2 * k + 1, k + 1) * (g - k) * (g + k + 1) * a4),
    ]
    for power, coeff in terms:
        if power >= 1 and not coeff.is_zero():
            out = out + XPoly.monomial(ring, power, coeff)
    return out


def thm3_monomial_step(ring: ParamRing, k: int, n: int, a, b, constant: str = "C") -> XPoly:
    """Image of x^k under one chain rung for V = A x^n, W = B x^(n-2).

    x^k -> C - 1/4 k(k-1)(k-2)(k-3) x^(k-4)
           + (n+2k-2)/(2(n+k-2)) (B - A k (n+k-2)) x^(n+k-2),
    with pure constants folded into C.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if n <= 3:
        raise ValueError("n must be > 3")
    a = _as_scalar(ring, a)
    b = _as_scalar(ring, b)
    out = XPoly.const(ring, ring.param(constant))
    low = Fraction(-k * (k - 1) * (k - 2) * (k - 3), 4)
    high = Fraction(n + 2 * k - 2, 2 * (n + k - 2)) * (b - k * (n + k - 2) * a)
    for power, coeff in ((k - 4, ring.const(low)), (n + k - 2, high)):
        if power >= 1 and not coeff.is_zero():
            out = out + XPoly.monomial(ring, power, coeff)
    return out


def thm3_admissible_B(n: int, a: RatLike, b: RatLike) -> int | None:
    """The m with B = (n-2)^2 m (m+1) A, or None when no positive integer fits."""
    if n <= 3:
        raise ValueError("n must be > 3")
    a = Fraction(a)
    b = Fraction(b)
    if a == 0:
        raise ValueError("A must be nonzero")
    q = b / ((n - 2) ** 2 * a)
    if q <= 0 or q.denominator != 1:
        return None
    disc = 1 + 4 * q.numerator
    root = isqrt(disc)
    if root * root != disc or (root - 1) % 2:
        return None
    m = (root - 1) // 2
    return m if m >= 1 else None


# -- the two classical pairs -----------------------------------------------------


def dixmier_pair(rank: int, alpha: RatLike | None = None) -> tuple[DiffOp, DiffOp]:
    """The classical commuting pair of the given rank (2 or 3).

    With P = D^2 + x^3 + alpha:   L = P^2 + 2x,
        M = P^3 + (3/2)(x P + P x) + ... written in normal form below;
    with R = D^3 + x^2 + alpha:   L = R^2 + 2D, M = R^3 + (3/2)(D R + R D).
    Both satisfy [L, M] = 0 and M^2 = L^3 - alpha.
    """
    ring = ParamRing(() if alpha is not None else ("alpha",))
    a = ring.const(alpha) if alpha is not None else ring.param("alpha")
    if rank == 2:
        P = DiffOp(ring, [XPoly.monomial(ring, 3) + XPoly.const(ring, a), 0, 1])
        L = P * P + DiffOp.from_xpoly(XPoly.monomial(ring, 1, 2))
        M = P**3 + DiffOp.from_xpoly(XPoly.monomial(ring, 1, 3)) * P + DiffOp.d(ring) * 3
        return L, M
    if rank == 3:
        R = DiffOp(ring, [XPoly.monomial(ring, 2) + XPoly.const(ring, a), 0, 0, 1])
        L = R * R + DiffOp.d(ring) * 2
        M = (
            R**3
            + DiffOp.d(ring, 4) * 3
            + DiffOp(ring, [0, XPoly.monomial(ring, 2) + XPoly.const(ring, a)]) * 3
            + DiffOp.from_xpoly(XPoly.monomial(ring, 1, 3))
        )
        return L, M
    raise FamilySpecError(f"no classical pair of rank {rank!r}")


# -- family-level verdicts ----------------------------------------------------------


def expected_feasible(spec: FamilySpec, degree: int) -> bool | None:
    """Whether the chain is expected to close at this degree; None = no claim."""
    kind = spec.kind
    if kind in ("thm1", "thm2", "mironov_x3"):
        return degree >= _require_g(spec)
    if kind == "thm3":
        n = spec.shape("n")
        k = spec.shape("k", n - 2)
        if k != n - 2:
            return False
        b_mult = spec.shape("m", spec.shape("b_mult"))
        if b_mult is None:
            b_over_a = Fraction(spec.shape("b_over_a"))
            b_mult = thm3_admissible_B(n, 1, b_over_a)
        if b_mult is None:
            return False
        if n in (4, 6):
            return degree >= b_mult
        if n == 5:
            return b_mult == 1
        return False
    return None


@dataclass(frozen=True)
class DegreeResult:
    """Outcome of attempting closure at one chain degree m."""

    degree: int
    status: str
    assignment: dict[str, str]
    free: tuple[str, ...]
    side_conditions: tuple[str, ...]
    curve: SpectralCurve | None
    expected: bool | None
    matches_expected: bool


@dataclass(frozen=True)
class FamilyVerdict:
    """Every checked degree (or identity) for a family, plus the verdict."""

    kind: str
    rows: tuple[DegreeResult, ...]
    identities: dict[str, bool] | None
    verified: bool


def _attempt_degree(
    spec: FamilySpec,
    degree: int,
    free_values: Mapping[str, RatLike] | None,
) -> DegreeResult:
    ring, V, W = build_family(spec)
    chain = build_qchain(V, W, degree)
    outcome = solve_constants(extract_constraints(chain))
    curve = None
    if outcome.feasible:
        usable = {
            k: v for k, v in (free_values or {}).items() if k in outcome.free
        }
        Q = assemble_q(chain, outcome, usable)
        curve = spectral_curve(Q, chain.V, chain.W)
    expected = expected_feasible(spec, degree)
    matches = True if expected is None else (outcome.feasible == expected)
    return DegreeResult(
        degree=degree,
        status=outcome.status,
        assignment={k: str(v) for k, v in sorted(outcome.assignment.items())},
        free=outcome.free,
        side_conditions=tuple(str(p) for p in outcome.side_conditions),
        curve=curve,
        expected=expected,
        matches_expected=matches,
    )


def run_family_verdict(
    spec: FamilySpec,
    m: int | None = None,
    g_bound: int = 4,
    free_values: Mapping[str, RatLike] | None = None,
) -> FamilyVerdict:
    """Check a family against its expected closure behavior.

    For the g-indexed families a single degree is tried (m, defaulting to
    g); for the monomial family every degree 1..g_bound is tried unless m
    pins one.  The classical pairs are checked through their defining
    identities instead.
    """
    _validate(spec)
    if spec.kind in ("dixmier_rank2", "dixmier_rank3"):
        rank = 2 if spec.kind == "dixmier_rank2" else 3
        alpha = spec.parameters.get("alpha")
        L, M = dixmier_pair(rank, alpha)
        commutes = L.commutator(M).is_zero()
        ring = L.ring
        a = ring.const(alpha) if alpha is not None else ring.param("alpha")
        gap = M * M - L**3 + DiffOp(ring, [XPoly.const(ring, a)])
        identities = {
            "commutes": commutes,
            "spectral_identity": gap.is_zero(),
        }
        return FamilyVerdict(
            kind=spec.kind,
            rows=(),
            identities=identities,
            verified=all(identities.values()),
        )
    if spec.kind == "thm3":
        degrees = [m] if m is not None else list(range(1, g_bound + 1))
    else:
        degrees = [m if m is not None else _require_g(spec)]
    rows = tuple(_attempt_degree(spec, d, free_values) for d in degrees)
    return FamilyVerdict(
        kind=spec.kind,
        rows=rows,
        identities=None,
        verified=all(r.matches_expected for r in rows),
    )
