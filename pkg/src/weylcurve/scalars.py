"""Exact scalar arithmetic over a fixed universe of named parameters.

Coefficients live in the field Q(p1, ..., pk): arbitrary-precision rationals
(``fractions.Fraction``), multivariate polynomials in the declared parameters
(``ParamPoly``), and quotients of those (``ParamScalar``).  Everything is
immutable and kept canonical: polynomials never store zero coefficients,
quotients are reduced by the multivariate gcd, and denominators are primitive
with a positive leading coefficient, so structural equality is mathematical
equality and values are safe to hash.

The parameter universe is fixed when a ``ParamRing`` is created.  Widening it
(for example to add integration constants) goes through ``ParamRing.extend``
plus the ``lift`` methods, never by mutation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Union

Rat = Fraction

RatLike = Union[int, Fraction]

# Names with a fixed meaning in the expression grammar; they can never be
# declared as parameters.
RESERVED_NAMES = frozenset({"x", "z", "D"})


class PoleError(ZeroDivisionError):
    """A substitution made a denominator vanish."""


def _is_name(text: str) -> bool:
    return text.isidentifier()


class ParamRing:
    """Ordered universe of named parameters shared by a family of values.

    Two rings compare equal iff they declare the same names in the same
    order; values constructed over different rings never mix silently.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str] = ()):
        names = tuple(names)
        for name in names:
            if not _is_name(name):
                raise ValueError(f"invalid parameter name {name!r}")
            if name in RESERVED_NAMES:
                raise ValueError(f"parameter name {name!r} is reserved")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names!r}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParamRing) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"ParamRing({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(
                f"unknown parameter {name!r}; declared: {', '.join(self.names) or '(none)'}"
            ) from None

    def extend(self, extra: Iterable[str]) -> "ParamRing":
        """Ring with `extra` names appended after the existing ones."""
        new = [name for name in extra if name not in self._index]
        return ParamRing(self.names + tuple(new))

    # -- polynomial-level constructors -------------------------------------

    def poly_zero(self) -> "ParamPoly":
        return ParamPoly._raw(self, {})

    def poly_const(self, value: RatLike) -> "ParamPoly":
        value = Fraction(value)
        if not value:
            return self.poly_zero()
        return ParamPoly._raw(self, {(0,) * len(self.names): value})

    def poly_one(self) -> "ParamPoly":
        return self.poly_const(1)

    def poly_param(self, name: str) -> "ParamPoly":
        i = self.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return ParamPoly._raw(self, {exp: Fraction(1)})

    # -- scalar-level constructors ------------------------------------------

    def zero(self) -> "ParamScalar":
        return ParamScalar._raw(self.poly_zero(), self.poly_one())

    def const(self, value: RatLike) -> "ParamScalar":
        return ParamScalar._raw(self.poly_const(value), self.poly_one())

    def one(self) -> "ParamScalar":
        return self.const(1)

    def param(self, name: str) -> "ParamScalar":
        return ParamScalar._raw(self.poly_param(name), self.poly_one())


def _grlex_key(exp: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exp), exp)


class ParamPoly:
    """Multivariate polynomial over Q in the ring's parameters.

    ``terms`` maps exponent tuples (one slot per ring name) to nonzero
    rational coefficients.  Display and leading-term selection use graded
    lexicographic order, descending.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ParamRing, terms: Mapping | Iterable = ()):
        width = len(ring.names)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coeff in items:
            exp = tuple(exp)
            if len(exp) != width:
                raise ValueError(f"exponent {exp!r} does not fit {width} parameters")
            if any(not isinstance(e, int) or e < 0 for e in exp):
                raise ValueError(f"exponents must be nonnegative integers, got {exp!r}")
            coeff = Fraction(coeff)
            if not coeff:
                continue
            acc = clean.get(exp)
            total = coeff if acc is None else acc + coeff
            if total:
                clean[exp] = total
            elif exp in clean:
                del clean[exp]
        self.ring = ring
        self.terms = clean

    @classmethod
    def _raw(cls, ring: ParamRing, terms: dict) -> "ParamPoly":
        # Trusted constructor: `terms` is already canonical (no zeros).
        self = object.__new__(cls)
        self.ring = ring
        self.terms = terms
        return self

    # -- predicates and views -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self.terms)

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_value() == 1

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Largest exponent sum; -1 marks the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self.terms:
            return -1
        return max(exp[i] for exp in self.terms)

    def free_params(self) -> frozenset[str]:
        names = self.ring.names
        out = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    out.add(names[i])
        return frozenset(out)

    # -- ring plumbing ----------------------------------------------------------

    def _same_ring(self, other: "ParamPoly") -> None:
        if self.ring != other.ring:
            raise ValueError(
                f"mixed parameter rings: {self.ring.names!r} vs {other.ring.names!r}"
            )

    def lift(self, ring: ParamRing) -> "ParamPoly":
        """Reinterpret over a ring whose names include this ring's names."""
        if ring == self.ring:
            return self
        pos = [ring.index(name) for name in self.ring.names]
        width = len(ring.names)
        terms = {}
        for exp, coeff in self.terms.items():
            new = [0] * width
            for p, e in zip(pos, exp):
                new[p] = e
            terms[tuple(new)] = coeff
        return ParamPoly._raw(ring, terms)

    def as_scalar(self) -> "ParamScalar":
        return ParamScalar._raw(self, self.ring.poly_one())

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "ParamPoly | None":
        if isinstance(other, ParamPoly):
            self._same_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.poly_const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            acc = terms.get(exp)
            total = coeff if acc is None else acc + coeff
            if total:
                terms[exp] = total
            elif exp in terms:
                del terms[exp]
        return ParamPoly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw(self.ring, {exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(i + j for i, j in zip(ea, eb))
                acc = terms.get(exp)
                total = ca * cb if acc is None else acc + ca * cb
                if total:
                    terms[exp] = total
                elif exp in terms:
                    del terms[exp]
        return ParamPoly._raw(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError(f"polynomial power must be a nonnegative integer, got {power!r}")
        out = self.ring.poly_one()
        base = self
        while power:
            if power & 1:
                out = out * base
            base = base * base
            power >>= 1
        return out

    def try_div(self, divisor: "ParamPoly") -> "ParamPoly | None":
        """Exact quotient self/divisor, or None when division is inexact."""
        self._same_ring(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        lexp, lc = divisor.leading()
        rem = dict(self.terms)
        quot: dict[tuple[int, ...], Fraction] = {}
        while rem:
            rexp = max(rem, key=_grlex_key)
            diff = tuple(i - j for i, j in zip(rexp, lexp))
            if any(e < 0 for e in diff):
                return None
            q = rem[rexp] / lc
            quot[diff] = q
            for dexp, dc in divisor.terms.items():
                exp = tuple(i + j for i, j in zip(diff, dexp))
                acc = rem.get(exp)
                total = -q * dc if acc is None else acc - q * dc
                if total:
                    rem[exp] = total
                elif exp in rem:
                    del rem[exp]
        return ParamPoly._raw(self.ring, quot)

    def exact_div(self, divisor: "ParamPoly") -> "ParamPoly":
        out = self.try_div(divisor)
        if out is None:
            raise ValueError(f"inexact polynomial division: ({self}) / ({divisor})")
        return out

    def content_fraction(self) -> Fraction:
        """Rational content carrying the sign of the leading coefficient."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for coeff in self.terms.values():
            num = _int_gcd(num, abs(coeff.numerator))
            den = den * coeff.denominator // _int_gcd(den, coeff.denominator)
        magnitude = Fraction(num, den)
        return magnitude if self.leading()[1] > 0 else -magnitude

    def primitive(self) -> "ParamPoly":
        """Integer-coprime coefficients, positive leading coefficient."""
        if not self.terms:
            return self
        content = self.content_fraction()
        return ParamPoly._raw(
            self.ring, {exp: c / content for exp, c in self.terms.items()}
        )

    # -- substitution ------------------------------------------------------------

    def substitute(self, bindings: Mapping[str, "RatLike | ParamScalar"]) -> "ParamScalar":
        """Bind some parameters to values; unbound parameters survive."""
        ring = self.ring
        for name in bindings:
            ring.index(name)  # reject unknown names early
        out = ring.zero()
        values: dict[int, ParamScalar] = {}
        for name, value in bindings.items():
            values[ring.index(name)] = _coerce_scalar(ring, value)
        for exp in sorted(self.terms, key=_grlex_key, reverse=True):
            term = ring.const(self.terms[exp])
            for i, e in enumerate(exp):
                if not e:
                    continue
                base = values.get(i)
                if base is None:
                    base = ring.param(ring.names[i])
                term = term * base**e
            out = out + term
        return out

    # -- equality and display ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring.names, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        parts: list[str] = []
        for exp in sorted(self.terms, key=_grlex_key, reverse=True):
            coeff = self.terms[exp]
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exp)
                if e
            ]
            mono = "*".join(factors)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"ParamPoly({self})"


# -- multivariate gcd ------------------------------------------------------------
#
# Primitive-PRS Euclid: recurse on the highest parameter index present, with
# contents computed by the same routine one level down.  Results are only
# meaningful up to rational units internally; mpoly_gcd normalizes at the end.


def _max_var(p: ParamPoly) -> int | None:
    best = None
    for exp in p.terms:
        for i in range(len(exp) - 1, -1, -1):
            if exp[i]:
                if best is None or i > best:
                    best = i
                break
    return best


def _deg_in_idx(p: ParamPoly, k: int) -> int:
    if not p.terms:
        return -1
    return max(exp[k] for exp in p.terms)


def _split_by_var(p: ParamPoly, k: int) -> dict[int, ParamPoly]:
    """Coefficient polynomials of p viewed as univariate in variable k."""
    buckets: dict[int, dict] = {}
    for exp, coeff in p.terms.items():
        e = exp[k]
        rest = exp[:k] + (0,) + exp[k + 1 :]
        buckets.setdefault(e, {})[rest] = coeff
    return {e: ParamPoly._raw(p.ring, terms) for e, terms in buckets.items()}


def _shift_var(p: ParamPoly, k: int, d: int) -> ParamPoly:
    if not d:
        return p
    terms = {
        exp[:k] + (exp[k] + d,) + exp[k + 1 :]: coeff for exp, coeff in p.terms.items()
    }
    return ParamPoly._raw(p.ring, terms)


def _lead_coeff_in(p: ParamPoly, k: int) -> ParamPoly:
    d = _deg_in_idx(p, k)
    return _split_by_var(p, k)[d]


def _prem(a: ParamPoly, b: ParamPoly, k: int) -> ParamPoly:
    """Pseudo-remainder of a by b in variable k (up to a unit of the base)."""
    db = _deg_in_idx(b, k)
    lb = _lead_coeff_in(b, k)
    r = a
    while not r.is_zero() and _deg_in_idx(r, k) >= db:
        d = _deg_in_idx(r, k) - db
        lr = _lead_coeff_in(r, k)
        r = lb * r - lr * _shift_var(b, k, d)
    return r


def _content_primitive(p: ParamPoly, k: int) -> tuple[ParamPoly, ParamPoly]:
    parts = list(_split_by_var(p, k).values())
    content = parts[0]
    for part in parts[1:]:
        if content.is_constant():
            break
        content = _gcd_rec(content, part)
    if content.is_constant():
        return p.ring.poly_one(), p
    primitive = p.try_div(content)
    if primitive is None:
        raise RuntimeError("internal error: content does not divide its polynomial")
    return content, primitive


def _gcd_rec(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    ka = _max_var(a)
    kb = _max_var(b)
    if ka is None or kb is None:
        return a.ring.poly_one()
    k = max(ka, kb)
    ca, pa = _content_primitive(a, k)
    cb, pb = _content_primitive(b, k)
    c = _gcd_rec(ca, cb)
    # keep numeric content at 1 as well: pseudo-remainders square the
    # coefficient size per step unless both contents are stripped
    pa = pa.primitive()
    pb = pb.primitive()
    if _deg_in_idx(pa, k) < _deg_in_idx(pb, k):
        pa, pb = pb, pa
    while True:
        db = _deg_in_idx(pb, k)
        if db < 0:
            break
        if db == 0:
            # pb is primitive of degree zero in k, hence a unit at this level.
            pa = a.ring.poly_one()
            break
        r = _prem(pa, pb, k)
        pa = pb
        pb = r if r.is_zero() else _content_primitive(r, k)[1].primitive()
    return c * pa


def mpoly_gcd(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Greatest common divisor, primitive with positive leading coefficient.

    a/gcd and b/gcd are always exact; gcd(0, 0) = 0 and constants behave as
    units (gcd 1).
    """
    a._same_ring(b)
    if a.is_zero() and b.is_zero():
        return a.ring.poly_zero()
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    return _gcd_rec(a, b).primitive()


def _coerce_scalar(ring: ParamRing, value) -> "ParamScalar":
    if isinstance(value, ParamScalar):
        if value.ring != ring:
            raise ValueError(
                f"mixed parameter rings: {value.ring.names!r} vs {ring.names!r}"
            )
        return value
    if isinstance(value, ParamPoly):
        if value.ring != ring:
            raise ValueError(
                f"mixed parameter rings: {value.ring.names!r} vs {ring.names!r}"
            )
        return value.as_scalar()
    if isinstance(value, (int, Fraction)):
        return ring.const(value)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


class ParamScalar:
    """Element of Q(parameters) in canonical reduced form.

    Invariants: gcd(num, den) is constant; den is primitive with integer
    coefficients and positive leading coefficient; a constant denominator is
    always exactly 1.  Zero is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ParamPoly, den: ParamPoly | None = None):
        if den is None:
            den = num.ring.poly_one()
        num._same_ring(den)
        self.num, self.den = _scalar_normalize(num, den)

    @classmethod
    def _raw(cls, num: ParamPoly, den: ParamPoly) -> "ParamScalar":
        # Trusted constructor: (num, den) already canonical.
        self = object.__new__(cls)
        self.num = num
        self.den = den
        return self

    @property
    def ring(self) -> ParamRing:
        return self.num.ring

    # -- predicates and views -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_numeric(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def numeric_value(self) -> Fraction:
        if not self.is_numeric():
            raise ValueError(f"not a numeric scalar: {self}")
        return self.num.constant_value()

    def free_params(self) -> frozenset[str]:
        return self.num.free_params() | self.den.free_params()

    def lift(self, ring: ParamRing) -> "ParamScalar":
        if ring == self.ring:
            return self
        return ParamScalar._raw(self.num.lift(ring), self.den.lift(ring))

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other) -> "ParamScalar | None":
        if isinstance(other, ParamScalar):
            if other.ring != self.ring:
                raise ValueError(
                    f"mixed parameter rings: {self.ring.names!r} vs {other.ring.names!r}"
                )
            return other
        if isinstance(other, ParamPoly):
            if other.ring != self.ring:
                raise ValueError(
                    f"mixed parameter rings: {self.ring.names!r} vs {other.ring.names!r}"
                )
            return other.as_scalar()
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return ParamScalar._raw(self.num + other.num, self.den)
        return ParamScalar(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return ParamScalar._raw(self.num * other.num, self.den)
        return ParamScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        return ParamScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, power: int):
        if not isinstance(power, int):
            raise ValueError(f"scalar power must be an integer, got {power!r}")
        if power < 0:
            if self.is_zero():
                raise ZeroDivisionError("zero cannot be raised to a negative power")
            return ParamScalar(self.den**(-power), self.num**(-power))
        return ParamScalar._raw(self.num**power, self.den**power)

    # -- substitution ---------------------------------------------------------------

    def substitute(self, bindings: Mapping[str, "RatLike | ParamScalar"]) -> "ParamScalar":
        """Bind parameters to values; raises PoleError if the denominator dies."""
        num = self.num.substitute(bindings)
        den = self.den.substitute(bindings)
        if den.is_zero():
            raise PoleError(f"denominator ({self.den}) vanishes under {_show_bindings(bindings)}")
        return num / den

    # -- equality and display ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == other
        if isinstance(other, ParamPoly):
            return self.den.is_one() and self.num == other
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"ParamScalar({self})"


def _scalar_normalize(num: ParamPoly, den: ParamPoly) -> tuple[ParamPoly, ParamPoly]:
    ring = num.ring
    if den.is_zero():
        raise ZeroDivisionError("scalar with zero denominator")
    if num.is_zero():
        return ring.poly_zero(), ring.poly_one()
    if den.is_constant():
        c = den.constant_value()
        if c == 1:
            return num, den
        return num * (Fraction(1) / c), ring.poly_one()
    g = mpoly_gcd(num, den)
    if not g.is_constant():
        num = num.exact_div(g)
        den = den.exact_div(g)
        if den.is_constant():
            return _scalar_normalize(num, den)
    content = den.content_fraction()
    if content != 1:
        scale = Fraction(1) / content
        num = num * scale
        den = den * scale
    return num, den


def _show_bindings(bindings: Mapping) -> str:
    inner = ", ".join(f"{k}={v}" for k, v in sorted(bindings.items(), key=lambda kv: kv[0]))
    return "{" + inner + "}"
