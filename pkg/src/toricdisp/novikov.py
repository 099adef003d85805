"""Finite sums in the universal Novikov field.

A :class:`NovikovPoly` is ``sum_k c_k q^{e_k}`` with rational exponents and
Gaussian-rational coefficients.  Witnesses for critical points of potentials
are stored in *unit coordinates*: for a potential term ``q^l e^{<v,b> - delta}``
we keep ``z = q^l * unit`` with ``val(unit) = 0`` instead of ``b`` and
``delta``.  Every unit of valuation zero is ``e^x`` for some ``x`` in the
valuation ring, so the two descriptions carry the same information.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linalg import as_fraction, fmt


@dataclass(frozen=True, order=True)
class Gauss:
    """A Gaussian rational ``re + i*im``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def of(cls, x) -> "Gauss":
        if isinstance(x, Gauss):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point complex numbers are not exact")
        return cls(as_fraction(x), Fraction(0))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = Gauss.of(other)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Gauss.of(other))

    def __rsub__(self, other):
        return Gauss.of(other) - self

    def __mul__(self, other):
        o = Gauss.of(other)
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = Gauss.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return fmt(self.re)
        if not self.re:
            return f"{fmt(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"({fmt(self.re)}{sign}{fmt(abs(self.im))}i)"


class NovikovPoly:
    """Immutable finite Novikov sum; terms sorted by strictly increasing exponent."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable = ()):
        acc: dict[Fraction, Gauss] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            e = as_fraction(e)
            acc[e] = acc.get(e, Gauss()) + Gauss.of(c)
        object.__setattr__(self, "terms",
                           tuple((e, c) for e, c in sorted(acc.items()) if c))

    def __setattr__(self, *_):
        raise AttributeError("NovikovPoly is immutable")

    @classmethod
    def monomial(cls, exponent, coeff=1) -> "NovikovPoly":
        return cls([(exponent, coeff)])

    @classmethod
    def zero(cls) -> "NovikovPoly":
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NovikovPoly.monomial(0, other) if other else NovikovPoly()
        if not isinstance(other, NovikovPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        other = _coerce(other)
        return NovikovPoly(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return NovikovPoly([(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return NovikovPoly([(e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms])

    __rmul__ = __mul__

    def shift(self, c) -> "NovikovPoly":
        """Multiply by ``q^c``."""
        c = as_fraction(c)
        return NovikovPoly([(e + c, x) for e, x in self.terms])

    def valuation(self):
        """Least exponent, or ``None`` for zero (valuation +infinity)."""
        return self.terms[0][0] if self.terms else None

    def leading_coefficient(self) -> Gauss:
        return self.terms[0][1] if self.terms else Gauss()

    def constant_term(self) -> Gauss:
        return next((c for e, c in self.terms if e == 0), Gauss())

    def __repr__(self):
        return f"NovikovPoly({str(self)})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            power = f"q^{fmt(e)}" if e.denominator == 1 and e >= 0 else f"q^({fmt(e)})"
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(power)
            elif c == -1:
                parts.append("-" + power)
            else:
                parts.append(f"{c}*{power}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[fmt(e), fmt(c.re), fmt(c.im)] for e, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "NovikovPoly":
        return cls([(e, Gauss(re, im)) for e, re, im in data])


def _coerce(x) -> NovikovPoly:
    if isinstance(x, NovikovPoly):
        return x
    return NovikovPoly.monomial(0, x)


def q(exponent, coeff=1) -> NovikovPoly:
    return NovikovPoly.monomial(exponent, coeff)


def valuation(p: NovikovPoly):
    """Least exponent of ``p``; ``None`` stands for +infinity (the zero element)."""
    return p.valuation()


@dataclass(frozen=True)
class TermSpec:
    """One potential term: lattice direction and exponent ``<v, lambda> - eps(v)``."""

    direction: tuple[int, ...]
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(int(x) for x in self.direction))
        object.__setattr__(self, "exponent", as_fraction(self.exponent))

    def to_json(self) -> dict:
        return {"v": list(self.direction), "l": fmt(self.exponent)}


@dataclass(frozen=True)
class ValuationRule:
    """What a witness entry must satisfy.

    Facet terms (``lower is None``) only need ``val(z) = l``.  Spurious terms
    additionally need ``l >= lower`` (``l > lower`` when ``strict``).
    """

    lower: Optional[Fraction] = None
    strict: bool = False

    @property
    def spurious(self) -> bool:
        return self.lower is not None


FACET = ValuationRule()


@dataclass(frozen=True)
class Check:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def residual(terms: Sequence[TermSpec], z: Sequence[NovikovPoly]) -> tuple[NovikovPoly, ...]:
    """``sum_v z_v * v``: the logarithmic gradient of the potential at the witness."""
    if len(terms) != len(z):
        raise ValueError("one witness entry per term is required")
    if not terms:
        return ()
    n = len(terms[0].direction)
    out = []
    for k in range(n):
        acc = []
        for t, zt in zip(terms, z):
            if t.direction[k]:
                acc.extend((e, c * t.direction[k]) for e, c in zt.terms)
        out.append(NovikovPoly(acc))
    return tuple(out)


def verify_certificate(terms: Sequence[TermSpec], z: Sequence[NovikovPoly],
                       required: Sequence[ValuationRule]) -> Check:
    """Exact check that ``z`` is a critical point witness with the declared valuations."""
    if not (len(terms) == len(z) == len(required)):
        return Check(False, "length mismatch between terms, witness and rules")
    for k, comp in enumerate(residual(terms, z)):
        if comp:
            return Check(False, f"residual component {k} is {comp}, not 0")
    for j, (t, zj, rule) in enumerate(zip(terms, z, required)):
        v = zj.valuation()
        if v is None:
            return Check(False, f"term {j} ({t.direction}) has zero witness")
        if v != t.exponent:
            return Check(False, f"term {j} ({t.direction}): valuation {fmt(v)} != {fmt(t.exponent)}")
        if rule.spurious:
            if t.exponent < rule.lower or (rule.strict and t.exponent == rule.lower):
                rel = ">" if rule.strict else ">="
                return Check(False, f"term {j} ({t.direction}): exponent {fmt(t.exponent)} "
                                    f"violates {rel} {fmt(rule.lower)}")
    return Check(True)


def delta_leading(z: NovikovPoly, l) -> Gauss:
    """Leading coefficient of the unit ``z * q^{-l}``."""
    l = as_fraction(l)
    if z.valuation() != l:
        raise ValueError(f"valuation of {z} is not {fmt(l)}")
    return z.shift(-l).constant_term()
