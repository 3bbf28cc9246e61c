"""Exact arithmetic on mixed polynomial-trigonometric expressions.

A :class:`TrigPoly` is a finite rational combination of the basis functions
``phi**i * cos(j*phi)`` and ``phi**i * sin(j*phi)``.  The basis is closed
under multiplication (product-to-sum identities) and differentiation, and
its elements are linearly independent, so a canonical term map decides
equality and vanishing exactly.

:class:`TPoly` lifts the ring to polynomials in a second variable ``t``, and
:class:`RationalExpr` to quotients of those.  Quotients are never reduced;
equality and zero tests go through cross-multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

COS = 0
SIN = 1
KIND_NAMES = {COS: "cos", SIN: "sin"}

Key = Tuple[int, int, int]  # (power of phi, frequency, kind)

_HALF = Fraction(1, 2)


class ZeroDenominator(ZeroDivisionError):
    """A rational expression was built over the zero polynomial."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coefficient {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def _accumulate(acc: Dict[Key, Fraction], key: Key, value: Fraction) -> None:
    i, j, kind = key
    if j < 0:
        j = -j
        if kind == SIN:
            value = -value
    elif j == 0 and kind == SIN:
        return
    key = (i, j, kind)
    acc[key] = acc.get(key, 0) + value


def _strip(acc: Dict[Key, Fraction]) -> Dict[Key, Fraction]:
    return {k: v for k, v in acc.items() if v}


class TrigPoly:
    """Immutable element of the ring spanned by ``phi^i cos(j phi)``, ``phi^i sin(j phi)``.

    ``terms`` maps ``(i, j, kind)`` to a nonzero :class:`~fractions.Fraction`.
    Negative frequencies are folded (cosine even, sine odd) and ``sin(0)``
    terms are dropped on construction.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, object] | Iterable[Tuple[Key, object]] = ()):
        acc: Dict[Key, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j, kind), value in items:
            if i < 0:
                raise ValueError(f"negative power of phi: {i}")
            if kind not in (COS, SIN):
                raise ValueError(f"unknown kind {kind!r}")
            _accumulate(acc, (int(i), int(j), kind), _as_fraction(value))
        self._terms = _strip(acc)
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction]) -> "TrigPoly":
        # terms must already be canonical
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "TrigPoly":
        c = _as_fraction(c)
        return cls._raw({(0, 0, COS): c} if c else {})

    @classmethod
    def term(cls, i: int = 0, j: int = 0, kind: int = COS, c=1) -> "TrigPoly":
        return cls({(i, j, kind): c})

    @classmethod
    def zero(cls) -> "TrigPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "TrigPoly":
        return cls.const(1)

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, i: int, j: int, kind: int = COS) -> Fraction:
        return self._terms.get((i, j, kind), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def max_power(self) -> int:
        return max((k[0] for k in self._terms), default=0)

    @property
    def max_freq(self) -> int:
        return max((k[1] for k in self._terms), default=0)

    def constant_value(self):
        """The value if this is a pure constant, else ``None``."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and (0, 0, COS) in self._terms:
            return self._terms[(0, 0, COS)]
        return None

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "TrigPoly":
        if isinstance(other, TrigPoly):
            return other
        return TrigPoly.const(other)

    def __add__(self, other) -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            try:
                other = TrigPoly.const(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return TrigPoly._raw(_strip(acc))

    __radd__ = __add__

    def __neg__(self) -> "TrigPoly":
        return TrigPoly._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            try:
                other = TrigPoly.const(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) - v
        return TrigPoly._raw(_strip(acc))

    def __rsub__(self, other) -> "TrigPoly":
        return (-self) + other

    def scale(self, c) -> "TrigPoly":
        c = _as_fraction(c)
        if not c:
            return TrigPoly.zero()
        if c == 1:
            return self
        return TrigPoly._raw({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other) -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return TrigPoly.zero()
        if len(a) > len(b):
            a, b = b, a
        acc: Dict[Key, Fraction] = {}
        get = acc.get
        for (i1, j1, k1), c1 in a.items():
            if j1 == 0:
                # phi^i1 * (anything): no frequency mixing
                for (i2, j2, k2), c2 in b.items():
                    key = (i1 + i2, j2, k2)
                    acc[key] = get(key, 0) + c1 * c2
                continue
            for (i2, j2, k2), c2 in b.items():
                i = i1 + i2
                if j2 == 0:
                    key = (i, j1, k1)
                    acc[key] = get(key, 0) + c1 * c2
                    continue
                h = c1 * c2 * _HALF
                js, jd = j1 + j2, j1 - j2
                if k1 == COS and k2 == COS:
                    # cos a cos b = (cos(a-b) + cos(a+b)) / 2
                    key = (i, js, COS)
                    acc[key] = get(key, 0) + h
                    key = (i, abs(jd), COS)
                    acc[key] = get(key, 0) + h
                elif k1 == SIN and k2 == SIN:
                    # sin a sin b = (cos(a-b) - cos(a+b)) / 2
                    key = (i, js, COS)
                    acc[key] = get(key, 0) - h
                    key = (i, abs(jd), COS)
                    acc[key] = get(key, 0) + h
                else:
                    # sin a cos b = (sin(a+b) + sin(a-b)) / 2
                    key = (i, js, SIN)
                    acc[key] = get(key, 0) + h
                    if k1 == COS:
                        jd = -jd
                    if jd > 0:
                        key = (i, jd, SIN)
                        acc[key] = get(key, 0) + h
                    elif jd < 0:
                        key = (i, -jd, SIN)
                        acc[key] = get(key, 0) - h
        return TrigPoly._raw(_strip(acc))

    def __rmul__(self, other) -> "TrigPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "TrigPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = TrigPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff(self) -> "TrigPoly":
        """d/dphi, term by term."""
        acc: Dict[Key, Fraction] = {}
        for (i, j, kind), c in self._terms.items():
            if i:
                key = (i - 1, j, kind)
                acc[key] = acc.get(key, 0) + i * c
            if j:
                if kind == COS:
                    key = (i, j, SIN)
                    acc[key] = acc.get(key, 0) - j * c
                else:
                    key = (i, j, COS)
                    acc[key] = acc.get(key, 0) + j * c
        return TrigPoly._raw(_strip(acc))

    def eval(self, phi: float) -> float:
        parts = []
        for (i, j, kind), c in self._terms.items():
            trig = math.cos(j * phi) if kind == COS else math.sin(j * phi)
            parts.append(float(c) * phi**i * trig)
        return math.fsum(parts)

    def magnitude(self, phi: float) -> float:
        """Sum of absolute term values at ``phi``; the natural scale for rounding error."""
        return math.fsum(
            abs(float(c) * phi**i * (math.cos(j * phi) if kind == COS else math.sin(j * phi)))
            for (i, j, kind), c in self._terms.items()
        )

    __call__ = eval

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, TrigPoly):
            return self._terms == other._terms
        try:
            return self._terms == TrigPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_items(self):
        return sorted(self._terms.items())

    def __repr__(self) -> str:
        return f"TrigPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for (i, j, kind), c in self.sorted_items():
            factors = []
            if i == 1:
                factors.append("phi")
            elif i > 1:
                factors.append(f"phi^{i}")
            if j:
                arg = "phi" if j == 1 else f"{j}*phi"
                factors.append(f"{KIND_NAMES[kind]}({arg})")
            body = "*".join(factors)
            if not body:
                out.append(str(c))
            elif c == 1:
                out.append(body)
            elif c == -1:
                out.append("-" + body)
            else:
                out.append(f"{c}*{body}")
        return " + ".join(out).replace("+ -", "- ")


def tp_add(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    return a + b


def tp_mul(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    return a * b


def tp_diff(a: TrigPoly) -> TrigPoly:
    return a.diff()


def tp_eval(a: TrigPoly, phi: float) -> float:
    return a.eval(phi)


def cos(j: int = 1, power: int = 0, c=1) -> TrigPoly:
    return TrigPoly.term(power, j, COS, c)


def sin(j: int = 1, power: int = 0, c=1) -> TrigPoly:
    return TrigPoly.term(power, j, SIN, c)


def phi(power: int = 1, c=1) -> TrigPoly:
    return TrigPoly.term(power, 0, COS, c)


@dataclass(frozen=True)
class CoeffTable:
    """Lossless read-out of a TrigPoly in the basis coefficients.

    For a numerator this holds the A (cos) and B (sin) families; for a
    denominator the F and H families.
    """

    entries: Mapping[Key, Fraction]
    max_power: int
    max_freq: int

    def get(self, i: int, j: int, kind: int = COS) -> Fraction:
        return self.entries.get((i, j, kind), Fraction(0))

    def cos_coeff(self, i: int, j: int) -> Fraction:
        return self.get(i, j, COS)

    def sin_coeff(self, i: int, j: int) -> Fraction:
        return self.get(i, j, SIN)

    def nonzero(self) -> bool:
        return bool(self.entries)

    def rows(self):
        """``(i, j, kind_name, numerator, denominator)`` in sorted key order."""
        for (i, j, kind), c in sorted(self.entries.items()):
            yield i, j, KIND_NAMES[kind], c.numerator, c.denominator

    def to_trigpoly(self) -> TrigPoly:
        return TrigPoly(self.entries)


def extract_coeffs(a: TrigPoly) -> CoeffTable:
    return CoeffTable(entries=a.terms, max_power=a.max_power, max_freq=a.max_freq)


class TPoly:
    """Polynomial in ``t`` with :class:`TrigPoly` coefficients.

    ``coeffs[k]`` multiplies ``t**k``; trailing zeros are stripped so the
    empty tuple is the zero polynomial.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[object] = ()):
        cs = [c if isinstance(c, TrigPoly) else TrigPoly.const(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[TrigPoly, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "TPoly":
        return cls((c,))

    @classmethod
    def t(cls, power: int = 1) -> "TPoly":
        return cls([TrigPoly.zero()] * power + [TrigPoly.one()])

    @classmethod
    def zero(cls) -> "TPoly":
        return cls(())

    @property
    def degree(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> TrigPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else TrigPoly.zero()

    def at_zero(self) -> TrigPoly:
        """Exact substitution t = 0."""
        return self.coeff(0)

    def term_count(self) -> int:
        return sum(len(c) for c in self.coeffs)

    @staticmethod
    def _coerce(other) -> "TPoly":
        if isinstance(other, TPoly):
            return other
        return TPoly.const(other)

    def __add__(self, other) -> "TPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        zero = TrigPoly.zero()
        return TPoly([(a[k] if k < len(a) else zero) + (b[k] if k < len(b) else zero) for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return TPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "TPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "TPoly":
        if not isinstance(other, (TPoly, TrigPoly)):
            return TPoly([c.scale(other) for c in self.coeffs])
        other = self._coerce(other) if isinstance(other, TPoly) else TPoly((other,))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TPoly.zero()
        out = [TrigPoly.zero()] * (len(a) + len(b) - 1)
        for p, ca in enumerate(a):
            if not ca:
                continue
            for q, cb in enumerate(b):
                if cb:
                    out[p + q] = out[p + q] + ca * cb
        return TPoly(out)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "TPoly":
        """Drop every power of t above ``order`` (explicit, never implicit)."""
        return TPoly(self.coeffs[: order + 1])

    def diff_t(self) -> "TPoly":
        return TPoly([c.scale(k) for k, c in enumerate(self.coeffs)][1:])

    def diff_phi(self) -> "TPoly":
        return TPoly([c.diff() for c in self.coeffs])

    def diff(self, var: int) -> "TPoly":
        """Partial derivative; ``var`` 0 is t, 1 is phi."""
        return self.diff_t() if var == 0 else self.diff_phi()

    def eval(self, t: float, phi: float) -> float:
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * t + c.eval(phi)
        return total

    __call__ = eval

    def __eq__(self, other) -> bool:
        if isinstance(other, TPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, TrigPoly):
            return self.coeffs == TPoly((other,)).coeffs
        try:
            return self.coeffs == TPoly.const(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "TPoly(0)"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c})" + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}"))
        return "TPoly(" + " + ".join(parts) + ")"


class RationalExpr:
    """Unreduced quotient ``num / den`` of two :class:`TPoly` values."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = TPoly._coerce(num) if not isinstance(num, TrigPoly) else TPoly((num,))
        den = TPoly._coerce(den) if not isinstance(den, TrigPoly) else TPoly((den,))
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        self.num = num
        self.den = den

    @staticmethod
    def _coerce(other) -> "RationalExpr":
        if isinstance(other, RationalExpr):
            return other
        return RationalExpr(other)

    def __add__(self, other) -> "RationalExpr":
        other = self._coerce(other)
        if self.den == other.den:
            return RationalExpr(self.num + other.num, self.den)
        return RationalExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalExpr":
        return RationalExpr(-self.num, self.den)

    def __sub__(self, other) -> "RationalExpr":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalExpr":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalExpr":
        other = self._coerce(other)
        return RationalExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalExpr":
        return RationalExpr(self.den, self.num)

    def __truediv__(self, other) -> "RationalExpr":
        return self * self._coerce(other).reciprocal()

    def _diff(self, var: int) -> "RationalExpr":
        dn = self.num.diff(var)
        dd = self.den.diff(var)
        if dd.is_zero():
            return RationalExpr(dn, self.den)
        return RationalExpr(dn * self.den - self.num * dd, self.den * self.den)

    def diff_t(self) -> "RationalExpr":
        return self._diff(0)

    def diff_phi(self) -> "RationalExpr":
        return self._diff(1)

    def diff(self, var: int) -> "RationalExpr":
        return self._diff(var)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def at_zero(self) -> "RationalExpr":
        """Exact substitution t = 0 (the denominator must survive it)."""
        return RationalExpr(TPoly((self.num.at_zero(),)), TPoly((self.den.at_zero(),)))

    def eval(self, t: float, phi: float) -> float:
        return self.num.eval(t, phi) / self.den.eval(t, phi)

    __call__ = eval

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalExpr):
            try:
                other = RationalExpr(other)
            except TypeError:
                return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        return f"RationalExpr({self.num!r} / {self.den!r})"


def rat_add(a: RationalExpr, b: RationalExpr) -> RationalExpr:
    return a + b


def rat_mul(a: RationalExpr, b: RationalExpr) -> RationalExpr:
    return a * b
