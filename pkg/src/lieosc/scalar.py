"""Exact scalars of the form sum_d (p_d + i q_d) sqrt(d).

``p_d`` and ``q_d`` are arbitrary-precision rationals and every radicand ``d``
is a squarefree positive integer.  The ring is closed under addition and
multiplication, which is all the matrix identities in this package need.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping

from .errors import InvalidScalarError

__all__ = ["Surd", "squarefree_split", "as_fraction"]


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree."""
    if n <= 0:
        raise InvalidScalarError(f"radicand must be positive, got {n}")
    s, d = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidScalarError(f"not a rational: {x!r}")


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Surd:
    """Immutable exact element of the Gaussian-rational surd ring."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, tuple] | None = None):
        # trusted constructor: radicands already squarefree, values Fractions
        clean = {}
        if terms:
            for d, (re_, im_) in terms.items():
                if re_ or im_:
                    clean[d] = (as_fraction(re_), as_fraction(im_))
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # construction --------------------------------------------------------
    @classmethod
    def normalize(cls, raw: Iterable[tuple]) -> Surd:
        """Build a canonical Surd from ``(radicand, re, im)`` triples."""
        acc: dict[int, list[Fraction]] = {}
        for d, re_, im_ in raw:
            if not isinstance(d, int) or d <= 0:
                raise InvalidScalarError(f"radicand must be a positive integer, got {d!r}")
            s, sf = squarefree_split(d)
            slot = acc.setdefault(sf, [Fraction(0), Fraction(0)])
            slot[0] += s * as_fraction(re_)
            slot[1] += s * as_fraction(im_)
        return cls({d: (a, b) for d, (a, b) in acc.items()})

    @classmethod
    def rational(cls, q) -> Surd:
        return cls({1: (as_fraction(q), 0)})

    @classmethod
    def sqrt(cls, q) -> Surd:
        """Square root of a nonnegative rational."""
        q = as_fraction(q)
        if q < 0:
            return cls.sqrt(-q) * I
        if q == 0:
            return ZERO
        # sqrt(p/r) = sqrt(p*r)/r
        s, d = squarefree_split(q.numerator * q.denominator)
        return cls({d: (Fraction(s, q.denominator), 0)})

    @classmethod
    def coerce(cls, x) -> Surd:
        if isinstance(x, Surd):
            return x
        if isinstance(x, complex):
            raise InvalidScalarError("floating complex values are not exact")
        if isinstance(x, float):
            raise InvalidScalarError("floating values are not exact")
        return cls.rational(x)

    # inspection ----------------------------------------------------------
    @property
    def terms(self) -> dict[int, tuple[Fraction, Fraction]]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return not self._terms or (
            list(self._terms) == [1] and self._terms[1][1] == 0
        )

    def is_real(self) -> bool:
        return all(im == 0 for _, im in self._terms.values())

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InvalidScalarError(f"{self} is not rational")
        return self._terms.get(1, (Fraction(0), 0))[0]

    @property
    def real(self) -> Surd:
        return Surd({d: (a, 0) for d, (a, _) in self._terms.items()})

    @property
    def imag(self) -> Surd:
        return Surd({d: (b, 0) for d, (_, b) in self._terms.items()})

    def conj(self) -> Surd:
        return Surd({d: (a, -b) for d, (a, b) in self._terms.items()})

    def to_float(self) -> complex:
        re_ = im_ = 0.0
        for d, (a, b) in self._terms.items():
            r = d**0.5 if d != 1 else 1.0
            re_ += float(a) * r
            im_ += float(b) * r
        return complex(re_, im_)

    __complex__ = to_float

    def __abs__(self) -> float:
        return abs(self.to_float())

    # arithmetic ------------------------------------------------------------
    def __add__(self, other) -> Surd:
        try:
            other = Surd.coerce(other)
        except InvalidScalarError:
            return NotImplemented
        out = dict(self._terms)
        for d, (a, b) in other._terms.items():
            if d in out:
                a0, b0 = out[d]
                out[d] = (a0 + a, b0 + b)
            else:
                out[d] = (a, b)
        return Surd(out)

    __radd__ = __add__

    def __neg__(self) -> Surd:
        return Surd({d: (-a, -b) for d, (a, b) in self._terms.items()})

    def __pos__(self) -> Surd:
        return self

    def __sub__(self, other) -> Surd:
        try:
            other = Surd.coerce(other)
        except InvalidScalarError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Surd:
        return Surd.coerce(other) - self

    def __mul__(self, other) -> Surd:
        if isinstance(other, (int, Fraction)):
            q = as_fraction(other)
            return Surd({d: (a * q, b * q) for d, (a, b) in self._terms.items()})
        try:
            other = Surd.coerce(other)
        except InvalidScalarError:
            return NotImplemented
        out: dict[int, list[Fraction]] = {}
        for d, (a, b) in self._terms.items():
            for e, (c, f) in other._terms.items():
                g = gcd(d, e)
                de = (d // g) * (e // g)
                slot = out.setdefault(de, [Fraction(0), Fraction(0)])
                slot[0] += g * (a * c - b * f)
                slot[1] += g * (a * f + b * c)
        return Surd({d: (a, b) for d, (a, b) in out.items()})

    __rmul__ = __mul__

    def __truediv__(self, other) -> Surd:
        # division by rationals only; the ring has no cheap general inverse
        if isinstance(other, Surd):
            if not other.is_rational():
                raise InvalidScalarError("division by a non-rational Surd is not supported")
            other = other.to_fraction()
        q = as_fraction(other)
        if q == 0:
            raise ZeroDivisionError("Surd division by zero")
        return self * (1 / q)

    def __pow__(self, k: int) -> Surd:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Surd):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Surd.rational(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "terms": [
                {"d": d, "re": _frac_str(a), "im": _frac_str(b)}
                for d, (a, b) in self._terms.items()
            ]
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> Surd:
        return cls.normalize((t["d"], Fraction(t["re"]), Fraction(t["im"])) for t in obj["terms"])

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, (a, b) in self._terms.items():
            if b == 0:
                coef = _frac_str(a)
            elif a == 0:
                coef = f"{_frac_str(b)}*i"
            else:
                coef = f"({_frac_str(a)}+{_frac_str(b)}*i)"
            parts.append(coef if d == 1 else f"{coef}*sqrt({d})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Surd('{self}')"

    _TERM = re.compile(
        r"^(?:\((?P<a>-?\d+(?:/\d+)?)\+(?P<b>-?\d+(?:/\d+)?)\*i\)"
        r"|(?P<im>-?\d+(?:/\d+)?)\*i|(?P<re>-?\d+(?:/\d+)?))"
        r"(?:\*sqrt\((?P<d>\d+)\))?$"
    )

    @classmethod
    def parse(cls, text: str) -> Surd:
        """Inverse of ``str``."""
        text = text.strip()
        if text == "0":
            return ZERO
        raw = []
        for chunk in text.split(" + "):
            m = cls._TERM.match(chunk.strip())
            if m is None:
                raise InvalidScalarError(f"cannot parse Surd term {chunk!r}")
            d = int(m["d"]) if m["d"] else 1
            if m["a"] is not None:
                raw.append((d, Fraction(m["a"]), Fraction(m["b"])))
            elif m["im"] is not None:
                raw.append((d, 0, Fraction(m["im"])))
            else:
                raw.append((d, Fraction(m["re"]), 0))
        return cls.normalize(raw)


ZERO = Surd()
ONE = Surd({1: (1, 0)})
I = Surd({1: (0, 1)})
SQRT2 = Surd({2: (1, 0)})

Surd.ZERO = ZERO
Surd.ONE = ONE
Surd.I = I
Surd.SQRT2 = SQRT2
