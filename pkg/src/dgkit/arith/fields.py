"""Coefficient fields: the rationals and prime fields.

Rational scalars are plain :class:`fractions.Fraction` objects.  Prime field
scalars are :class:`ModInt` values that carry their modulus, so the usual
arithmetic operators work uniformly on every scalar type in the package.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..errors import ParseError


class ModInt:
    """An element of F_p, stored as its representative in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "ModInt":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return ModInt(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModInt(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ModInt(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            o = self._coerce(other)
            return (o - self.v) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


class RationalField:
    """The field Q with :class:`Fraction` elements."""

    name = "Q"
    characteristic = 0
    is_field = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @property
    def field(self):
        return self

    def __call__(self, value) -> Fraction:
        if type(value) is Fraction:
            return value
        if isinstance(value, str):
            return _parse_rational(value)
        if isinstance(value, ModInt):
            raise TypeError("cannot coerce a prime field element into Q")
        return Fraction(value)

    def is_zero(self, x) -> bool:
        return x == 0

    def format(self, x) -> str:
        return str(Fraction(x))

    def parse(self, text: str) -> Fraction:
        return _parse_rational(text)

    def random_element(self, rng, bound: int = 5) -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p with :class:`ModInt` elements."""

    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = ModInt(0, p)
        self.one = ModInt(1, p)

    @property
    def field(self):
        return self

    def __call__(self, value) -> ModInt:
        if isinstance(value, ModInt):
            if value.p != self.p:
                raise ValueError(f"element of F_{value.p} is not in F_{self.p}")
            return value
        if isinstance(value, str):
            value = _parse_rational(value)
        if isinstance(value, Fraction):
            return ModInt(value.numerator, self.p) / value.denominator
        return ModInt(int(value), self.p)

    def is_zero(self, x) -> bool:
        return x == 0

    def format(self, x) -> str:
        return str(self(x).v)

    def parse(self, text: str) -> ModInt:
        return self(_parse_rational(text))

    def random_element(self, rng, bound: int | None = None) -> ModInt:
        return ModInt(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str, prime: int | None = None):
    """Resolve a field tag such as ``"Q"``, ``"Fp"`` (with ``prime``) or ``"F7"``."""
    t = tag.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t in ("Fp", "GF"):
        if prime is None:
            raise ValueError("field tag 'Fp' needs a prime")
        return GF(prime)
    if t.startswith("F") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise ValueError(f"unknown field tag {tag!r}")
