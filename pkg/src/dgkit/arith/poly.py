"""Sparse multivariate polynomials over Q or F_p.

A polynomial is a dict from exponent tuples to nonzero coefficients.  The
monomial order is graded lexicographic with the declared variable order, so
``x^2 > x*y > y^2 > x > y > 1`` for variables ``x, y``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .fields import ModInt


def grlex_key(exp):
    return (sum(exp), exp)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: "PolyRing", terms: dict):
        self.ring = ring
        self.terms = terms

    # construction helpers -------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            return self.ring(other)
        if isinstance(other, (int, Fraction, ModInt)):
            return self.ring.constant(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ModInt)):
            c = self.ring.field(other)
            if c == 0:
                return Poly(self.ring, {})
            return Poly(self.ring, {e: v * c for e, v in self.terms.items()})
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ring, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of polynomials are not supported")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        """Exact division; raises ``ArithmeticError`` if there is a remainder."""
        if isinstance(other, (int, Fraction, ModInt)):
            c = self.ring.field(other)
            if c == 0:
                raise ZeroDivisionError("polynomial division by zero")
            inv = self.ring.field.one / c
            return self * inv
        o = self._lift(other)
        if o is NotImplemented:
            return o
        q, r = self.divmod_grlex(o)
        if not r.is_zero():
            raise ArithmeticError(f"{o} does not divide {self}")
        return q

    def divmod_grlex(self, d: "Poly"):
        """Division by a single polynomial in grlex order, returns (q, r)."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_e, lead_c = d.leading_term()
        q: dict = {}
        r: dict = {}
        p = Poly(self.ring, dict(self.terms))
        while not p.is_zero():
            e, c = p.leading_term()
            if all(a >= b for a, b in zip(e, lead_e)):
                te = tuple(a - b for a, b in zip(e, lead_e))
                tc = c / lead_c
                q[te] = q.get(te, 0) + tc
                p = p - Poly(self.ring, {te: tc}) * d
            else:
                r[e] = c
                p = Poly(self.ring, {k: v for k, v in p.terms.items() if k != e})
        return (Poly(self.ring, {e: c for e, c in q.items() if c != 0}),
                Poly(self.ring, r))

    # comparisons ----------------------------------------------------------

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, Poly) else other
        if o is NotImplemented:
            return NotImplemented
        if o.ring != self.ring:
            return False
        return self.terms == o.terms

    def __hash__(self):
        if not self.terms:
            return hash(0)
        if len(self.terms) == 1 and self.is_constant():
            return hash(next(iter(self.terms.values())))
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """The coefficient of 1; raises if the polynomial is not constant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        zero = (0,) * self.ring.nvars
        return self.terms.get(zero, self.ring.field.zero)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_term(self):
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def monomials(self):
        """Exponent tuples in decreasing grlex order."""
        return sorted(self.terms, key=grlex_key, reverse=True)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self * (self.ring.field.one / c)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return [self.ring.names[i] for i in sorted(used)]

    # calculus and substitution ---------------------------------------------

    def diff(self, var) -> "Poly":
        i = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Poly(self.ring, {e: c for e, c in out.items() if c != 0})

    def evaluate(self, values):
        """Evaluate at a point given as a sequence or a name -> value mapping.

        Values may be field elements or polynomials (from any ring); the
        result lives wherever the values' arithmetic lands.
        """
        if isinstance(values, dict):
            vals = [values[n] for n in self.ring.names]
        else:
            vals = list(values)
        if len(vals) != self.ring.nvars:
            raise ValueError("wrong number of values")
        total = None
        for e, c in self.terms.items():
            term = c
            for v, a in zip(vals, e):
                if a:
                    term = term * (v ** a)
            total = term if total is None else total + term
        if total is None:
            return self.ring.field.zero
        return total

    def subs(self, mapping: dict) -> "Poly":
        """Substitute some variables by elements of this ring or scalars."""
        vals = [mapping.get(n, g) for n, g in zip(self.ring.names, self.ring.gens())]
        out = self.evaluate(vals)
        return self.ring(out)

    # printing -------------------------------------------------------------

    def __str__(self):
        return self.ring.format(self)

    def __repr__(self):
        return f"Poly({self.ring.format(self)!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class PolyRing:
    """Polynomial ring ``field[names]`` with grlex order on the given names."""

    is_field = False

    def __init__(self, field, names):
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"repeated variable names in {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"bad variable name {n!r}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        self.zero = Poly(self, {})
        self.one = Poly(self, {(0,) * self.nvars: field.one})
        self.characteristic = field.characteristic

    @property
    def name(self):
        return f"{self.field.name}[{','.join(self.names)}]"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.field == self.field
                and other.names == self.names)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)!r})"

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        if isinstance(var, Poly):
            (e,) = var.terms
            return e.index(1)
        return self._index[var]

    def gen(self, name) -> Poly:
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def constant(self, c) -> Poly:
        c = self.field(c)
        if c == 0:
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: c})

    def monomial(self, exp, coeff=1) -> Poly:
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c != 0 else {})

    def from_dict(self, terms: dict) -> Poly:
        out = {}
        for e, c in terms.items():
            c = self.field(c)
            if c != 0:
                e = tuple(e)
                if len(e) != self.nvars:
                    raise ValueError("exponent length does not match variable count")
                out[e] = c
        return Poly(self, out)

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            if value.ring.field != self.field:
                raise ValueError("coefficient fields differ")
            for n in value.variables():
                if n not in self._index:
                    raise ValueError(f"variable {n} is not in {self.name}")
            out = {}
            for e, c in value.terms.items():
                ne = [0] * self.nvars
                for n, a in zip(value.ring.names, e):  # only used names
                    if a:
                        ne[self._index[n]] = a
                out[tuple(ne)] = c
            return Poly(self, out)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def is_zero(self, x) -> bool:
        return x == 0

    def random_element(self, rng, degree: int = 2, terms: int = 3, bound: int = 5) -> Poly:
        out = self.zero
        for _ in range(terms):
            e = [0] * self.nvars
            for _ in range(rng.randint(0, degree)):
                e[rng.randrange(self.nvars)] += 1
            out = out + self.monomial(e, self.field.random_element(rng, bound))
        return out

    # text format ----------------------------------------------------------

    def format(self, p) -> str:
        p = self(p)
        if p.is_zero():
            return "0"
        parts = []
        for e in p.monomials():
            c = p.terms[e]
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(self.names, e) if a
            )
            neg = False
            if isinstance(c, Fraction) and c < 0:
                neg, c = True, -c
            cs = self.field.format(c)
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def parse(self, text: str) -> Poly:
        """Parse ``c*x^2*y``-style sums; parentheses and unary minus allowed."""
        tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            num, ident, sym = m.groups()
            if num is not None:
                tokens.append(("num", int(num)))
            elif ident is not None:
                tokens.append(("var", ident))
            else:
                tokens.append(("sym", sym))
            pos = m.end()
        if text[pos:].strip():
            raise ParseError(f"cannot parse polynomial {text!r}")
        parser = _Parser(self, tokens, text)
        result = parser.expr()
        if parser.i != len(tokens):
            raise ParseError(f"trailing input in polynomial {text!r}")
        return result


class _Parser:
    def __init__(self, ring, tokens, text):
        self.ring = ring
        self.tokens = tokens
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self):
        raise ParseError(f"cannot parse polynomial {self.text!r}")

    def expr(self):
        if self.peek() == (None, None):
            self.fail()
        result = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            _, op = self.take()
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.factor()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            _, op = self.take()
            f = self.factor()
            if op == "*":
                result = result * f
            else:
                if not f.is_constant() or f.is_zero():
                    self.fail()
                result = result / f.constant_value()
        return result

    def factor(self):
        kind, val = self.peek()
        if (kind, val) in (("sym", "-"), ("sym", "+")):
            self.take()
            f = self.factor()
            return -f if val == "-" else f
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.fail()
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "var":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r} in {self.text!r}")
            return self.ring.gen(val)
        if (kind, val) == ("sym", "("):
            inner = self.expr()
            if self.take() != ("sym", ")"):
                self.fail()
            return inner
        self.fail()
