"""Exact commutative coefficient rings.

Three kinds of scalars are used throughout the package:

* rationals, represented by Python ``int`` and :class:`fractions.Fraction`
  (the ring tag is :data:`QQ`);
* sparse multivariate polynomials with rational coefficients over a fixed
  alphabet (:class:`MPoly`, tagged by a :class:`PolyRing`);
* dual numbers ``a + eps*b`` with ``eps**2 == 0`` over either of the above
  (:class:`Dual`, tagged by a :class:`DualRing`).

Library code treats scalars by duck typing: anything supporting ``+``, ``-``,
``*``, ``==`` and truthiness works, and the integers ``0`` and ``1`` serve as
universal zero and one.  The ring objects exist for parsing, formatting and
compatibility checks.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DomainError, ParseError

Rational = Fraction

# Exponents are packed into one Python int, ``_BITS`` bits per variable, so
# that multiplying two monomials is a single integer addition.
_BITS = 16
_MASK = (1 << _BITS) - 1
_MAX_EXP = _MASK


def _fmt_rational(c: int | Fraction) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _normalize_number(c: int | Fraction) -> int | Fraction:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class RationalField:
    """Ring tag for rational scalars (``int`` or ``Fraction`` values)."""

    name = "QQ"

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def coerce(self, x: object) -> int | Fraction:
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise DomainError(f"cannot coerce {x!r} into QQ")
        return _normalize_number(x)

    def parse(self, text: str) -> int | Fraction:
        value = parse_scalar(text, self)
        return self.coerce(value)

    def format(self, x: object) -> str:
        return _fmt_rational(self.coerce(x))


QQ = RationalField()


class PolyRing:
    """Polynomial ring ``QQ[names...]`` over a fixed, ordered alphabet.

    The alphabet order defines the graded-lexicographic term order used for
    canonical string output.
    """

    __slots__ = ("names", "index", "_hash")

    def __init__(self, names: Iterable[str]) -> None:
        names = tuple(names)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm) or nm == "eps":
                raise DomainError(f"invalid variable name {nm!r}")
        self.names = names
        self.index = {nm: i for i, nm in enumerate(names)}
        self._hash = hash(("PolyRing", names))

    @property
    def name(self) -> str:
        return "QQ[" + ",".join(self.names) + "]"

    def __repr__(self) -> str:
        return f"PolyRing({list(self.names)!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyRing) and other.names == self.names

    def __hash__(self) -> int:
        return self._hash

    def gen(self, name: str) -> MPoly:
        try:
            i = self.index[name]
        except KeyError:
            raise DomainError(f"{name!r} is not a variable of {self.name}") from None
        return MPoly(self, {1 << (_BITS * i): 1})

    def gens(self) -> tuple[MPoly, ...]:
        return tuple(self.gen(nm) for nm in self.names)

    def const(self, c: int | Fraction) -> MPoly:
        return MPoly(self, {0: c} if c else {})

    def coerce(self, x: object) -> MPoly:
        if isinstance(x, MPoly):
            if x.ring != self:
                raise DomainError(f"polynomial over {x.ring.name} is not in {self.name}")
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return self.const(x)
        raise DomainError(f"cannot coerce {x!r} into {self.name}")

    def parse(self, text: str) -> MPoly:
        return self.coerce(parse_scalar(text, self))

    def format(self, x: object) -> str:
        return str(self.coerce(x))

    def monomial(self, exponents: Mapping[str, int]) -> int:
        """Packed exponent key for ``{name: exponent}``."""
        key = 0
        for nm, e in exponents.items():
            if e < 0 or e > _MAX_EXP:
                raise DomainError(f"exponent {e} out of range")
            key |= e << (_BITS * self.index[nm])
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        out = []
        for _ in self.names:
            out.append(key & _MASK)
            key >>= _BITS
        return tuple(out)


Number = Union[int, Fraction]


class MPoly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps a packed exponent key (see :meth:`PolyRing.monomial`) to a
    nonzero coefficient.  Instances should be treated as immutable.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[int, Number] | None = None) -> None:
        self.ring = ring
        self.terms = terms if terms is not None else {}

    # -- helpers ---------------------------------------------------------
    def _other_terms(self, other: object) -> dict[int, Number] | None:
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise DomainError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")
            return other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return {0: other} if other else {}
        return None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: object) -> MPoly:
        ot = self._other_terms(other)
        if ot is None:
            return NotImplemented
        if not ot:
            return self
        out = dict(self.terms)
        for k, c in ot.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: object) -> MPoly:
        ot = self._other_terms(other)
        if ot is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in ot.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MPoly(self.ring, out)

    def __rsub__(self, other: object) -> MPoly:
        return (-self).__add__(other)

    def __mul__(self, other: object) -> MPoly:
        ot = self._other_terms(other)
        if ot is None:
            return NotImplemented
        a, b = self.terms, ot
        if not a or not b:
            return MPoly(self.ring, {})
        if len(b) == 1 and 0 in b:
            c = b[0]
            return MPoly(self.ring, {k: v * c for k, v in a.items()})
        if len(a) == 1 and 0 in a:
            c = a[0]
            return MPoly(self.ring, {k: v * c for k, v in b.items()})
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Number] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MPoly(self.ring, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> MPoly:
        if isinstance(other, bool) or not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise DomainError("division by zero")
        inv = Fraction(1) / other
        return MPoly(self.ring, {k: _normalize_number(c * inv) for k, c in self.terms.items()})

    def __pow__(self, e: int) -> MPoly:
        if not isinstance(e, int) or e < 0:
            raise DomainError("polynomial powers must be non-negative integers")
        for k in self.terms:
            if max(self.ring.unpack(k), default=0) * e > _MAX_EXP:
                raise DomainError("exponent overflow")
        result = MPoly(self.ring, {0: 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    def __hash__(self) -> int:
        if not self.terms:
            return hash(0)
        if len(self.terms) == 1 and 0 in self.terms:
            return hash(self.terms[0])
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection ------------------------------------------------------
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self) -> Number:
        return self.terms.get(0, 0)

    def coefficient(self, exponents: Mapping[str, int]) -> Number:
        """Coefficient of the monomial ``{name: exponent}`` (0 if absent)."""
        return self.terms.get(self.ring.monomial(exponents), 0)

    def items(self) -> list[tuple[dict[str, int], Number]]:
        """Terms as ``({name: exponent}, coefficient)`` in canonical order."""
        out = []
        for k in self._sorted_keys():
            exps = self.ring.unpack(k)
            out.append(({nm: e for nm, e in zip(self.ring.names, exps) if e}, self.terms[k]))
        return out

    def total_degree(self) -> int:
        return max((sum(self.ring.unpack(k)) for k in self.terms), default=0)

    def _sorted_keys(self) -> list[int]:
        def order(k: int) -> tuple[int, tuple[int, ...]]:
            exps = self.ring.unpack(k)
            return (-sum(exps), tuple(-e for e in exps))

        return sorted(self.terms, key=order)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k in self._sorted_keys():
            c = self.terms[k]
            exps = self.ring.unpack(k)
            factors = [nm if e == 1 else f"{nm}^{e}" for nm, e in zip(self.ring.names, exps) if e]
            mono = "*".join(factors)
            if not mono:
                term = _fmt_rational(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = _fmt_rational(c) + "*" + mono
            if pieces and not term.startswith("-"):
                term = "+" + term
            pieces.append(term)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"MPoly({self.ring.name}, {self})"


class DualRing:
    """Ring tag for dual numbers over ``base``."""

    __slots__ = ("base",)

    def __init__(self, base: RationalField | PolyRing) -> None:
        self.base = base

    @property
    def name(self) -> str:
        return f"{self.base.name}[eps]"

    def __repr__(self) -> str:
        return f"DualRing({self.base!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DualRing) and other.base == self.base

    def __hash__(self) -> int:
        return hash(("DualRing", self.base))

    def coerce(self, x: object) -> Dual:
        if isinstance(x, Dual):
            return Dual(self.base.coerce(x.a), self.base.coerce(x.b))
        return Dual(self.base.coerce(x), 0)

    def parse(self, text: str) -> Dual:
        return self.coerce(parse_scalar(text, self))

    def format(self, x: object) -> str:
        d = self.coerce(x)
        fa = self.base.format(d.a)
        if not d.b:
            return fa
        return f"({fa})+({self.base.format(d.b)})*eps"


class Dual:
    """Dual number ``a + eps*b`` with ``eps**2 == 0``."""

    __slots__ = ("a", "b")

    def __init__(self, a: object, b: object = 0) -> None:
        self.a = a
        self.b = b

    def _split(self, other: object) -> tuple[object, object] | None:
        if isinstance(other, Dual):
            return other.a, other.b
        if isinstance(other, (int, Fraction, MPoly)) and not isinstance(other, bool):
            return other, 0
        return None

    def __add__(self, other: object) -> Dual:
        s = self._split(other)
        if s is None:
            return NotImplemented
        return Dual(self.a + s[0], self.b + s[1])

    __radd__ = __add__

    def __neg__(self) -> Dual:
        return Dual(-self.a, -self.b)

    def __sub__(self, other: object) -> Dual:
        s = self._split(other)
        if s is None:
            return NotImplemented
        return Dual(self.a - s[0], self.b - s[1])

    def __rsub__(self, other: object) -> Dual:
        return (-self).__add__(other)

    def __mul__(self, other: object) -> Dual:
        s = self._split(other)
        if s is None:
            return NotImplemented
        a2, b2 = s
        return Dual(self.a * a2, self.a * b2 + self.b * a2)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Dual:
        if isinstance(other, bool) or not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise DomainError("division by zero")
        inv = Fraction(1) / other
        return Dual(self.a * inv, self.b * inv)

    def __pow__(self, e: int) -> Dual:
        if not isinstance(e, int) or e < 0:
            raise DomainError("dual powers must be non-negative integers")
        if e == 0:
            return Dual(1, 0)
        # (a + eps b)^e = a^e + eps * e a^(e-1) b
        return Dual(self.a**e, e * self.a ** (e - 1) * self.b)

    def __eq__(self, other: object) -> bool:
        s = self._split(other)
        if s is None:
            return NotImplemented
        return self.a == s[0] and self.b == s[1]

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        return f"Dual({self.a!r}, {self.b!r})"


Ring = Union[RationalField, PolyRing, DualRing]
Scalar = Union[int, Fraction, MPoly, Dual]


def ring_of(x: object) -> Ring:
    """Smallest ring tag containing the scalar ``x``."""
    if isinstance(x, MPoly):
        return x.ring
    if isinstance(x, Dual):
        base = common_ring(ring_of(x.a), ring_of(x.b))
        if isinstance(base, DualRing):
            raise DomainError("nested dual numbers are not supported")
        return DualRing(base)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QQ
    raise DomainError(f"{x!r} is not a supported scalar")


def common_ring(r1: Ring, r2: Ring) -> Ring:
    """Ring containing both ``r1`` and ``r2``.

    Only the embeddings ``QQ -> R`` and ``R -> R[eps]`` are recognised; any
    other combination is a mismatch.
    """
    if r1 == r2:
        return r1
    if r1 == QQ:
        return r2
    if r2 == QQ:
        return r1
    if isinstance(r1, DualRing) and not isinstance(r2, DualRing):
        if common_ring(r1.base, r2) == r1.base:
            return r1
    if isinstance(r2, DualRing) and not isinstance(r1, DualRing):
        if common_ring(r2.base, r1) == r2.base:
            return r2
    raise DomainError(f"incompatible rings {r1.name} and {r2.name}")


def parse_ring(text: str) -> Ring:
    """Inverse of ``ring.name``: ``QQ``, ``QQ[q,t]``, ``QQ[eps]``, ``QQ[q][eps]``."""
    s = text.strip()
    dual = False
    if s.endswith("[eps]"):
        dual = True
        s = s[: -len("[eps]")]
    if s == "QQ":
        base: RationalField | PolyRing = QQ
    else:
        m = re.fullmatch(r"QQ\[([A-Za-z0-9_,\s]*)\]", s)
        if not m:
            raise ParseError("unrecognised ring", text, 0)
        names = [nm.strip() for nm in m.group(1).split(",") if nm.strip()]
        try:
            base = PolyRing(names)
        except DomainError as exc:
            raise ParseError(str(exc), text, 0) from None
    return DualRing(base) if dual else base


def format_scalar(x: object, ring: Ring | None = None) -> str:
    ring = ring if ring is not None else ring_of(x)
    return ring.format(x)


# -- scalar expression parser ----------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _ExprParser:
    """Recursive-descent parser for ``+ - * / ^`` expressions with parentheses.

    Numbers are rationals, names are resolved against the target ring, and
    ``/`` is only allowed with a rational right-hand side.
    """

    def __init__(self, text: str, ring: Ring) -> None:
        self.text = text
        self.ring = ring
        self.tokens: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
        self.i = 0

    def error(self, msg: str) -> ParseError:
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        return ParseError(msg, self.text, pos)

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def accept(self, op: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == op:
            self.i += 1
            return True
        return False

    def parse(self) -> object:
        if not self.tokens:
            raise ParseError("empty scalar", self.text, 0)
        value = self.expr()
        if self.peek() is not None:
            raise self.error("unexpected token")
        return value

    def expr(self) -> object:
        if self.accept("-"):
            value = -self.term()
        else:
            self.accept("+")
            value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> object:
        value = self.power()
        while True:
            if self.accept("*"):
                value = value * self.power()
            elif self.accept("/"):
                at = self.i
                divisor = self.power()
                if isinstance(divisor, bool) or not isinstance(divisor, (int, Fraction)):
                    self.i = at
                    raise self.error("division only by rational numbers")
                if divisor == 0:
                    self.i = at
                    raise self.error("division by zero")
                if isinstance(value, (int, Fraction)):
                    value = _normalize_number(Fraction(value) / divisor)
                else:
                    value = value / divisor
            else:
                return value

    def power(self) -> object:
        base = self.atom()
        if self.accept("^"):
            tok = self.peek()
            if tok is None or tok[0] != "num":
                raise self.error("expected integer exponent")
            self.i += 1
            return base ** int(tok[1])
        return base

    def atom(self) -> object:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        kind, val, _ = tok
        if kind == "num":
            self.i += 1
            return int(val)
        if kind == "name":
            self.i += 1
            return self.resolve(val)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return value
        if self.accept("-"):
            return -self.atom()
        raise self.error(f"unexpected {val!r}")

    def resolve(self, name: str) -> object:
        ring = self.ring
        if isinstance(ring, DualRing):
            if name == "eps":
                return Dual(0, 1)
            ring = ring.base
        if isinstance(ring, PolyRing) and name in ring.index:
            return ring.gen(name)
        self.i -= 1
        raise self.error(f"unknown symbol {name!r} for ring {self.ring.name}")


def parse_scalar(text: str, ring: Ring = QQ) -> Scalar:
    """Parse an expression such as ``-19/12*l2^2*m3`` into a scalar of ``ring``."""
    return _ExprParser(text, ring).parse()
