"""The Hopf algebra of semi-multiplicative functions, with its antipode and quotients.

``T`` is the polynomial algebra on generators ``X_p`` for every non-crossing
partition ``p`` other than a one-block partition (``X_{1_n} = 1``).  The
comultiplication is::

    Delta(X_p) = sum_{s >= p} M(p, s) (x) X_s,   M(p, s) = prod_{W in s} X_{p_W}

Characters of ``T`` are exactly the group elements of
:mod:`nckernel.incidence_group`.  The antipode is available through both
Bogoliubov recursions, the sum over all chains, and the cancellation-free sum
over efficient chains.  :class:`SymPoly` and :class:`ZPoly` model the two
quotient targets reached by :func:`psi_to_sym` and :func:`phi_to_z`.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Callable, ClassVar, Hashable, Iterable, Iterator, Sequence, TypeVar

from .coeff_rings import Scalar, format_scalar
from .errors import DomainError
from .incidence_group import SemiMultFn
from .nc_lattice import (
    Chain,
    Partition,
    above,
    below,
    chains_between,
    enumerate_nc,
    is_irreducible,
    kreweras,
    leq,
    ll,
    one,
    relative_kreweras,
    restriction_profile,
)

Monomial = tuple  # sorted tuple of labels, repeated for powers
P = TypeVar("P", bound="LabelPoly")


class LabelPoly:
    """Commutative polynomial with rational coefficients on hashable labels.

    ``terms`` maps a monomial (sorted tuple of labels, with repetition) to a
    nonzero coefficient.  Subclasses fix the label type.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Scalar] | None = None) -> None:
        self.terms = terms if terms is not None else {}

    # -- label conventions, overridden by subclasses ----------------------
    @staticmethod
    def label_key(label: Hashable) -> object:
        return label

    @staticmethod
    def label_degree(label: Hashable) -> int:
        return 1

    @staticmethod
    def label_text(label: Hashable) -> str:
        return str(label)

    # -- constructors -----------------------------------------------------
    @classmethod
    def unit(cls: type[P]) -> P:
        return cls({(): 1})

    @classmethod
    def from_monomial(cls: type[P], labels: Iterable[Hashable], coeff: Scalar = 1) -> P:
        if not coeff:
            return cls({})
        return cls({cls.merge((), tuple(labels)): coeff})

    @classmethod
    def merge(cls, a: Monomial, b: Monomial) -> Monomial:
        if not a:
            return tuple(sorted(b, key=cls.label_key)) if len(b) > 1 else b
        if not b:
            return a
        return tuple(sorted(a + b, key=cls.label_key))

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self: P, other: object) -> dict[Monomial, Scalar] | None:
        if type(other) is type(self):
            return other.terms  # type: ignore[attr-defined]
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return {(): other} if other else {}
        return None

    def __add__(self: P, other: object) -> P:
        ot = self._coerce(other)
        if ot is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in ot.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self: P) -> P:
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self: P, other: object) -> P:
        ot = self._coerce(other)
        if ot is None:
            return NotImplemented
        return self + type(self)({k: -c for k, c in ot.items()})

    def __rsub__(self: P, other: object) -> P:
        return (-self) + other

    def __mul__(self: P, other: object) -> P:
        ot = self._coerce(other)
        if ot is None:
            return NotImplemented
        out: dict[Monomial, Scalar] = {}
        merge = type(self).merge
        for ka, ca in self.terms.items():
            for kb, cb in ot.items():
                k = merge(ka, kb)
                out[k] = out.get(k, 0) + ca * cb
        return type(self)({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self: P, e: int) -> P:
        result = type(self).unit()
        for _ in range(e):
            result = result * self
        return result

    def times_monomial(self: P, mono: Monomial, coeff: Scalar = 1) -> P:
        merge = type(self).merge
        return type(self)({merge(mono, k): c * coeff for k, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        ot = self._coerce(other)
        if ot is None:
            return NotImplemented
        return self.terms == ot

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -------------------------------------------------------------
    def monomial_degree(self, mono: Monomial) -> int:
        return sum(self.label_degree(x) for x in mono)

    def degrees(self) -> set[int]:
        return {self.monomial_degree(k) for k in self.terms}

    def homogeneous_part(self: P, degree: int) -> P:
        return type(self)({k: c for k, c in self.terms.items() if self.monomial_degree(k) == degree})

    def constant_term(self) -> Scalar:
        return self.terms.get((), 0)

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        key = type(self).label_key
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), [key(x) for x in kv[0]]))

    def to_json_terms(self) -> list[dict[str, object]]:
        return [
            {"coeff": format_scalar(c), "monomial": [self.label_text(x) for x in mono]}
            for mono, c in self.sorted_terms()
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            body = "*".join(self._gen_text(x) for x in mono)
            cs = format_scalar(c)
            if not body:
                term = cs
            elif c == 1:
                term = body
            elif c == -1:
                term = "-" + body
            else:
                term = f"{cs}*{body}"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts)

    def _gen_text(self, label: Hashable) -> str:
        return self.label_text(label)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class TPoly(LabelPoly):
    """Element of ``T``: labels are partitions, never one-block ones."""

    __slots__ = ()

    @staticmethod
    def label_key(label: Partition) -> object:
        return label.key

    @staticmethod
    def label_degree(label: Partition) -> int:
        return len(label) - 1

    @staticmethod
    def label_text(label: Partition) -> str:
        return str(label)

    def _gen_text(self, label: Partition) -> str:
        return f"X{label}"


class ZPoly(TPoly):
    """Element of the quotient on irreducible labels."""

    __slots__ = ()

    def _gen_text(self, label: Partition) -> str:
        return f"Z{label}"


class SymPoly(LabelPoly):
    """Element of ``Sym = QQ[Y_2, Y_3, ...]`` (``Y_1 = 1``); labels are integers."""

    __slots__ = ()

    @staticmethod
    def label_degree(label: int) -> int:
        return label - 1

    @staticmethod
    def label_text(label: int) -> str:
        return str(label)

    def _gen_text(self, label: int) -> str:
        return f"Y{label}"


# -- generators ------------------------------------------------------------------


def X(p: Partition) -> TPoly:
    """The generator ``X_p`` (the unit when ``p`` has one block)."""
    return TPoly.unit() if p.is_one() else TPoly({(p,): 1})


def Z(p: Partition) -> ZPoly:
    """The generator ``Z_p`` for irreducible ``p``."""
    if not is_irreducible(p):
        raise DomainError(f"{p} is not irreducible")
    return ZPoly.unit() if p.is_one() else ZPoly({(p,): 1})


def Y(k: int) -> SymPoly:
    if k < 1:
        raise DomainError("Y_k needs k >= 1")
    return SymPoly.unit() if k == 1 else SymPoly({(k,): 1})


def Y_of(p: Partition) -> SymPoly:
    """``Y_p = prod_{V in p} Y_|V|``."""
    return SymPoly.from_monomial(len(b) for b in p.blocks if len(b) > 1)


def M_monomial(p: Partition, s: Partition) -> Monomial:
    """Monomial of ``M(p, s) = prod_{W in s} X_{p_W}`` (``p <= s`` assumed)."""
    return TPoly.merge((), tuple(r for r in restriction_profile(p, s) if not r.is_one()))


def M(p: Partition, s: Partition) -> TPoly:
    return TPoly({M_monomial(p, s): 1})


def _chain_monomial(chain: Sequence[Partition]) -> Monomial:
    labels: list[Partition] = []
    for lo, hi in zip(chain, chain[1:]):
        labels.extend(r for r in restriction_profile(lo, hi) if not r.is_one())
    return TPoly.merge((), tuple(labels))


# -- tensors --------------------------------------------------------------------------


class Tensor:
    """Element of a k-fold tensor power of a :class:`LabelPoly` algebra."""

    __slots__ = ("poly_cls", "terms")

    def __init__(self, poly_cls: type[LabelPoly], terms: dict[tuple[Monomial, ...], Scalar] | None = None) -> None:
        self.poly_cls = poly_cls
        self.terms = terms if terms is not None else {}

    @classmethod
    def pure(cls, *factors: LabelPoly) -> Tensor:
        """``f_1 (x) f_2 (x) ...`` expanded."""
        poly_cls = type(factors[0])
        out: dict[tuple[Monomial, ...], Scalar] = {(): 1}
        for f in factors:
            nxt: dict[tuple[Monomial, ...], Scalar] = {}
            for key, c in out.items():
                for mono, d in f.terms.items():
                    nxt[key + (mono,)] = nxt.get(key + (mono,), 0) + c * d
            out = nxt
        return cls(poly_cls, {k: v for k, v in out.items() if v})

    def __add__(self, other: Tensor) -> Tensor:
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Tensor(self.poly_cls, out)

    def __sub__(self, other: Tensor) -> Tensor:
        return self + Tensor(other.poly_cls, {k: -c for k, c in other.terms.items()})

    def __mul__(self, other: Tensor) -> Tensor:
        merge = self.poly_cls.merge
        out: dict[tuple[Monomial, ...], Scalar] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(merge(a, b) for a, b in zip(ka, kb))
                out[k] = out.get(k, 0) + ca * cb
        return Tensor(self.poly_cls, {k: v for k, v in out.items() if v})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def apply_slot(self, slot: int, fn: Callable[[Monomial], Tensor]) -> Tensor:
        """Replace slot ``slot`` by the tensor ``fn(monomial)``, widening the arity."""
        out: dict[tuple[Monomial, ...], Scalar] = {}
        cache: dict[Monomial, Tensor] = {}
        for key, c in self.terms.items():
            mono = key[slot]
            t = cache.get(mono)
            if t is None:
                t = cache[mono] = fn(mono)
            for sub, d in t.terms.items():
                k = key[:slot] + sub + key[slot + 1 :]
                out[k] = out.get(k, 0) + c * d
        return Tensor(self.poly_cls, {k: v for k, v in out.items() if v})

    def contract(self, maps: Sequence[Callable[[Monomial], LabelPoly]], target: type[LabelPoly] | None = None) -> LabelPoly:
        """``m o (F_1 (x) F_2 (x) ...)``: apply one map per slot and multiply."""
        target = target or self.poly_cls
        total = target()
        for key, c in self.terms.items():
            prod = target.unit()
            for mono, f in zip(key, maps):
                prod = prod * f(mono)
                if not prod:
                    break
            total = total + prod * c if prod else total
        return total

    def map_slots(self, fn: Callable[[Monomial], LabelPoly], poly_cls: type[LabelPoly]) -> Tensor:
        """Apply the algebra map ``fn`` in every slot."""
        out = Tensor(poly_cls, {})
        for key, c in self.terms.items():
            images = [fn(m) for m in key]
            piece = Tensor.pure(*images) if all(images) else Tensor(poly_cls, {})
            out = out + Tensor(poly_cls, {k: v * c for k, v in piece.terms.items()})
        return out


# -- coalgebra structure of T -------------------------------------------------------------


@lru_cache(maxsize=None)
def _delta_generator(p: Partition) -> Tensor:
    terms: dict[tuple[Monomial, ...], Scalar] = {}
    for s in above(p):
        right: Monomial = () if s.is_one() else (s,)
        key = (M_monomial(p, s), right)
        terms[key] = terms.get(key, 0) + 1
    return Tensor(TPoly, terms)


def _delta_monomial(mono: Monomial, generator: Callable[[Partition], Tensor], poly_cls: type[LabelPoly]) -> Tensor:
    result = Tensor(poly_cls, {((), ()): 1})
    for label in mono:
        result = result * generator(label)
    return result


def comultiply(x: TPoly) -> Tensor:
    """``Delta`` extended multiplicatively from the generators."""
    out = Tensor(TPoly, {})
    for mono, c in x.terms.items():
        piece = _delta_monomial(mono, _delta_generator, TPoly)
        out = out + Tensor(TPoly, {k: v * c for k, v in piece.terms.items()})
    return out


def comultiply_monomial(mono: Monomial) -> Tensor:
    return _delta_monomial(mono, _delta_generator, TPoly)


def delta_M(p: Partition, t: Partition) -> Tensor:
    """``sum_{p <= s <= t} M(p, s) (x) M(s, t)``, the expected value of ``Delta(M(p, t))``."""
    terms: dict[tuple[Monomial, ...], Scalar] = {}
    for s in above(p):
        if leq(s, t):
            key = (M_monomial(p, s), M_monomial(s, t))
            terms[key] = terms.get(key, 0) + 1
    return Tensor(TPoly, terms)


def counit(x: LabelPoly) -> Scalar:
    """Algebra map killing every generator: the constant term."""
    return x.constant_term()


def is_primitive(x: TPoly) -> bool:
    """Whether ``Delta(x) == x (x) 1 + 1 (x) x``."""
    one_t = TPoly.unit()
    expected = Tensor.pure(x, one_t) + Tensor.pure(one_t, x)
    return comultiply(x) == expected


# -- antipode -------------------------------------------------------------------------------

_left_cache: dict[Partition, TPoly] = {}
_right_cache: dict[Partition, TPoly] = {}


def _antipode_left(p: Partition) -> TPoly:
    """``S(X_p) = -X_p - sum_{p < s < 1} M(p, s) S(X_s)``."""
    cached = _left_cache.get(p)
    if cached is not None:
        return cached
    if p.is_one():
        return TPoly.unit()
    out: dict[Monomial, Scalar] = {(p,): -1}
    merge = TPoly.merge
    for s in above(p):
        if s == p or s.is_one():
            continue
        mono = M_monomial(p, s)
        for k, c in _antipode_left(s).terms.items():
            key = merge(mono, k)
            v = out.get(key, 0) - c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    result = TPoly(out)
    _left_cache[p] = result
    return result


def _antipode_right(p: Partition) -> TPoly:
    """``S(X_p) = -X_p - sum_{p < s < 1} S(M(p, s)) X_s``."""
    cached = _right_cache.get(p)
    if cached is not None:
        return cached
    if p.is_one():
        return TPoly.unit()
    result = -X(p)
    for s in above(p):
        if s == p or s.is_one():
            continue
        image = TPoly.unit()
        for r in restriction_profile(p, s):
            if not r.is_one():
                image = image * _antipode_right(r)
        result = result - image.times_monomial((s,))
    _right_cache[p] = result
    return result


def _extend(generator_map: Callable[[Partition], TPoly]) -> Callable[[TPoly], TPoly]:
    def apply(x: TPoly) -> TPoly:
        total = TPoly()
        for mono, c in x.terms.items():
            prod = TPoly.unit()
            for label in mono:
                prod = prod * generator_map(label)
            total = total + prod * c
        return total

    return apply


def antipode_bogoliubov(x: TPoly, side: str = "left") -> TPoly:
    """Antipode by the left or right Bogoliubov recursion, extended multiplicatively."""
    if side == "left":
        return _extend(_antipode_left)(x)
    if side == "right":
        return _extend(_antipode_right)(x)
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def antipode_chain_terms(p: Partition, efficient: bool) -> list[tuple[int, Monomial]]:
    """Signed monomials of the chain expansion of ``S(X_p)``, before collection.

    All chains contribute ``(-1)^length M_c``; efficient chains contribute
    ``(-1)^|new blocks| M_c``.
    """
    if p.is_one():
        raise DomainError("the antipode chain expansion needs p different from 1_n")
    out: list[tuple[int, Monomial]] = []
    for c in chains_between(p, one(p.n), efficient_only=efficient):
        exponent = len(c.new_blocks()) if efficient else c.length
        out.append((-1 if exponent % 2 else 1, _chain_monomial(c)))
    return out


def antipode_chains(p: Partition, efficient: bool = True) -> TPoly:
    """``S(X_p)`` summed over all chains or over efficient chains from ``p`` to ``1_n``."""
    total: dict[Monomial, Scalar] = {}
    for sign, mono in antipode_chain_terms(p, efficient):
        v = total.get(mono, 0) + sign
        if v:
            total[mono] = v
        else:
            total.pop(mono, None)
    return TPoly(total)


def antipode(x: TPoly) -> TPoly:
    """Default antipode (left recursion)."""
    return antipode_bogoliubov(x, "left")


def map_convolution(f: Callable[[Monomial], LabelPoly], g: Callable[[Monomial], LabelPoly], x: TPoly) -> TPoly:
    """``(F * G)(x) = m o (F (x) G) o Delta(x)`` for maps given on monomials."""
    return comultiply(x).contract([f, g], TPoly)  # type: ignore[return-value]


def identity_map(mono: Monomial) -> TPoly:
    return TPoly({mono: 1})


def antipode_map(mono: Monomial) -> TPoly:
    return antipode_bogoliubov(TPoly({mono: 1}))


def unit_counit_map(mono: Monomial) -> TPoly:
    return TPoly.unit() if not mono else TPoly()


# -- characters ----------------------------------------------------------------------------


def character_from(g: SemiMultFn) -> Callable[[TPoly], Scalar]:
    """The character with ``chi(X_p) = z_g(p)``, as an evaluator on ``T``."""

    def chi(x: TPoly) -> Scalar:
        total: Scalar = 0
        for mono, c in x.terms.items():
            prod: Scalar = c
            for label in mono:
                prod = prod * g.z(label)
                if not prod:
                    break
            total = total + prod
        return total

    return chi


def tensor_character(chi1: Callable[[TPoly], Scalar], chi2: Callable[[TPoly], Scalar], t: Tensor) -> Scalar:
    """``(chi1 (x) chi2)(t)``."""
    total: Scalar = 0
    for (a, b), c in t.terms.items():
        total = total + c * chi1(TPoly({a: 1})) * chi2(TPoly({b: 1}))
    return total


# -- Sym -------------------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _sym_delta_generator(k: int) -> Tensor:
    terms: dict[tuple[Monomial, ...], Scalar] = {}
    for p in enumerate_nc(k):
        key = (_sym_mono(p), _sym_mono(kreweras(p)))
        terms[key] = terms.get(key, 0) + 1
    return Tensor(SymPoly, terms)


def _sym_mono(p: Partition) -> Monomial:
    return tuple(sorted(len(b) for b in p.blocks if len(b) > 1))


def sym_comultiply(x: SymPoly) -> Tensor:
    """``Delta(Y_n) = sum_{p in NC(n)} Y_p (x) Y_{Kr(p)}``, extended multiplicatively."""
    out = Tensor(SymPoly, {})
    for mono, c in x.terms.items():
        piece = _delta_monomial(mono, _sym_delta_generator, SymPoly)
        out = out + Tensor(SymPoly, {k: v * c for k, v in piece.terms.items()})
    return out


def sym_comultiply_partition(s: Partition) -> Tensor:
    """``Delta(Y_s)`` by the relative-Kreweras formula ``sum_{p <= s} Y_p (x) Y_{Kr_s(p)}``."""
    terms: dict[tuple[Monomial, ...], Scalar] = {}
    for p in below(s):
        key = (_sym_mono(p), _sym_mono(relative_kreweras(p, s)))
        terms[key] = terms.get(key, 0) + 1
    return Tensor(SymPoly, terms)


def psi_monomial(mono: Monomial) -> SymPoly:
    out = SymPoly.unit()
    for label in mono:
        out = out * Y_of(kreweras(label))
    return out


def psi_to_sym(x: TPoly) -> SymPoly:
    """Algebra map with ``X_p -> Y_{Kr(p)}``."""
    total = SymPoly()
    for mono, c in x.terms.items():
        total = total + psi_monomial(mono) * c
    return total


# -- Z ------------------------------------------------------------------------------------------


def phi_monomial(mono: Monomial) -> ZPoly:
    if all(is_irreducible(label) for label in mono):
        return ZPoly({mono: 1})
    return ZPoly()


def phi_to_z(x: TPoly) -> ZPoly:
    """Algebra map with ``X_p -> Z_p`` for irreducible ``p`` and ``X_p -> 0`` otherwise."""
    total = ZPoly()
    for mono, c in x.terms.items():
        total = total + phi_monomial(mono) * c
    return total


@lru_cache(maxsize=None)
def _z_delta_generator(p: Partition) -> Tensor:
    terms: dict[tuple[Monomial, ...], Scalar] = {}
    for s in above(p):
        if not ll(p, s):
            continue
        right: Monomial = () if s.is_one() else (s,)
        key = (M_monomial(p, s), right)
        terms[key] = terms.get(key, 0) + 1
    return Tensor(ZPoly, terms)


def z_comultiply(x: ZPoly) -> Tensor:
    """``Delta(Z_p) = sum_{s >> p} prod_W Z_{p_W} (x) Z_s``, extended multiplicatively."""
    out = Tensor(ZPoly, {})
    for mono, c in x.terms.items():
        piece = _delta_monomial(mono, _z_delta_generator, ZPoly)
        out = out + Tensor(ZPoly, {k: v * c for k, v in piece.terms.items()})
    return out


# -- the counting sequence t_n -----------------------------------------------------------------


def _integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - k, k):
            yield (k,) + rest


def nc_type_count(sizes: Sequence[int]) -> int:
    """Number of partitions in ``NC(n)`` with the given block sizes.

    Kreweras' formula: ``n! / ((n - k + 1)! prod_i m_i!)`` with ``k`` blocks
    and ``m_i`` blocks of size ``i``.
    """
    n, k = sum(sizes), len(sizes)
    denom = math.factorial(n - k + 1)
    for mult in Counter(sizes).values():
        denom *= math.factorial(mult)
    return math.factorial(n) // denom


def count_efficient_chains_0n(n_limit: int) -> list[int]:
    """``t_1..t_{n_limit}``, from ``2 t_n = sum_{s in NC(n)} prod_{W in s} t_|W|`` (``n >= 2``)."""
    if n_limit < 1:
        raise DomainError("n_limit must be positive")
    t = [0, 1]
    for n in range(2, n_limit + 1):
        total = 0
        for sizes in _integer_partitions(n):
            if len(sizes) == 1:
                continue  # the 1_n term is t_n itself, moved to the left side
            prod = 1
            for k in sizes:
                prod *= t[k]
            total += nc_type_count(sizes) * prod
        t.append(total)
    return t[1:]


def _series_mul(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def _series_compose(f: Sequence[int], g: Sequence[int], order: int) -> list[int]:
    """``f(g(z))`` mod ``z^(order+1)``; requires ``g(0) == 0``."""
    if g and g[0]:
        raise DomainError("inner series must have zero constant term")
    out = [0] * (order + 1)
    power = [1] + [0] * order
    for coeff in f[: order + 1]:
        if coeff:
            out = [o + coeff * p for o, p in zip(out, power)]
        power = _series_mul(power, g, order)
    return out


def u_series(n_limit: int) -> list[int]:
    """Coefficients of ``U = 2T - z + 1`` up to ``z^n_limit``, where ``T = sum t_n z^n``."""
    t = count_efficient_chains_0n(n_limit)
    series = [1] + [2 * v for v in t]
    series[1] -= 1
    return series


def u_functional_equation_holds(n_limit: int) -> bool:
    """Whether ``U(z U(z)) == (2 - z) U(z) - 1`` mod ``z^(n_limit+1)``."""
    u_ = u_series(n_limit)
    z_u = [0] + u_[:n_limit]
    lhs = _series_compose(u_, z_u, n_limit)
    rhs = _series_mul([2, -1], u_, n_limit)
    rhs[0] -= 1
    return lhs == rhs


__all__ = [
    "Chain",
    "LabelPoly",
    "M",
    "SymPoly",
    "TPoly",
    "Tensor",
    "X",
    "Y",
    "Y_of",
    "Z",
    "ZPoly",
    "antipode",
    "antipode_bogoliubov",
    "antipode_chain_terms",
    "antipode_chains",
    "character_from",
    "comultiply",
    "count_efficient_chains_0n",
    "counit",
    "delta_M",
    "is_primitive",
    "map_convolution",
    "phi_to_z",
    "psi_to_sym",
    "sym_comultiply",
    "sym_comultiply_partition",
    "u_functional_equation_holds",
    "z_comultiply",
]
