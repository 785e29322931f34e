"""The convolution group of unitized semi-multiplicative functions on NC.

A semi-multiplicative function ``g`` is determined by its values
``z(p) = g(p, 1_n)``; on a general pair it factors over the blocks of the
upper partition::

    g(p, s) = prod_{W in s} z(p restricted to W)

:class:`SemiMultFn` stores only those ``z`` values (missing entries are 0,
and ``z(1_k) = 1`` always) for all ``p`` in ``NC(k)``, ``k <= n_max``.
Convolution, inversion and every membership test work on this
representation; full tables over pairs are never built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .coeff_rings import QQ, Ring, Scalar, common_ring, ring_of
from .errors import DomainError, InvariantError
from .nc_lattice import (
    Partition,
    above,
    enumerate_nc,
    inner_count,
    interval_cover,
    is_interval,
    is_irreducible,
    kreweras,
    leq,
    monotone_order_count,
    restrict,
    restriction_profile,
    zero,
)


def _nc_upto(n_max: int) -> Iterable[Partition]:
    for k in range(1, n_max + 1):
        yield from enumerate_nc(k)


class SemiMultFn:
    """Element of the group, truncated at ``n_max``.

    ``z`` maps partitions (other than ``1_k``) to their nonzero values.
    """

    __slots__ = ("n_max", "ring", "_z")

    def __init__(self, n_max: int, z: Mapping[Partition, Scalar], ring: Ring = QQ) -> None:
        if n_max < 1:
            raise DomainError("n_max must be positive")
        clean: dict[Partition, Scalar] = {}
        for p, v in z.items():
            if p.n > n_max:
                raise DomainError(f"{p} exceeds n_max={n_max}")
            if p.is_one():
                if v != 1:
                    raise DomainError(f"value at {p} must be 1 (unitized function)")
                continue
            if v:
                clean[p] = v
        self.n_max = n_max
        self.ring = ring
        self._z = clean

    @classmethod
    def from_callable(cls, n_max: int, fn: Callable[[Partition], Scalar], ring: Ring = QQ) -> SemiMultFn:
        return cls(n_max, {p: fn(p) for p in _nc_upto(n_max) if not p.is_one()}, ring)

    def z(self, p: Partition) -> Scalar:
        """``g(p, 1_n)``."""
        if p.n > self.n_max:
            raise DomainError(f"{p} exceeds n_max={self.n_max}")
        if p.is_one():
            return 1
        return self._z.get(p, 0)

    def items(self) -> list[tuple[Partition, Scalar]]:
        """Nonzero values other than the implicit ``z(1_k) = 1``, in key order."""
        return sorted(self._z.items(), key=lambda kv: kv[0].key)

    def truncate(self, n_max: int) -> SemiMultFn:
        if n_max > self.n_max:
            raise DomainError("cannot extend a truncated function")
        return SemiMultFn(n_max, {p: v for p, v in self._z.items() if p.n <= n_max}, self.ring)

    def map_values(self, fn: Callable[[Scalar], Scalar], ring: Ring | None = None) -> SemiMultFn:
        return SemiMultFn(self.n_max, {p: fn(v) for p, v in self._z.items()}, ring or self.ring)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiMultFn):
            return NotImplemented
        if self.n_max != other.n_max:
            return False
        keys = set(self._z) | set(other._z)
        return all(self._z.get(k, 0) == other._z.get(k, 0) for k in keys)

    def __hash__(self) -> int:
        return hash((self.n_max, frozenset(self._z)))

    def __repr__(self) -> str:
        return f"SemiMultFn(n_max={self.n_max}, ring={self.ring.name}, nonzero={len(self._z)})"

    def __mul__(self, other: SemiMultFn) -> SemiMultFn:
        return convolve(self, other)


def evaluate(g: SemiMultFn, p: Partition, s: Partition) -> Scalar:
    """``g(p, s)`` as the product of ``z`` over the restrictions of ``p`` to blocks of ``s``."""
    if s.n > g.n_max:
        raise DomainError(f"{s} exceeds n_max={g.n_max}")
    if not leq(p, s):
        raise DomainError(f"{p} is not below {s}")
    return _evaluate(g, p, s)


def _evaluate(g: SemiMultFn, p: Partition, s: Partition) -> Scalar:
    z = g._z
    value: Scalar = 1
    for r in restriction_profile(p, s):
        if r.is_one():
            continue
        v = z.get(r)
        if v is None:
            return 0
        value = v if value == 1 else value * v
    return value


def _joint_ring(g1: SemiMultFn, g2: SemiMultFn) -> Ring:
    if g1.n_max != g2.n_max:
        raise DomainError(f"degree caps differ: {g1.n_max} vs {g2.n_max}")
    return common_ring(g1.ring, g2.ring)


def convolve(g1: SemiMultFn, g2: SemiMultFn) -> SemiMultFn:
    """``(g1 * g2)(p, 1) = sum_{s >= p} g1(p, s) g2(s, 1)``."""
    ring = _joint_ring(g1, g2)
    z1, z2 = g1._z, g2._z
    out: dict[Partition, Scalar] = {}
    for p in _nc_upto(g1.n_max):
        if p.is_one():
            continue
        acc: Scalar = z1.get(p, 0)  # the s = 1_n term
        for s in above(p):
            if s.is_one():
                continue
            v2 = z2.get(s)
            if v2 is None:
                continue
            if s == p:
                acc = acc + v2
                continue
            v1 = _evaluate(g1, p, s)
            if v1:
                acc = acc + v1 * v2
        if acc:
            out[p] = acc
    return SemiMultFn(g1.n_max, out, ring)


def inverse(g: SemiMultFn) -> SemiMultFn:
    """Two-sided inverse by the triangular recursion, coarsest partitions first."""
    out: dict[Partition, Scalar] = {}
    for k in range(1, g.n_max + 1):
        for p in sorted(enumerate_nc(k), key=len):
            if p.is_one():
                continue
            acc: Scalar = g._z.get(p, 0)  # s = 1_n
            for s in above(p):
                if s == p or s.is_one():
                    continue
                w = out.get(s)
                if w is None:
                    continue
                v = _evaluate(g, p, s)
                if v:
                    acc = acc + v * w
            if acc:
                out[p] = -acc
    return SemiMultFn(g.n_max, out, g.ring)


# -- named elements -----------------------------------------------------------


def unit_e(n_max: int, ring: Ring = QQ) -> SemiMultFn:
    """The group unit: ``z = 0`` off the top element."""
    return SemiMultFn(n_max, {}, ring)


def g_fc_m(n_max: int) -> SemiMultFn:
    """Free cumulants to moments: ``z = 1`` everywhere."""
    return SemiMultFn.from_callable(n_max, lambda p: 1)


def g_bc_m(n_max: int) -> SemiMultFn:
    """Boolean cumulants to moments: ``z = 1`` on interval partitions, else 0."""
    return SemiMultFn.from_callable(n_max, lambda p: 1 if is_interval(p) else 0)


def g_bc_m_t(t: Scalar, n_max: int) -> SemiMultFn:
    """t-Boolean cumulants to moments: ``z(p) = t**inner(p)``."""
    powers: dict[int, Scalar] = {0: 1}

    def value(p: Partition) -> Scalar:
        k = inner_count(p)
        if k not in powers:
            powers[k] = t**k
        return powers[k]

    return SemiMultFn.from_callable(n_max, value, ring_of(t))


def g_mc_m(n_max: int) -> SemiMultFn:
    """Monotone cumulants to moments: monotone orderings over ``|p|!``."""
    return SemiMultFn.from_callable(
        n_max, lambda p: _frac(monotone_order_count(p), math.factorial(len(p)))
    )


def u(q: Scalar, n_max: int) -> SemiMultFn:
    """The one-parameter family: ``q**(|p|-1)`` on irreducible ``p``, else 0."""
    return SemiMultFn.from_callable(
        n_max, lambda p: q ** (len(p) - 1) if is_irreducible(p) else 0, ring_of(q)
    )


def _frac(a: int, b: int) -> int | Fraction:
    f = Fraction(a, b)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class MultFn:
    """Multiplicative function given by ``lam[k-1] = f(0_k, 1_k)`` with ``lam[0] = 1``."""

    lam: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if not self.lam:
            raise DomainError("need at least lambda_1")
        if self.lam[0] != 1:
            raise DomainError(f"lambda_1 must be 1, got {self.lam[0]!r}")

    @property
    def n_max(self) -> int:
        return len(self.lam)

    def value(self, k: int) -> Scalar:
        return self.lam[k - 1]

    def as_semimult(self) -> SemiMultFn:
        ring = QQ
        for v in self.lam:
            ring = common_ring(ring, ring_of(v))
        return SemiMultFn.from_callable(
            self.n_max, lambda p: _product(self.lam[len(w) - 1] for w in kreweras(p).blocks), ring
        )


def _product(values: Iterable[Scalar]) -> Scalar:
    out: Scalar = 1
    for v in values:
        if v == 1:
            continue
        if not v:
            return 0
        out = v if out == 1 else out * v
    return out


def mult_from_lambda(lam: Sequence[Scalar]) -> MultFn:
    """Multiplicative function with ``f(0_k, 1_k) = lam[k-1]``; requires ``lam[0] == 1``."""
    return MultFn(tuple(lam))


# -- membership predicates ------------------------------------------------------


def is_multiplicative(g: SemiMultFn) -> bool:
    """Whether ``z(p) = prod_{W in Kr(p)} z(0_|W|)`` for every ``p`` up to the cap."""
    lam = [g.z(zero(k)) for k in range(1, g.n_max + 1)]
    for p in _nc_upto(g.n_max):
        expected = _product(lam[len(w) - 1] for w in kreweras(p).blocks)
        if g.z(p) != expected:
            return False
    return True


def is_c_to_m(g: SemiMultFn) -> bool:
    """Whether ``z(p1 <> p2) = z(p1) z(p2)`` for every concatenation up to the cap."""
    for p in _nc_upto(g.n_max):
        for _, b in interval_cover(p)[:-1]:
            left = restrict(p, range(1, b + 1))
            right = restrict(p, range(b + 1, p.n + 1))
            if g.z(p) != g.z(left) * g.z(right):
                return False
    return True


def is_c_to_c(g: SemiMultFn) -> bool:
    """Whether ``z`` vanishes on every reducible partition."""
    return all(is_irreducible(p) for p in g._z)


# -- structural operations --------------------------------------------------------


def right_coset_decompose(h: SemiMultFn) -> SemiMultFn:
    """The cumulant-to-cumulant ``g`` with ``g * g_bc_m == h``.

    ``g`` agrees with ``h`` on irreducible partitions and vanishes elsewhere.
    """
    if not is_c_to_m(h):
        raise DomainError("function is not of cumulant-to-moment type")
    return SemiMultFn(h.n_max, {p: v for p, v in h._z.items() if is_irreducible(p)}, h.ring)


def conjugate_by_u(f: MultFn, q: Scalar) -> MultFn:
    """``u_q^{-1} * f * u_q``, checked to be multiplicative, as a :class:`MultFn`."""
    fs = f.as_semimult()
    uq = u(q, f.n_max)
    conj = convolve(convolve(inverse(uq), fs), uq)
    if not is_multiplicative(conj):
        raise InvariantError("conjugate by u_q is not multiplicative")
    return MultFn(tuple(conj.z(zero(k)) for k in range(1, f.n_max + 1)))


def theta_formula(lam: Sequence[Scalar], q: Scalar, n: int) -> Scalar:
    """``sum over irreducible p in NC(n) of q**(|p|-1) prod_V lam_|V|``."""
    total: Scalar = 0
    for p in enumerate_nc(n):
        if is_irreducible(p):
            total = total + q ** (len(p) - 1) * _product(lam[len(b) - 1] for b in p.blocks)
    return total
