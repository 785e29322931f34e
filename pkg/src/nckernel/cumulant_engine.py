"""Right action of the group on moment sequences, and the cumulant calculus built on it.

Everything is univariate: a sequence ``a = (a_1, ..., a_N)`` stands for the
values of a family of multilinear functionals on a single element, and
``a_p = prod_{V in p} a_|V|`` is its extension to partitions.  The action is::

    (a . g)_n = sum_{p in NC(n)} z_g(p) a_p

Moments are free, Boolean, t-Boolean and monotone cumulants acted on by the
corresponding named group element; going the other way uses its inverse.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .coeff_rings import QQ, Dual, DualRing, PolyRing, Ring, Scalar, common_ring, ring_of
from .errors import DomainError
from .incidence_group import (
    SemiMultFn,
    convolve,
    g_bc_m,
    g_bc_m_t,
    g_fc_m,
    g_mc_m,
    conjugate_by_u,
    inverse,
    is_c_to_m,
    mult_from_lambda,
)
from .nc_lattice import Partition, enumerate_nc, is_irreducible, kreweras


@dataclass(frozen=True)
class MomentSeq:
    """Scalars ``a_1..a_N`` with ``a_1 = 1``, over ``ring``."""

    a: tuple[Scalar, ...]
    ring: Ring = QQ

    def __post_init__(self) -> None:
        if not self.a:
            raise DomainError("a moment sequence needs at least one term")
        first = self.a[0]
        if isinstance(first, Dual):
            if first.a != 1 or first.b != 0:
                raise DomainError("first term of a dual sequence must be 1 + 0*eps")
        elif first != 1:
            raise DomainError(f"first term must be 1, got {first!r}")

    @classmethod
    def of(cls, values: Sequence[Scalar], ring: Ring | None = None) -> MomentSeq:
        if ring is None:
            ring = QQ
            for v in values:
                ring = common_ring(ring, ring_of(v))
        return cls(tuple(values), ring)

    @property
    def n_max(self) -> int:
        return len(self.a)

    def __getitem__(self, n: int) -> Scalar:
        """1-based access: ``m[1] == 1``."""
        if n < 1 or n > len(self.a):
            raise IndexError(n)
        return self.a[n - 1]

    def truncate(self, n: int) -> MomentSeq:
        return MomentSeq(self.a[:n], self.ring)

    def first_components(self) -> MomentSeq:
        """For a dual sequence, the sequence of ``a`` parts."""
        if not isinstance(self.ring, DualRing):
            return self
        return MomentSeq(tuple(v.a if isinstance(v, Dual) else v for v in self.a), self.ring.base)

    def second_components(self) -> tuple[Scalar, ...]:
        return tuple(v.b if isinstance(v, Dual) else 0 for v in self.a)


def dual_sequence(first: Sequence[Scalar], second: Sequence[Scalar]) -> MomentSeq:
    """Pair ``(first, second)`` as one sequence over dual numbers; requires ``second[0] == 0``."""
    if len(first) != len(second):
        raise DomainError("component sequences differ in length")
    if second[0] != 0:
        raise DomainError("second component must start with 0")
    base: Ring = QQ
    for v in list(first) + list(second):
        base = common_ring(base, ring_of(v))
    return MomentSeq(tuple(Dual(a, b) for a, b in zip(first, second)), DualRing(base))


# -- products over partitions ------------------------------------------------------


def _block_product(values: Sequence[Scalar], sizes: Iterable[int]) -> Scalar:
    out: Scalar = 1
    for k in sizes:
        v = values[k - 1]
        if v == 1:
            continue
        if not v:
            return 0
        out = v if out == 1 else out * v
    return out


class _TypeProducts:
    """Cache of ``a_p`` keyed by the block-size multiset of ``p``."""

    def __init__(self, values: Sequence[Scalar]) -> None:
        self.values = values
        self.cache: dict[tuple[int, ...], Scalar] = {}

    def __call__(self, sizes: tuple[int, ...]) -> Scalar:
        v = self.cache.get(sizes)
        if v is None:
            # Reuse the product for the type with the last part removed.
            if len(sizes) <= 1:
                v = _block_product(self.values, sizes)
            else:
                head = self(sizes[:-1])
                last = self.values[sizes[-1] - 1]
                v = head * last if head != 1 else last
            self.cache[sizes] = v
        return v


def seq_partition_value(a: Sequence[Scalar], p: Partition) -> Scalar:
    """``a_p = prod_{V in p} a_|V|`` for a plain 0-indexed sequence ``a``."""
    return _block_product(a, (len(b) for b in p.blocks))


@lru_cache(maxsize=None)
def _type_table(n: int) -> tuple[tuple[Partition, tuple[int, ...]], ...]:
    return tuple((p, p.block_sizes()) for p in enumerate_nc(n))


# -- the action ---------------------------------------------------------------------


def _check_compat(m: MomentSeq, g: SemiMultFn) -> Ring:
    return common_ring(m.ring, g.ring)


def act(m: MomentSeq, g: SemiMultFn) -> MomentSeq:
    """``(m . g)_n = sum_{p in NC(n)} z_g(p) m_p`` for ``n`` up to ``min(len(m), g.n_max)``."""
    ring = _check_compat(m, g)
    return MomentSeq(tuple(act_raw(m.a, g)), ring)


def act_raw(a: Sequence[Scalar], g: SemiMultFn) -> list[Scalar]:
    """The action on a plain sequence (no normalisation of ``a_1`` required)."""
    top = min(len(a), g.n_max)
    prods = _TypeProducts(a)
    out: list[Scalar] = []
    for n in range(1, top + 1):
        # Group the partitions by block type first: coefficients are cheap
        # scalars, while the products a_p may be large polynomials.
        coeff: dict[tuple[int, ...], Scalar] = {}
        for p, sizes in _type_table(n):
            z = g.z(p)
            if z:
                coeff[sizes] = coeff.get(sizes, 0) + z
        total: Scalar = 0
        for sizes, c in coeff.items():
            if c:
                v = prods(sizes)
                if v:
                    total = total + (v if c == 1 else c * v)
        out.append(total)
    return out


# -- brands --------------------------------------------------------------------------

Brand = Union[str, tuple[str, Scalar]]


def _brand_key(brand: Brand) -> tuple[str, Scalar | None]:
    if isinstance(brand, tuple):
        name, param = brand
    else:
        name, param = brand, None
    name = name.replace("-", "_").lower()
    if name in ("free", "boolean", "monotone"):
        if param is not None:
            raise DomainError(f"brand {name!r} takes no parameter")
        return name, None
    if name in ("t_boolean", "tboolean"):
        if param is None:
            raise DomainError("t_boolean brand needs a parameter t")
        return "t_boolean", param
    raise DomainError(f"unknown cumulant brand {brand!r}")


def t_boolean(t: Scalar) -> tuple[str, Scalar]:
    """Brand tag for t-Boolean cumulants."""
    return ("t_boolean", t)


@lru_cache(maxsize=64)
def _brand_element_cached(name: str, n_max: int) -> SemiMultFn:
    return {"free": g_fc_m, "boolean": g_bc_m, "monotone": g_mc_m}[name](n_max)


@lru_cache(maxsize=64)
def _brand_inverse_cached(name: str, n_max: int) -> SemiMultFn:
    return inverse(_brand_element_cached(name, n_max))


def brand_element(brand: Brand, n_max: int) -> SemiMultFn:
    """The group element taking cumulants of ``brand`` to moments."""
    name, param = _brand_key(brand)
    if name == "t_boolean":
        return g_bc_m_t(param, n_max)
    return _brand_element_cached(name, n_max)


def brand_inverse(brand: Brand, n_max: int) -> SemiMultFn:
    name, param = _brand_key(brand)
    if name == "t_boolean":
        return inverse(g_bc_m_t(param, n_max))
    return _brand_inverse_cached(name, n_max)


def cumulants_to_moments(c: MomentSeq, brand: Brand) -> MomentSeq:
    return act(c, brand_element(brand, c.n_max))


def moments_to_cumulants(m: MomentSeq, brand: Brand) -> MomentSeq:
    """Cumulants of ``brand`` for the moment sequence ``m``: ``m . g_brand^{-1}``."""
    return act(m, brand_inverse(brand, m.n_max))


def transition_kernel(from_brand: Brand, to_brand: Brand, n_max: int) -> SemiMultFn:
    """``g_from * g_to^{-1}``, mapping ``from`` cumulants to ``to`` cumulants."""
    return convolve(brand_element(from_brand, n_max), brand_inverse(to_brand, n_max))


def transition(c: MomentSeq, from_brand: Brand, to_brand: Brand) -> MomentSeq:
    """Convert cumulants of one brand into cumulants of another."""
    if _brand_key(from_brand) == _brand_key(to_brand):
        return c
    return act(c, transition_kernel(from_brand, to_brand, c.n_max))


def boolean_from_brand(c: MomentSeq, coeffs: SemiMultFn) -> MomentSeq:
    """Boolean cumulants from cumulants ``c`` whose moment map is ``coeffs``.

    ``beta_n = sum over irreducible p in NC(n) of coeffs(p) c_p``.
    """
    if not is_c_to_m(coeffs):
        raise DomainError("coefficient function is not of cumulant-to-moment type")
    ring = _check_compat(c, coeffs)
    top = min(c.n_max, coeffs.n_max)
    out: list[Scalar] = []
    for n in range(1, top + 1):
        total: Scalar = 0
        for p in enumerate_nc(n):
            if is_irreducible(p):
                z = coeffs.z(p)
                if z:
                    total = total + z * seq_partition_value(c.a, p)
        out.append(total)
    return MomentSeq(tuple(out), ring)


# -- free multiplication -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _kreweras_type_pairs(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    counts: Counter[tuple[tuple[int, ...], tuple[int, ...]]] = Counter()
    for p in enumerate_nc(n):
        counts[(p.block_sizes(), kreweras(p).block_sizes())] += 1
    return tuple((a, b, c) for (a, b), c in sorted(counts.items()))


def kreweras_product(x: Sequence[Scalar], y: Sequence[Scalar], n: int) -> Scalar:
    """``sum_{p in NC(n)} x_p y_{Kr(p)}`` for plain sequences."""
    px, py = _TypeProducts(x), _TypeProducts(y)
    total: Scalar = 0
    for tx, ty, count in _kreweras_type_pairs(n):
        vx = px(tx)
        if not vx:
            continue
        vy = py(ty)
        if not vy:
            continue
        term = vx * vy
        total = total + (term if count == 1 else count * term)
    return total


def free_multiply(kx: MomentSeq, ky: MomentSeq) -> MomentSeq:
    """Free cumulants of ``xy`` from those of free ``x`` and ``y``."""
    ring = common_ring(kx.ring, ky.ring)
    top = min(kx.n_max, ky.n_max)
    return MomentSeq(tuple(kreweras_product(kx.a, ky.a, n) for n in range(1, top + 1)), ring)


def t_boolean_multiply_pipeline(bx: MomentSeq, by: MomentSeq, t: Scalar) -> MomentSeq:
    """t-Boolean cumulants of ``xy`` computed through moments and free cumulants."""
    brand = t_boolean(t)
    kx = moments_to_cumulants(cumulants_to_moments(bx, brand), "free")
    ky = moments_to_cumulants(cumulants_to_moments(by, brand), "free")
    mxy = cumulants_to_moments(free_multiply(kx, ky), "free")
    return moments_to_cumulants(mxy, brand)


def t_boolean_multiply_check(bx: MomentSeq, by: MomentSeq, t: Scalar) -> bool:
    """Whether the t-Boolean cumulants of ``xy`` obey the Kreweras product formula."""
    via_pipeline = t_boolean_multiply_pipeline(bx, by, t)
    top = min(bx.n_max, by.n_max)
    direct = [kreweras_product(bx.a, by.a, n) for n in range(1, top + 1)]
    return all(a == b for a, b in zip(via_pipeline.a, direct))


def u_conjugation_identity_check(t: Scalar, q: Scalar, y_betas: MomentSeq) -> bool:
    """Whether conjugating ``f_t`` by ``u_q`` gives ``f_{t-q}``.

    ``f_s`` is the multiplicative function whose ``lambda_n`` are the
    s-Boolean cumulants of the fixed ``y``; ``y_betas`` holds the t-Boolean
    ones.
    """
    f_t = mult_from_lambda(y_betas.a)
    conj = conjugate_by_u(f_t, q)
    shifted = transition(y_betas, t_boolean(t), t_boolean(t - q))
    return all(a == b for a, b in zip(conj.lam, shifted.a))


# -- monotone discrepancy ------------------------------------------------------------------


def discrepancy_ring(n: int) -> PolyRing:
    """Alphabet ``rx2..rxn, ry2..ryn`` for the monotone cumulants of ``x`` and ``y``."""
    return PolyRing([f"rx{k}" for k in range(2, n + 1)] + [f"ry{k}" for k in range(2, n + 1)])


def monotone_discrepancy(n: int, n_cap: int | None = None) -> Scalar:
    """``rho_n(xy) - sum_p rho_p(x) rho_{Kr(p)}(y)`` with ``rho_1 = 1`` substituted.

    ``rho_n(xy)`` is computed by passing through moments and free cumulants
    of ``x`` and ``y``, multiplying freely, and converting back.
    """
    from .nc_lattice import n_max as lattice_cap

    cap = lattice_cap() if n_cap is None else n_cap
    if not isinstance(n, int) or n < 2 or n > cap:
        raise DomainError(f"n must satisfy 2 <= n <= {cap}, got {n}")
    ring = discrepancy_ring(n)
    rx = MomentSeq.of([1] + [ring.gen(f"rx{k}") for k in range(2, n + 1)], ring)
    ry = MomentSeq.of([1] + [ring.gen(f"ry{k}") for k in range(2, n + 1)], ring)
    kx = moments_to_cumulants(cumulants_to_moments(rx, "monotone"), "free")
    ky = moments_to_cumulants(cumulants_to_moments(ry, "monotone"), "free")
    mxy = cumulants_to_moments(free_multiply(kx, ky), "free")
    rxy = moments_to_cumulants(mxy, "monotone")
    return rxy[n] - kreweras_product(rx.a, ry.a, n)


# -- derived sequences ---------------------------------------------------------------------


def hat_sequence(alpha: Sequence[Scalar]) -> list[Scalar]:
    """``hat_n = sum_{p in NC(n)} alpha_p``."""
    return act_raw(alpha, g_fc_m(len(alpha)))


def tilde_sequence(alpha: Sequence[Scalar]) -> list[Scalar]:
    """``tilde_n = sum over irreducible p in NC(n) of alpha_p``."""
    out: list[Scalar] = []
    for n in range(1, len(alpha) + 1):
        total: Scalar = 0
        for p in enumerate_nc(n):
            if is_irreducible(p):
                total = total + seq_partition_value(alpha, p)
        out.append(total)
    return out


def _compositions(n: int) -> Iterable[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def tilde_alpha_identity_check(alpha: Sequence[Scalar]) -> bool:
    """Whether ``tilde_n = sum over interval partitions r of (-1)^(|r|+1) prod_J hat_|J|``."""
    hat = hat_sequence(alpha)
    tilde = tilde_sequence(alpha)
    for n in range(1, len(alpha) + 1):
        rhs: Scalar = 0
        for comp in _compositions(n):
            term = _block_product(hat, comp)
            rhs = rhs + term if len(comp) % 2 == 1 else rhs - term
        if rhs != tilde[n - 1]:
            return False
    return True


def infinitesimal_second_component(first: Sequence[Scalar], second: Sequence[Scalar], g: SemiMultFn) -> list[Scalar]:
    """Second component of the action on a pair ``(first, second)``, by the Leibniz rule.

    ``sum_p z_g(p) sum_{V in p} second_|V| prod_{W != V} first_|W|``; this is
    an independent route to the dual-number action.
    """
    out: list[Scalar] = []
    for n in range(1, min(len(first), g.n_max) + 1):
        total: Scalar = 0
        for p in enumerate_nc(n):
            z = g.z(p)
            if not z:
                continue
            sizes = [len(b) for b in p.blocks]
            for i, k in enumerate(sizes):
                term = second[k - 1] * _block_product(first, sizes[:i] + sizes[i + 1 :])
                total = total + z * term
        out.append(total)
    return out


__all__ = [
    "MomentSeq",
    "act",
    "act_raw",
    "boolean_from_brand",
    "brand_element",
    "brand_inverse",
    "cumulants_to_moments",
    "discrepancy_ring",
    "dual_sequence",
    "free_multiply",
    "hat_sequence",
    "infinitesimal_second_component",
    "kreweras_product",
    "monotone_discrepancy",
    "moments_to_cumulants",
    "t_boolean",
    "t_boolean_multiply_check",
    "t_boolean_multiply_pipeline",
    "tilde_alpha_identity_check",
    "tilde_sequence",
    "transition",
    "transition_kernel",
    "u_conjugation_identity_check",
]
