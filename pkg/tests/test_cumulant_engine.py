from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from appendix_values import PUBLISHED
from nckernel.checks import random_function
from nckernel.coeff_rings import Dual, PolyRing, parse_scalar
from nckernel.cumulant_engine import (
    MomentSeq,
    act,
    boolean_from_brand,
    cumulants_to_moments,
    discrepancy_ring,
    dual_sequence,
    free_multiply,
    hat_sequence,
    infinitesimal_second_component,
    kreweras_product,
    moments_to_cumulants,
    monotone_discrepancy,
    t_boolean,
    t_boolean_multiply_check,
    t_boolean_multiply_pipeline,
    tilde_alpha_identity_check,
    tilde_sequence,
    transition,
    transition_kernel,
    u_conjugation_identity_check,
)
from nckernel.errors import DomainError
from nckernel.incidence_group import g_fc_m, g_mc_m, u
from nckernel.nc_lattice import enumerate_nc, kreweras

BRANDS = ["free", "boolean", "monotone", t_boolean(Fraction(1, 3)), t_boolean(-2)]


def random_sequence(n: int, rng: random.Random) -> MomentSeq:
    return MomentSeq.of([1] + [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n - 1)])


def symbolic_pair(n: int, extra: tuple[str, ...] = ()) -> tuple[PolyRing, MomentSeq, MomentSeq]:
    ring = PolyRing(list(extra) + [f"x{k}" for k in range(2, n + 1)] + [f"y{k}" for k in range(2, n + 1)])
    x = MomentSeq.of([1] + [ring.gen(f"x{k}") for k in range(2, n + 1)], ring)
    y = MomentSeq.of([1] + [ring.gen(f"y{k}") for k in range(2, n + 1)], ring)
    return ring, x, y


class TestSequences:
    def test_first_term_must_be_one(self):
        with pytest.raises(DomainError):
            MomentSeq.of([2, 1])
        with pytest.raises(DomainError):
            MomentSeq.of([])
        with pytest.raises(DomainError):
            dual_sequence([1, 2], [1, 0])

    def test_indexing_is_one_based(self):
        m = MomentSeq.of([1, 5, 7])
        assert m[1] == 1 and m[3] == 7 and m.n_max == 3
        with pytest.raises(IndexError):
            m[0]
        assert m.truncate(2).a == (1, 5)


class TestAction:
    @given(st.integers(0, 10**6))
    def test_matches_direct_sum(self, seed):
        rng = random.Random(seed)
        g = random_function(5, rng)
        m = random_sequence(5, rng)
        got = act(m, g)
        for n in range(1, 6):
            expected = 0
            for p in enumerate_nc(n):
                term = g.z(p)
                for b in p.blocks:
                    term *= m[len(b)]
                expected += term
            assert got[n] == expected

    @given(st.integers(0, 10**6))
    def test_right_action(self, seed):
        rng = random.Random(seed)
        g1, g2 = random_function(4, rng), random_function(4, rng)
        m = random_sequence(4, rng)
        assert act(act(m, g1), g2) == act(m, g1 * g2)

    def test_free_poisson_gives_catalan(self):
        moments = cumulants_to_moments(MomentSeq.of([1] * 8), "free")
        assert list(moments.a) == [math.comb(2 * n, n) // (n + 1) for n in range(1, 9)]

    def test_boolean_all_ones_gives_compositions(self):
        moments = cumulants_to_moments(MomentSeq.of([1] * 8), "boolean")
        assert list(moments.a) == [2 ** (n - 1) for n in range(1, 9)]

    def test_moments_to_free_cumulants_small(self):
        # m2 = k2 + k1^2, m3 = k3 + 3 k1 k2 + k1^3 with k1 = 1
        k = moments_to_cumulants(MomentSeq.of([1, 3, 10]), "free")
        assert k.a == (1, 2, 10 - 3 * 2 - 1)


class TestTransitions:
    @pytest.mark.parametrize("brand", BRANDS)
    def test_roundtrip(self, brand):
        m = random_sequence(7, random.Random(11))
        assert cumulants_to_moments(moments_to_cumulants(m, brand), brand) == m

    @pytest.mark.parametrize("src", BRANDS)
    @pytest.mark.parametrize("dst", BRANDS)
    def test_transition_composes_through_moments(self, src, dst):
        c = random_sequence(6, random.Random(5))
        assert transition(c, src, dst) == moments_to_cumulants(cumulants_to_moments(c, src), dst)

    def test_boolean_kernel_is_u(self):
        ring = PolyRing(["s", "t"])
        s, t = ring.gens()
        assert transition_kernel(t_boolean(s), t_boolean(t), 6) == u(s - t, 6)

    def test_boolean_from_monotone(self):
        c = random_sequence(7, random.Random(2))
        direct = boolean_from_brand(c, g_mc_m(7))
        assert direct == transition(c, "monotone", "boolean")
        for n in range(1, 8):
            expected = 0
            for p in enumerate_nc(n):
                if oracles.is_irreducible(p.blocks, n):
                    weight = Fraction(oracles.monotone_orders(p.blocks), math.factorial(len(p)))
                    expected += weight * math.prod(c[len(b)] for b in p.blocks)
            assert direct[n] == expected

    def test_boolean_from_free(self):
        c = random_sequence(6, random.Random(9))
        assert boolean_from_brand(c, g_fc_m(6)) == transition(c, "free", "boolean")

    def test_boolean_from_needs_cm(self):
        with pytest.raises(DomainError):
            boolean_from_brand(MomentSeq.of([1, 1, 1]), random_function(3, random.Random(4), density=1.0))

    def test_unknown_brand(self):
        with pytest.raises(DomainError):
            transition(MomentSeq.of([1, 1]), "classical", "free")
        with pytest.raises(DomainError):
            transition(MomentSeq.of([1, 1]), ("free", 2), "boolean")


class TestFreeMultiplication:
    def test_kreweras_product_matches_partition_sum(self):
        rng = random.Random(8)
        x = [1] + [Fraction(rng.randint(-5, 5), 3) for _ in range(6)]
        y = [1] + [Fraction(rng.randint(-5, 5), 2) for _ in range(6)]
        for n in range(1, 8):
            expected = sum(
                math.prod(x[len(b) - 1] for b in p.blocks) * math.prod(y[len(b) - 1] for b in kreweras(p).blocks)
                for p in enumerate_nc(n)
            )
            assert kreweras_product(x, y, n) == expected

    def test_moments_of_product_mixed_formula(self):
        # m_n(xy) = sum_p kappa_p(x) m_{Kr(p)}(y): a second route to the same moments.
        rng = random.Random(12)
        kx, ky = random_sequence(7, rng), random_sequence(7, rng)
        my = cumulants_to_moments(ky, "free")
        mxy = cumulants_to_moments(free_multiply(kx, ky), "free")
        for n in range(1, 8):
            assert mxy[n] == kreweras_product(kx.a, my.a, n)

    def test_t_boolean_product_symbolic(self):
        ring, x, y = symbolic_pair(6, ("t",))
        assert t_boolean_multiply_check(x, y, ring.gen("t"))

    @pytest.mark.parametrize("t", [0, 1, Fraction(-3, 2)])
    def test_t_boolean_product_numeric(self, t):
        _, x, y = symbolic_pair(6)
        assert t_boolean_multiply_check(x, y, t)

    def test_monotone_analogue_fails(self):
        # The same Kreweras formula does not hold for monotone cumulants from n = 5 on.
        ring, x, y = symbolic_pair(5)
        kx = moments_to_cumulants(cumulants_to_moments(x, "monotone"), "free")
        ky = moments_to_cumulants(cumulants_to_moments(y, "monotone"), "free")
        rxy = moments_to_cumulants(cumulants_to_moments(free_multiply(kx, ky), "free"), "monotone")
        assert rxy[5] != kreweras_product(x.a, y.a, 5)

    def test_pipeline_shape(self):
        ring, x, y = symbolic_pair(4, ("t",))
        out = t_boolean_multiply_pipeline(x, y, ring.gen("t"))
        assert out.n_max == 4 and out[1] == 1

    def test_u_conjugation(self):
        ring = PolyRing(["t", "q"] + [f"b{k}" for k in range(2, 7)])
        betas = MomentSeq.of([1] + [ring.gen(f"b{k}") for k in range(2, 7)], ring)
        assert u_conjugation_identity_check(ring.gen("t"), ring.gen("q"), betas)


class TestMonotoneDiscrepancy:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_vanishes_in_low_degree(self, n):
        assert monotone_discrepancy(n) == 0

    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_matches_published_values(self, n):
        ring = discrepancy_ring(n)
        expected = sum((parse_scalar(term, ring) for term in PUBLISHED[n]), ring.const(0))
        assert monotone_discrepancy(n) == expected

    def test_symmetric_in_x_and_y(self):
        poly = monotone_discrepancy(7)
        swapped = {
            tuple(sorted((("ry" if k.startswith("rx") else "rx") + k[2:], e) for k, e in mono.items())): c
            for mono, c in poly.items()
        }
        original = {tuple(sorted(mono.items())): c for mono, c in poly.items()}
        assert swapped == original

    def test_domain(self):
        with pytest.raises(DomainError):
            monotone_discrepancy(1)
        with pytest.raises(DomainError):
            monotone_discrepancy(6, n_cap=5)


class TestInfinitesimal:
    @pytest.mark.parametrize("seed", range(3))
    def test_dual_action_splits(self, seed):
        rng = random.Random(seed)
        g = random_function(5, rng)
        first = [1] + [Fraction(rng.randint(-4, 4), 3) for _ in range(4)]
        second = [0] + [Fraction(rng.randint(-4, 4), 2) for _ in range(4)]
        out = act(dual_sequence(first, second), g)
        assert out.first_components() == act(MomentSeq.of(first), g)
        assert list(out.second_components()) == infinitesimal_second_component(first, second, g)

    def test_dual_values_are_dual(self):
        seq = dual_sequence([1, 2], [0, 1])
        assert seq[2] == Dual(2, 1)


class TestDerivedSequences:
    def test_tilde_alpha_identity_symbolic(self):
        ring = PolyRing([f"a{k}" for k in range(1, 7)])
        assert tilde_alpha_identity_check(list(ring.gens()))

    def test_hat_and_tilde_small(self):
        a1, a2 = PolyRing(["a1", "a2"]).gens()
        hat = hat_sequence([a1, a2])
        tilde = tilde_sequence([a1, a2])
        assert hat == [a1, a2 + a1**2]
        assert tilde == [a1, a2]
