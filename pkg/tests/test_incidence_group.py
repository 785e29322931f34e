from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from nckernel.checks import random_function
from nckernel.coeff_rings import PolyRing
from nckernel.errors import DomainError
from nckernel.incidence_group import (
    MultFn,
    SemiMultFn,
    conjugate_by_u,
    convolve,
    evaluate,
    g_bc_m,
    g_bc_m_t,
    g_fc_m,
    g_mc_m,
    inverse,
    is_c_to_c,
    is_c_to_m,
    is_multiplicative,
    mult_from_lambda,
    right_coset_decompose,
    theta_formula,
    u,
    unit_e,
)
from nckernel.nc_lattice import Partition, enumerate_nc, is_irreducible, one, parse_partition, zero

seeds = st.integers(0, 10**6)


def _z_table(g: SemiMultFn) -> dict:
    return {p.blocks: g.z(p) for k in range(1, g.n_max + 1) for p in enumerate_nc(k)}


@pytest.mark.parametrize("seed", range(4))
def test_convolution_matches_incidence_matrix_product(seed):
    rng = random.Random(seed)
    n = 4
    g1, g2 = random_function(n, rng), random_function(n, rng)
    elems, m1 = oracles.incidence_matrix(_z_table(g1), n)
    _, m2 = oracles.incidence_matrix(_z_table(g2), n)
    product = oracles.matmul(m1, m2)
    g12 = convolve(g1, g2)
    for i, p in enumerate(elems):
        for j, s in enumerate(elems):
            if oracles.refines(p, s):
                assert evaluate(g12, Partition.from_blocks(p), Partition.from_blocks(s)) == product[i][j]
            else:
                assert product[i][j] == 0


class TestGroupLaws:
    @given(seeds)
    def test_associativity(self, seed):
        rng = random.Random(seed)
        a, b, c = (random_function(5, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)

    @given(seeds)
    def test_two_sided_inverse(self, seed):
        g = random_function(5, random.Random(seed))
        e = unit_e(5)
        assert g * inverse(g) == e
        assert inverse(g) * g == e

    @given(seeds)
    def test_unit(self, seed):
        g = random_function(5, random.Random(seed))
        assert g * unit_e(5) == g == unit_e(5) * g

    def test_generic_group_is_not_commutative(self):
        rng = random.Random(7)
        a, b = random_function(4, rng), random_function(4, rng)
        assert a * b != b * a

    @given(seeds)
    def test_multiplicative_functions_commute(self, seed):
        rng = random.Random(seed)
        f1 = mult_from_lambda([1] + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4)])
        f2 = mult_from_lambda([1] + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4)])
        a, b = f1.as_semimult(), f2.as_semimult()
        assert a * b == b * a
        assert is_multiplicative(a * b)
        assert is_multiplicative(inverse(a))

    def test_caps_must_agree(self):
        with pytest.raises(DomainError):
            convolve(unit_e(3), unit_e(4))

    def test_evaluate_checks_order(self):
        with pytest.raises(DomainError):
            evaluate(g_fc_m(3), one(3), zero(3))
        with pytest.raises(DomainError):
            evaluate(g_fc_m(3), zero(4), one(4))


class TestRepresentation:
    def test_unitization_is_enforced(self):
        with pytest.raises(DomainError):
            SemiMultFn(3, {one(2): 2})
        with pytest.raises(DomainError):
            SemiMultFn(2, {zero(3): 1})
        with pytest.raises(DomainError):
            SemiMultFn(0, {})

    def test_semi_multiplicative_factorisation(self):
        g = g_mc_m(5)
        p = parse_partition("{1}{2,3}{4}{5}")
        s = parse_partition("{1,4,5}{2,3}")
        # restrictions: {1}{2}{3} on {1,4,5}, and 1_2 on {2,3}
        assert evaluate(g, p, s) == g.z(zero(3))

    def test_truncate(self):
        g = g_mc_m(6)
        assert g.truncate(4) == g_mc_m(4)
        with pytest.raises(DomainError):
            g.truncate(7)


class TestNamedElements:
    def test_free_and_boolean_values(self):
        assert g_fc_m(4).z(parse_partition("{1,3}{2}{4}")) == 1
        assert g_bc_m(4).z(parse_partition("{1,3}{2}{4}")) == 0
        assert g_bc_m(4).z(parse_partition("{1,2}{3}{4}")) == 1

    def test_t_boolean_endpoints(self):
        assert g_bc_m_t(1, 6) == g_fc_m(6)
        assert g_bc_m_t(0, 6) == g_bc_m(6)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_t_boolean_counts_inner_blocks(self, n):
        t = PolyRing(["t"]).gen("t")
        g = g_bc_m_t(t, n)
        for p in enumerate_nc(n):
            assert g.z(p) == t ** oracles.inner_blocks(p.blocks)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_monotone_values(self, n):
        g = g_mc_m(n)
        for p in enumerate_nc(n):
            expected = Fraction(oracles.monotone_orders(p.blocks), math.factorial(len(p)))
            assert g.z(p) == expected

    def test_u_values(self):
        q = PolyRing(["q"]).gen("q")
        g = u(q, 5)
        for p in enumerate_nc(5):
            expected = q ** (len(p) - 1) if is_irreducible(p) else 0
            assert g.z(p) == expected

    def test_u_is_one_parameter_subgroup(self):
        ring = PolyRing(["q1", "q2"])
        q1, q2 = ring.gens()
        assert u(q1, 6) * u(q2, 6) == u(q1 + q2, 6)
        assert inverse(u(q1, 6)) == u(-q1, 6)
        assert u(0, 6) == unit_e(6)

    def test_boolean_translation(self):
        ring = PolyRing(["s", "t"])
        s, t = ring.gens()
        assert g_bc_m_t(s, 6) * inverse(g_bc_m_t(t, 6)) == u(s - t, 6)

    def test_membership(self):
        assert is_c_to_m(g_fc_m(6)) and is_c_to_m(g_mc_m(6)) and is_c_to_m(g_bc_m(6))
        assert is_multiplicative(g_fc_m(6))
        assert not is_multiplicative(g_bc_m(6))
        assert not is_multiplicative(g_mc_m(6))
        assert is_c_to_c(u(2, 6)) and not is_c_to_c(g_fc_m(6))


class TestCosets:
    def test_cc_closed(self):
        rng = random.Random(3)

        def random_cc():
            return SemiMultFn.from_callable(
                5, lambda p: Fraction(rng.randint(-4, 4), 3) if is_irreducible(p) else 0
            )

        a, b = random_cc(), random_cc()
        assert is_c_to_c(a * b)
        assert is_c_to_c(inverse(a))

    @pytest.mark.parametrize("factory", [g_fc_m, g_mc_m, lambda n: g_bc_m_t(Fraction(2, 3), n)])
    def test_decompose_roundtrip(self, factory):
        h = factory(6)
        g = right_coset_decompose(h)
        assert is_c_to_c(g)
        assert g * g_bc_m(6) == h

    def test_t_boolean_decomposes_to_u(self):
        t = PolyRing(["t"]).gen("t")
        assert right_coset_decompose(g_bc_m_t(t, 6)) == u(t, 6)

    def test_decompose_rejects_non_cm(self):
        with pytest.raises(DomainError):
            right_coset_decompose(random_function(4, random.Random(1), density=1.0))


class TestNormalizer:
    def test_conjugate_is_multiplicative_symbolically(self):
        ring = PolyRing(["q"] + [f"l{k}" for k in range(2, 7)])
        lam = [1] + [ring.gen(f"l{k}") for k in range(2, 7)]
        conj = conjugate_by_u(mult_from_lambda(lam), ring.gen("q"))
        assert isinstance(conj, MultFn)
        q = ring.gen("q")
        for n in range(1, 7):
            assert conj.lam[n - 1] == theta_formula(lam, q, n)
        l2, l3, l4 = lam[1], lam[2], lam[3]
        assert conj.lam[2] == l3 + q * l2
        assert conj.lam[3] == l4 + 2 * q * l3 + q * l2**2 + q**2 * l2

    def test_conjugate_by_zero_is_identity(self):
        f = mult_from_lambda([1, 2, Fraction(-1, 3), 5])
        assert conjugate_by_u(f, 0) == f

    def test_theta_small_degrees(self):
        ring = PolyRing(["q", "l2", "l3", "l4"])
        q, l2, l3, l4 = ring.gens()
        lam = [1, l2, l3, l4]
        assert theta_formula(lam, q, 3) == q * l2 + l3
        assert theta_formula(lam, q, 4) == q**2 * l2 + q * l2**2 + 2 * q * l3 + l4

    def test_mult_from_lambda_validation(self):
        with pytest.raises(DomainError):
            mult_from_lambda([2, 1])
        with pytest.raises(DomainError):
            mult_from_lambda([])
