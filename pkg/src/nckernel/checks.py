"""Named machine-checkable properties, grouped into suites for ``nckernel check``.

Each property takes the degree cap and returns ``True`` when it holds.
Random inputs come from a fixed seed so that a run is reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import cumulant_engine as ce
from . import hopf_algebra as ha
from . import incidence_group as ig
from .coeff_rings import PolyRing
from .nc_lattice import catalan, enumerate_nc, is_irreducible, kreweras, leq, ll, zero

SEED = 20240917


@dataclass(frozen=True)
class Property:
    suite: str
    name: str
    run: Callable[[int], bool]


def random_function(n_max: int, rng: random.Random, density: float = 0.7) -> ig.SemiMultFn:
    """A function with small random rational values on a random subset of partitions."""

    def value(_p: object) -> Fraction | int:
        if rng.random() > density:
            return 0
        return Fraction(rng.randint(-5, 5), rng.randint(1, 4))

    return ig.SemiMultFn.from_callable(n_max, value)


# -- lattice ---------------------------------------------------------------------------------


def _catalan_counts(n_max: int) -> bool:
    return all(len(enumerate_nc(n)) == catalan(n) for n in range(1, n_max + 1))


def _kreweras_rank(n_max: int) -> bool:
    return all(len(p) + len(kreweras(p)) == n + 1 for n in range(1, n_max + 1) for p in enumerate_nc(n))


def _kreweras_antitone(n_max: int) -> bool:
    for n in range(1, min(n_max, 6) + 1):
        parts = enumerate_nc(n)
        for p in parts:
            for q in parts:
                if leq(p, q) != leq(kreweras(q), kreweras(p)):
                    return False
    return True


def _ll_count(n_max: int) -> bool:
    for n in range(1, min(n_max, 6) + 1):
        for p in enumerate_nc(n):
            if is_irreducible(p):
                count = sum(1 for s in enumerate_nc(n) if ll(p, s))
                if count != 2 ** (len(p) - 1):
                    return False
    return True


# -- group -------------------------------------------------------------------------------------


def _associativity(n_max: int) -> bool:
    rng = random.Random(SEED)
    a, b, c = (random_function(n_max, rng) for _ in range(3))
    return (a * b) * c == a * (b * c)


def _inverses(n_max: int) -> bool:
    rng = random.Random(SEED + 1)
    g = random_function(n_max, rng)
    e = ig.unit_e(n_max)
    gi = ig.inverse(g)
    return g * gi == e and gi * g == e


def _u_additive(n_max: int) -> bool:
    ring = PolyRing(["q1", "q2"])
    q1, q2 = ring.gens()
    top = min(n_max, 7)
    return ig.u(q1, top) * ig.u(q2, top) == ig.u(q1 + q2, top)


def _multiplicative_commute(n_max: int) -> bool:
    rng = random.Random(SEED + 2)
    lam1 = [1] + [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n_max - 1)]
    lam2 = [1] + [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n_max - 1)]
    f1 = ig.mult_from_lambda(lam1).as_semimult()
    f2 = ig.mult_from_lambda(lam2).as_semimult()
    return f1 * f2 == f2 * f1


# -- cumulants -----------------------------------------------------------------------------------


def _boolean_transition(n_max: int) -> bool:
    ring = PolyRing(["s", "t"])
    s, t = ring.gens()
    kernel = ce.transition_kernel(ce.t_boolean(s), ce.t_boolean(t), n_max)
    return kernel == ig.u(s - t, n_max)


def _t_boolean_product(n_max: int) -> bool:
    top = min(n_max, 6)
    ring = PolyRing(["t"] + [f"x{k}" for k in range(2, top + 1)] + [f"y{k}" for k in range(2, top + 1)])
    bx = ce.MomentSeq.of([1] + [ring.gen(f"x{k}") for k in range(2, top + 1)], ring)
    by = ce.MomentSeq.of([1] + [ring.gen(f"y{k}") for k in range(2, top + 1)], ring)
    return ce.t_boolean_multiply_check(bx, by, ring.gen("t"))


def _tilde_alpha(n_max: int) -> bool:
    top = min(n_max, 6)
    ring = PolyRing([f"a{k}" for k in range(1, top + 1)])
    return ce.tilde_alpha_identity_check(list(ring.gens()))


def _discrepancy_small(n_max: int) -> bool:
    return all(ce.monotone_discrepancy(n) == 0 for n in range(2, min(n_max, 4) + 1))


# -- hopf ---------------------------------------------------------------------------------------


def _antipode_agreement(n_max: int) -> bool:
    for n in range(2, min(n_max, 6) + 1):
        for p in enumerate_nc(n):
            if p.is_one():
                continue
            left = ha.antipode_bogoliubov(ha.X(p), "left")
            if left != ha.antipode_bogoliubov(ha.X(p), "right"):
                return False
            if left != ha.antipode_chains(p, efficient=True):
                return False
    return True


def _id_star_s(n_max: int) -> bool:
    for n in range(2, min(n_max, 6) + 1):
        for p in enumerate_nc(n):
            if not p.is_one() and ha.map_convolution(ha.identity_map, ha.antipode_map, ha.X(p)):
                return False
    return True


def _tn_sequence(n_max: int) -> bool:
    top = min(n_max, 6)
    counts = ha.count_efficient_chains_0n(top)
    direct = [1] + [len(ha.antipode_chain_terms(zero(n), True)) for n in range(2, top + 1)]
    return counts == direct and ha.u_functional_equation_holds(9)


PROPERTIES: tuple[Property, ...] = (
    Property("lattice", "catalan-counts", _catalan_counts),
    Property("lattice", "kreweras-rank", _kreweras_rank),
    Property("lattice", "kreweras-antitone", _kreweras_antitone),
    Property("lattice", "ll-upper-count", _ll_count),
    Property("group", "associativity", _associativity),
    Property("group", "inverses", _inverses),
    Property("group", "u-additive", _u_additive),
    Property("group", "multiplicative-commute", _multiplicative_commute),
    Property("cumulants", "boolean-transition", _boolean_transition),
    Property("cumulants", "t-boolean-product", _t_boolean_product),
    Property("cumulants", "tilde-alpha", _tilde_alpha),
    Property("cumulants", "monotone-discrepancy-small", _discrepancy_small),
    Property("hopf", "antipode-agreement", _antipode_agreement),
    Property("hopf", "id-star-antipode", _id_star_s),
    Property("hopf", "tn-sequence", _tn_sequence),
)

SUITES: tuple[str, ...] = ("lattice", "group", "cumulants", "hopf", "all")

# Numeric suites default to a cap of 8, symbolic ones to 6.
DEFAULT_NMAX = {"lattice": 8, "group": 6, "cumulants": 6, "hopf": 6, "all": 6}


def properties_for(suite: str) -> list[Property]:
    if suite == "all":
        return list(PROPERTIES)
    return [p for p in PROPERTIES if p.suite == suite]
