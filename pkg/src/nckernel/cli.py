"""Command-line front end: every command prints canonical JSON on stdout.

Exit status is 0 on success, 1 when an input is outside an operation's
domain, 2 for unparsable input or bad usage, and 3 when ``check`` finds a
failing property.
"""

from __future__ import annotations

import json
import sys
from typing import Any, Callable

import click

from . import checks
from . import cumulant_engine as ce
from . import hopf_algebra as ha
from . import incidence_group as ig
from .coeff_rings import QQ, Ring, Scalar, common_ring, parse_scalar
from .errors import DomainError, ParseError
from .nc_lattice import ORDERS, enumerate_nc, kreweras, parse_partition
from .serialization import (
    dumps,
    function_from_json,
    function_to_json,
    infer_ring,
    loads,
    sequence_from_json,
    sequence_to_json,
)

EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_CHECK_FAILED = 3


def _emit(obj: Any) -> None:
    click.echo(dumps(obj))


def _read_json(stream: Any) -> Any:
    return loads(stream.read(), getattr(stream, "name", "<input>"))


def _parse_param(text: str, ring: Ring | None = None) -> Scalar:
    return parse_scalar(text, ring or infer_ring(text))


class _Group(click.Group):
    """Maps library errors to exit statuses instead of tracebacks."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except ParseError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_PARSE)
        except DomainError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_DOMAIN)


@click.group(cls=_Group)
def main() -> None:
    """Exact computations with semi-multiplicative functions on non-crossing partitions."""


# -- nc ------------------------------------------------------------------------------------------


@main.group(cls=_Group)
def nc() -> None:
    """Non-crossing partition lattice."""


@nc.command("enumerate")
@click.option("-n", "n", type=int, required=True, help="Ground set size.")
@click.option("--order", type=click.Choice(sorted(ORDERS)), default=None, help="Also list strict relations.")
def nc_enumerate(n: int, order: str | None) -> None:
    """List NC(n) in canonical order, optionally with an order relation."""
    parts = enumerate_nc(n)
    out: dict[str, Any] = {"n": n, "count": len(parts), "partitions": [str(p) for p in parts]}
    if order is not None:
        rel = ORDERS[order]
        out["order"] = order
        out["relations"] = [[str(p), str(q)] for p in parts for q in parts if p != q and rel(p, q)]
    _emit(out)


@nc.command("kreweras")
@click.argument("partition")
def nc_kreweras(partition: str) -> None:
    """Kreweras complement of PARTITION, e.g. '{1,2}{3}'."""
    p = parse_partition(partition)
    _emit({"partition": str(p), "kreweras": str(kreweras(p))})


# -- fn ------------------------------------------------------------------------------------------


@main.group(cls=_Group)
def fn() -> None:
    """Semi-multiplicative functions in JSON form."""


@fn.command("convolve")
@click.argument("first", type=click.File("r"))
@click.argument("second", type=click.File("r"))
def fn_convolve(first: Any, second: Any) -> None:
    """Convolution FIRST * SECOND."""
    g1 = function_from_json(_read_json(first))
    g2 = function_from_json(_read_json(second))
    _emit(function_to_json(ig.convolve(g1, g2)))


@fn.command("inverse")
@click.argument("function", type=click.File("r"))
def fn_inverse(function: Any) -> None:
    """Convolution inverse."""
    _emit(function_to_json(ig.inverse(function_from_json(_read_json(function)))))


_NAMED: dict[str, tuple[str | None, Callable[..., ig.SemiMultFn]]] = {
    "e": (None, lambda n: ig.unit_e(n)),
    "fc_m": (None, ig.g_fc_m),
    "bc_m": (None, ig.g_bc_m),
    "mc_m": (None, ig.g_mc_m),
    "bc_m_t": ("t", lambda n, t: ig.g_bc_m_t(t, n)),
    "u": ("q", lambda n, q: ig.u(q, n)),
}


@fn.command("named")
@click.argument("name", type=click.Choice(sorted(_NAMED)))
@click.option("--param", "params", multiple=True, help="Parameter as KEY=VALUE, e.g. q=-1/2 or t=t.")
@click.option("--nmax", type=int, default=6, show_default=True)
def fn_named(name: str, params: tuple[str, ...], nmax: int) -> None:
    """A named group element truncated at --nmax."""
    wanted, factory = _NAMED[name]
    given: dict[str, str] = {}
    for item in params:
        key, sep, value = item.partition("=")
        if not sep:
            raise ParseError("expected KEY=VALUE", item, len(item))
        given[key.strip()] = value
    if wanted is None:
        if given:
            raise DomainError(f"{name} takes no parameters")
        g = factory(nmax)
    else:
        if set(given) != {wanted}:
            raise DomainError(f"{name} needs exactly the parameter {wanted}")
        g = factory(nmax, _parse_param(given[wanted]))
    _emit(function_to_json(g))


# -- seq -----------------------------------------------------------------------------------------


@main.group(cls=_Group)
def seq() -> None:
    """Moment and cumulant sequences in JSON form."""


@seq.command("act")
@click.argument("sequence", type=click.File("r"))
@click.argument("function", type=click.File("r"))
def seq_act(sequence: Any, function: Any) -> None:
    """Right action SEQUENCE . FUNCTION."""
    m = sequence_from_json(_read_json(sequence))
    g = function_from_json(_read_json(function))
    _emit(sequence_to_json(ce.act(m, g)))


def _parse_brand(text: str, ring: Ring) -> tuple[ce.Brand, Ring]:
    name, sep, param = text.partition(":")
    if not sep:
        return name, ring
    if name.replace("-", "_").lower() not in ("t_boolean", "tboolean"):
        raise DomainError(f"brand {name!r} takes no parameter")
    own = infer_ring(param)
    joint = ring if own == QQ else common_ring(ring, own)
    return ce.t_boolean(parse_scalar(param, joint)), joint


@seq.command("transform")
@click.option("--from", "from_brand", required=True, help="free, boolean, monotone or t_boolean:<t>.")
@click.option("--to", "to_brand", required=True, help="free, boolean, monotone, t_boolean:<t> or moments.")
@click.argument("sequence", type=click.File("r"))
def seq_transform(from_brand: str, to_brand: str, sequence: Any) -> None:
    """Convert a sequence between cumulant brands, or to and from moments."""
    m = sequence_from_json(_read_json(sequence))
    ring = m.ring
    src, ring = (None, ring) if from_brand == "moments" else _parse_brand(from_brand, ring)
    dst, ring = (None, ring) if to_brand == "moments" else _parse_brand(to_brand, ring)
    if src is None and dst is None:
        out = m
    elif src is None:
        out = ce.moments_to_cumulants(m, dst)
    elif dst is None:
        out = ce.cumulants_to_moments(m, src)
    else:
        out = ce.transition(m, src, dst)
    _emit(sequence_to_json(out))


@seq.command("freemul")
@click.argument("x", type=click.File("r"))
@click.argument("y", type=click.File("r"))
def seq_freemul(x: Any, y: Any) -> None:
    """Free cumulants of xy from free cumulants of free x and y."""
    kx = sequence_from_json(_read_json(x))
    ky = sequence_from_json(_read_json(y))
    _emit(sequence_to_json(ce.free_multiply(kx, ky)))


# -- appendix ------------------------------------------------------------------------------------


@main.command("appendix")
@click.option("--n", "n", type=int, required=True, help="Degree, 2 <= n <= lattice cap.")
def appendix(n: int) -> None:
    """Monotone cumulant discrepancy of a free product at degree n."""
    poly = ce.monotone_discrepancy(n)
    ring = ce.discrepancy_ring(n)
    _emit({"n": n, "variables": list(ring.names), "polynomial": str(poly)})


# -- hopf ----------------------------------------------------------------------------------------


@main.group(cls=_Group)
def hopf() -> None:
    """The Hopf algebra on generators X_p."""


@hopf.command("antipode")
@click.argument("partition")
@click.option("--method", type=click.Choice(["bogoliubov", "chains", "efficient"]), default="efficient", show_default=True)
@click.option("--side", type=click.Choice(["left", "right"]), default="left", show_default=True, help="Recursion side for bogoliubov.")
@click.option("--nmax", type=int, default=6, show_default=True, help="Largest ground set accepted.")
def hopf_antipode(partition: str, method: str, side: str, nmax: int) -> None:
    """Antipode of the generator X_PARTITION."""
    p = parse_partition(partition)
    if p.n > nmax:
        raise DomainError(f"{p} has n={p.n} above --nmax={nmax}")
    out: dict[str, Any] = {"pi": str(p), "method": method}
    if method == "bogoliubov":
        if p.is_one():
            raise DomainError("X of a one-block partition is the unit; its antipode is trivial")
        result = ha.antipode_bogoliubov(ha.X(p), side)
        out["side"] = side
    else:
        result = ha.antipode_chains(p, efficient=(method == "efficient"))
    out["terms"] = result.to_json_terms()
    _emit(out)


@hopf.command("tn")
@click.option("--limit", type=int, required=True, help="Number of terms.")
def hopf_tn(limit: int) -> None:
    """Counts of efficient chains from 0_n to 1_n for n = 1..limit."""
    click.echo(json.dumps(ha.count_efficient_chains_0n(limit)))


# -- check ---------------------------------------------------------------------------------------


@main.command("check")
@click.option("--suite", type=click.Choice(list(checks.SUITES)), default="all", show_default=True)
@click.option("--nmax", type=int, default=None, help="Degree cap (default 8 for lattice, 6 otherwise).")
def check(suite: str, nmax: int | None) -> None:
    """Run a suite of properties; stops at the first failure."""
    cap = nmax if nmax is not None else checks.DEFAULT_NMAX[suite]
    if cap < 2:
        raise DomainError("--nmax must be at least 2")
    results = []
    for prop in checks.properties_for(suite):
        ok = prop.run(cap)
        results.append({"suite": prop.suite, "property": prop.name, "passed": ok})
        if not ok:
            _emit({"suite": suite, "nmax": cap, "results": results})
            click.echo(f"FAILED: {prop.suite}/{prop.name}", err=True)
            sys.exit(EXIT_CHECK_FAILED)
    _emit({"suite": suite, "nmax": cap, "results": results})


if __name__ == "__main__":  # pragma: no cover
    main()
