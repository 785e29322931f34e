"""JSON encodings shared by the command line and the golden files.

* functions: ``{"n_max": k, "ring": "QQ[q]", "z": {"{1}{2}": "q", ...}}``;
  omitted partitions have value 0, except ``z(1_n) = 1``.
* sequences: ``{"ring": "QQ", "a": ["1", "2", ...]}``.

Output is deterministic: keys sorted, partitions listed in canonical order.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .coeff_rings import QQ, DualRing, PolyRing, Ring, Scalar, format_scalar, parse_ring, parse_scalar
from .cumulant_engine import MomentSeq
from .errors import DomainError, ParseError
from .incidence_group import SemiMultFn
from .nc_lattice import parse_partition

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def dumps(obj: Any) -> str:
    """Canonical JSON text (sorted keys, two-space indent)."""
    return json.dumps(obj, sort_keys=True, indent=2)


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {source}: {exc.msg}", "", exc.pos) from None


def infer_ring(*texts: str) -> Ring:
    """``QQ`` if the expressions mention no symbols, else ``QQ[...]`` on the sorted symbols.

    The symbol ``eps`` makes the result a dual ring.
    """
    names: set[str] = set()
    for t in texts:
        names.update(_IDENT.findall(t))
    dual = "eps" in names
    names.discard("eps")
    base: Ring = PolyRing(sorted(names)) if names else QQ
    return DualRing(base) if dual else base  # type: ignore[arg-type]


def function_to_json(g: SemiMultFn) -> dict[str, Any]:
    return {
        "n_max": g.n_max,
        "ring": g.ring.name,
        "z": {str(p): format_scalar(v, g.ring) for p, v in g.items()},
    }


def function_from_json(data: Any) -> SemiMultFn:
    if not isinstance(data, dict) or not {"n_max", "z"} <= set(data):
        raise ParseError("function JSON needs keys 'n_max' and 'z'", "", 0)
    n_max = data["n_max"]
    if not isinstance(n_max, int) or isinstance(n_max, bool):
        raise ParseError("'n_max' must be an integer", "", 0)
    z_map = data["z"]
    if not isinstance(z_map, dict):
        raise ParseError("'z' must be an object", "", 0)
    ring = parse_ring(data["ring"]) if "ring" in data else infer_ring(*map(str, z_map.values()))
    values: dict = {}
    for key, text in z_map.items():
        p = parse_partition(key)
        if p in values:
            raise DomainError(f"duplicate entry for {p}")
        values[p] = parse_scalar(str(text), ring)
    return SemiMultFn(n_max, values, ring)


def sequence_to_json(m: MomentSeq) -> dict[str, Any]:
    return {"ring": m.ring.name, "a": [format_scalar(v, m.ring) for v in m.a]}


def sequence_from_json(data: Any) -> MomentSeq:
    if not isinstance(data, dict) or "a" not in data or not isinstance(data["a"], list):
        raise ParseError("sequence JSON needs a list under 'a'", "", 0)
    texts = [str(v) for v in data["a"]]
    ring = parse_ring(data["ring"]) if "ring" in data else infer_ring(*texts)
    values: list[Scalar] = [parse_scalar(t, ring) for t in texts]
    return MomentSeq(tuple(values), ring)
