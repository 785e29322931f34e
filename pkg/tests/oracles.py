"""Brute-force reference implementations used only by the tests.

Nothing here imports the lattice internals beyond the ``Partition`` value
type: every oracle works from definitions on plain lists of sets.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

Blocks = tuple[tuple[int, ...], ...]


def set_partitions(n: int) -> Iterator[Blocks]:
    """All set partitions of {1..n} via restricted growth strings."""

    def grow(prefix: list[int], top: int) -> Iterator[list[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for label in range(top + 2):
            yield from grow(prefix + [label], max(top, label))

    if n == 0:
        yield ()
        return
    for rgs in grow([0], 0):
        blocks: dict[int, list[int]] = {}
        for i, lab in enumerate(rgs, start=1):
            blocks.setdefault(lab, []).append(i)
        yield tuple(sorted(tuple(b) for b in blocks.values()))


def crosses(blocks: Sequence[Sequence[int]]) -> bool:
    """Whether some a < b < c < d has a, c in one block and b, d in another."""
    owner = {x: i for i, b in enumerate(blocks) for x in b}
    elems = sorted(owner)
    for a, b, c, d in itertools.combinations(elems, 4):
        if owner[a] == owner[c] and owner[b] == owner[d] and owner[a] != owner[b]:
            return True
    return False


def noncrossing(n: int) -> list[Blocks]:
    return [p for p in set_partitions(n) if not crosses(p)]


def refines(p: Blocks, q: Blocks) -> bool:
    """Every block of ``q`` is a union of blocks of ``p``."""
    return all(any(set(b) <= set(w) for w in q) for b in p)


def kreweras_interleaved(p: Blocks, n: int) -> Blocks:
    """Coarsest ``q`` on primed points with ``p`` and ``q`` jointly non-crossing.

    Point ``i`` sits at position ``2i - 1`` and ``i'`` at position ``2i``.
    """
    best: Blocks | None = None
    for q in noncrossing(n):
        joint = [tuple(2 * x - 1 for x in b) for b in p] + [tuple(2 * x for x in b) for b in q]
        if not crosses(joint) and (best is None or len(q) < len(best)):
            best = q
    assert best is not None
    return best


def meet(p: Blocks, q: Blocks) -> Blocks:
    out = []
    for b in p:
        for w in q:
            common = tuple(sorted(set(b) & set(w)))
            if common:
                out.append(common)
    return tuple(sorted(out))


def join_in(p: Blocks, q: Blocks, universe: Sequence[Blocks]) -> Blocks:
    """Least common coarsening of ``p`` and ``q`` inside ``universe``."""
    uppers = [s for s in universe if refines(p, s) and refines(q, s)]
    least = [s for s in uppers if all(refines(s, t) for t in uppers)]
    assert len(least) == 1
    return least[0]


def nests_inside(inner: Sequence[int], outer: Sequence[int]) -> bool:
    return min(outer) < min(inner) and max(inner) < max(outer)


def monotone_orders(p: Blocks) -> int:
    """Linear orders of the blocks in which every nested block comes after its nesting one."""
    count = 0
    for perm in itertools.permutations(range(len(p))):
        pos = {b: i for i, b in enumerate(perm)}
        if all(
            pos[i] < pos[j]
            for i, j in itertools.permutations(range(len(p)), 2)
            if nests_inside(p[j], p[i])
        ):
            count += 1
    return count


def inner_blocks(p: Blocks) -> int:
    return sum(1 for b in p if any(nests_inside(b, w) for w in p if w != b))


def is_irreducible(p: Blocks, n: int) -> bool:
    return any(1 in b and n in b for b in p)


def restriction(p: Blocks, w: Sequence[int]) -> Blocks:
    """``p`` restricted to ``w`` and relabelled to {1..|w|}."""
    rank = {x: i for i, x in enumerate(sorted(w), start=1)}
    return tuple(sorted(tuple(rank[x] for x in b) for b in p if set(b) <= set(w)))


def all_chains(p: Blocks, q: Blocks, universe: Sequence[Blocks]) -> list[tuple[Blocks, ...]]:
    """Strict chains from ``p`` to ``q`` in ``universe``."""
    if p == q:
        return [(q,)]
    out = []
    for s in universe:
        if s != p and refines(p, s) and refines(s, q):
            out.extend((p,) + rest for rest in all_chains(s, q, universe))
    return out


def is_efficient_chain(chain: Sequence[Blocks]) -> bool:
    """Each block absent from the first step occurs in exactly one later step."""
    first = set(chain[0])
    seen: dict[tuple[int, ...], int] = {}
    for s in chain[1:]:
        for b in s:
            if b not in first:
                seen[b] = seen.get(b, 0) + 1
    return all(v == 1 for v in seen.values())


def incidence_matrix(zvals: dict[Blocks, Fraction | int], n: int) -> tuple[list[Blocks], list[list]]:
    """Full table ``g(p, s)`` on NC(n) from the values ``z(p) = g(p, 1_n)`` at all sizes."""
    elems = noncrossing(n)
    mat = []
    for p in elems:
        row = []
        for s in elems:
            if not refines(p, s):
                row.append(0)
                continue
            v = 1
            for w in s:
                v *= zvals.get(restriction(p, w), 1 if len(restriction(p, w)) == 1 else 0)
            row.append(v)
        mat.append(row)
    return elems, mat


def matmul(a: list[list], b: list[list]) -> list[list]:
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
