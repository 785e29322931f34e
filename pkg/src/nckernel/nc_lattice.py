"""Non-crossing partitions: canonical form, enumeration and order theory.

A :class:`Partition` of ``{1..n}`` stores its blocks sorted by minimum with
ascending elements, so equal partitions are equal as tuples.  Everything that
the other modules need from the lattice ``NC(n)`` lives here: the three
partial orders, Kreweras complements, relabeled restrictions, concatenation
and irreducible factorisation, and chain enumeration.

Enumeration is capped at :func:`n_max` (default 10, overridable through the
``NCKERNEL_NMAX`` environment variable).
"""

from __future__ import annotations

import itertools
import math
import os
import threading
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ParseError

DEFAULT_NMAX = 10
ENV_NMAX = "NCKERNEL_NMAX"


def n_max() -> int:
    """Current enumeration cap."""
    raw = os.environ.get(ENV_NMAX)
    if raw is None or raw.strip() == "":
        return DEFAULT_NMAX
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{ENV_NMAX} must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"{ENV_NMAX} must be positive, got {value}")
    return value


class Partition:
    """A non-crossing partition of ``{1..n}`` in canonical block form.

    Construct through :meth:`from_blocks` (validates and canonicalises) or
    :func:`parse_partition`.  ``labels[i - 1]`` is the index of the block
    containing ``i``.
    """

    __slots__ = ("n", "blocks", "labels", "_hash")

    n: int
    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]

    def __init__(self, n: int, blocks: tuple[tuple[int, ...], ...], labels: tuple[int, ...]) -> None:
        # Trusted constructor; use from_blocks for untrusted input.
        self.n = n
        self.blocks = blocks
        self.labels = labels
        self._hash = hash(blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> Partition:
        bl = [tuple(sorted(int(x) for x in b)) for b in blocks]
        if any(not b for b in bl):
            raise DomainError("blocks must be nonempty")
        elements = sorted(x for b in bl for x in b)
        size = len(elements) if n is None else n
        if elements != list(range(1, size + 1)):
            raise DomainError(f"blocks do not partition {{1..{size}}}")
        if size < 1:
            raise DomainError("a partition needs n >= 1")
        bl.sort()
        p = cls._make(size, tuple(bl))
        if not _is_noncrossing(p):
            raise DomainError(f"{p} is crossing")
        return p

    @classmethod
    def _make(cls, n: int, blocks: tuple[tuple[int, ...], ...]) -> Partition:
        labels = [0] * n
        for i, b in enumerate(blocks):
            for x in b:
                labels[x - 1] = i
        return cls(n, blocks, tuple(labels))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> Partition:
        """Build from any block-label sequence (labels need not be canonical)."""
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        blocks = tuple(sorted(tuple(g) for g in groups.values()))
        return cls._make(len(labels), blocks)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Partition):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def key(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """Total order used for deterministic sorting."""
        return (self.n, self.blocks)

    def is_one(self) -> bool:
        return len(self.blocks) == 1

    def is_zero(self) -> bool:
        return len(self.blocks) == self.n

    def block_sizes(self) -> tuple[int, ...]:
        """Block sizes in non-increasing order (the type of the partition)."""
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    def __repr__(self) -> str:
        return f"Partition({self})"


def _first_crossing(p: Partition) -> int | None:
    """Element at which a crossing is first detected, or ``None``."""
    # Scanning left to right, a block may only be re-entered if every block
    # opened after it has already closed.
    last = [b[-1] for b in p.blocks]
    stack: list[int] = []
    for i in range(1, p.n + 1):
        lab = p.labels[i - 1]
        if stack and stack[-1] == lab:
            pass
        elif lab in stack:
            return i
        else:
            stack.append(lab)
        if last[lab] == i:
            stack.pop()
    return None


def _is_noncrossing(p: Partition) -> bool:
    return _first_crossing(p) is None


def parse_partition(text: str) -> Partition:
    """Parse the text form ``{1,2,5}{3,4}``.

    Raises :class:`ParseError` with the offending position for malformed,
    non-partition or crossing input.
    """
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    pos = 0
    blocks: list[list[int]] = []
    block_at: list[int] = []
    if not s:
        raise ParseError("empty partition", text, offset)
    while pos < len(s):
        if s[pos] != "{":
            raise ParseError("expected '{'", text, offset + pos)
        end = s.find("}", pos)
        if end < 0:
            raise ParseError("unterminated block", text, offset + pos)
        body = s[pos + 1 : end]
        elems: list[int] = []
        cursor = pos + 1
        for piece in body.split(","):
            stripped = piece.strip()
            if not stripped.isdigit():
                raise ParseError("expected a positive integer", text, offset + cursor)
            elems.append(int(stripped))
            cursor += len(piece) + 1
        blocks.append(elems)
        block_at.append(offset + pos)
        pos = end + 1
    seen: dict[int, int] = {}
    for b, at in zip(blocks, block_at):
        for x in b:
            if x in seen:
                raise ParseError(f"element {x} appears twice", text, at)
            seen[x] = at
    element_at = dict(seen)
    n = len(seen)
    for x, at in seen.items():
        if x < 1 or x > n:
            raise ParseError(f"element {x} outside 1..{n}", text, at)
    canon = sorted(tuple(sorted(b)) for b in blocks)
    p = Partition._make(n, tuple(canon))
    bad = _first_crossing(p)
    if bad is not None:
        raise ParseError(f"partition is crossing at element {bad}", text, element_at[bad])
    return p


# -- basic constructors ----------------------------------------------------


@lru_cache(maxsize=None)
def zero(n: int) -> Partition:
    """The partition ``0_n`` into singletons."""
    if n < 1:
        raise DomainError("n must be positive")
    return Partition(n, tuple((i,) for i in range(1, n + 1)), tuple(range(n)))


@lru_cache(maxsize=None)
def one(n: int) -> Partition:
    """The one-block partition ``1_n``."""
    if n < 1:
        raise DomainError("n must be positive")
    return Partition(n, (tuple(range(1, n + 1)),), (0,) * n)


# -- enumeration -------------------------------------------------------------

_enum_lock = threading.Lock()
_enum_cache: dict[int, tuple[Partition, ...]] = {}


def _generate_blocks(lo: int, hi: int) -> list[list[tuple[int, ...]]]:
    """All non-crossing partitions of the interval ``lo..hi`` as block lists."""
    if lo > hi:
        return [[]]
    out: list[list[tuple[int, ...]]] = []
    rest = list(range(lo + 1, hi + 1))
    # The block of ``lo`` is {lo} plus a subset S; the gaps between
    # consecutive members (and after the last one) are filled independently.
    for r in range(len(rest) + 1):
        for chosen in itertools.combinations(rest, r):
            block = (lo,) + chosen
            bounds = list(block) + [hi + 1]
            gap_options = [
                _generate_blocks_cached(bounds[i] + 1, bounds[i + 1] - 1) for i in range(len(block))
            ]
            for combo in itertools.product(*gap_options):
                merged = [block]
                for part in combo:
                    merged.extend(part)
                out.append(merged)
    return out


@lru_cache(maxsize=None)
def _generate_blocks_cached(lo: int, hi: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    return tuple(tuple(bl) for bl in _generate_blocks(lo, hi))


def enumerate_nc(n: int) -> tuple[Partition, ...]:
    """All partitions in ``NC(n)``, sorted by :attr:`Partition.key`.

    The result is memoised per ``n``.  Raises :class:`DomainError` for
    ``n < 1`` or ``n`` above the configured cap.
    """
    cap = n_max()
    if not isinstance(n, int) or n < 1 or n > cap:
        raise DomainError(f"n must satisfy 1 <= n <= {cap}, got {n}")
    cached = _enum_cache.get(n)
    if cached is not None:
        return cached
    with _enum_lock:
        cached = _enum_cache.get(n)
        if cached is None:
            parts = [Partition._make(n, tuple(sorted(bl))) for bl in _generate_blocks_cached(1, n)]
            parts.sort(key=lambda p: p.blocks)
            cached = tuple(parts)
            _enum_cache[n] = cached
    return cached


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


# -- orders ------------------------------------------------------------------


def _check_same_n(p: Partition, q: Partition) -> None:
    if p.n != q.n:
        raise DomainError(f"ground sets differ: {p.n} vs {q.n}")


def leq(p: Partition, q: Partition) -> bool:
    """Reverse refinement: every block of ``q`` is a union of blocks of ``p``."""
    _check_same_n(p, q)
    ql = q.labels
    for b in p.blocks:
        lab = ql[b[0] - 1]
        for x in b:
            if ql[x - 1] != lab:
                return False
    return True


def ll(p: Partition, q: Partition) -> bool:
    """The order in which each block of ``q`` has its min and max in one block of ``p``."""
    if not leq(p, q):
        return False
    pl = p.labels
    return all(pl[w[0] - 1] == pl[w[-1] - 1] for w in q.blocks)


def sqsubseteq(p: Partition, q: Partition) -> bool:
    """The order in which ``p`` cuts every block of ``q`` into contiguous runs."""
    if not leq(p, q):
        return False
    pl = p.labels
    for w in q.blocks:
        seen: set[int] = set()
        prev = -1
        for x in w:
            lab = pl[x - 1]
            if lab != prev:
                if lab in seen:
                    return False
                seen.add(lab)
                prev = lab
    return True


ORDERS = {"leq": leq, "ll": ll, "sq": sqsubseteq}


# -- Kreweras complement -------------------------------------------------------


def _as_permutation(p: Partition) -> list[int]:
    """0-based permutation sending each element to the next one in its block (cyclically)."""
    perm = [0] * p.n
    for b in p.blocks:
        for i, x in enumerate(b):
            perm[x - 1] = b[(i + 1) % len(b)] - 1
    return perm


def _from_permutation(perm: Sequence[int]) -> Partition:
    n = len(perm)
    labels = [-1] * n
    nxt = 0
    for start in range(n):
        if labels[start] < 0:
            x = start
            while labels[x] < 0:
                labels[x] = nxt
                x = perm[x]
            nxt += 1
    return Partition.from_labels(labels)


@lru_cache(maxsize=None)
def kreweras(p: Partition) -> Partition:
    """Kreweras complement, computed as the permutation ``p^{-1} gamma``.

    Here ``gamma = (1 2 ... n)`` and ``p`` is read as the permutation whose
    cycles are its blocks in increasing order.  This realises the usual
    interleaving definition; the test suite checks it against that
    definition directly.
    """
    perm = _as_permutation(p)
    n = p.n
    inv = [0] * n
    for i, j in enumerate(perm):
        inv[j] = i
    return _from_permutation([inv[(i + 1) % n] for i in range(n)])


@lru_cache(maxsize=None)
def kreweras_inverse(p: Partition) -> Partition:
    """The unique ``s`` with ``kreweras(s) == p`` (``s = gamma p^{-1}``)."""
    perm = _as_permutation(p)
    n = p.n
    inv = [0] * n
    for i, j in enumerate(perm):
        inv[j] = i
    return _from_permutation([(inv[i] + 1) % n for i in range(n)])


def relative_kreweras(p: Partition, s: Partition) -> Partition:
    """Kreweras complement of ``p`` taken blockwise inside ``s``."""
    if not leq(p, s):
        raise DomainError(f"{p} is not below {s}")
    labels = [0] * p.n
    nxt = 0
    for w in s.blocks:
        k = kreweras(restrict(p, w))
        for blk in k.blocks:
            for x in blk:
                labels[w[x - 1] - 1] = nxt
            nxt += 1
    return Partition.from_labels(labels)


# -- restriction, concatenation, factorisation ---------------------------------


@lru_cache(maxsize=1 << 20)
def _restrict(p: Partition, w: tuple[int, ...]) -> Partition:
    pl = p.labels
    return Partition.from_labels([pl[x - 1] for x in w])


def restrict(p: Partition, w: Iterable[int]) -> Partition:
    """Relabeled restriction of ``p`` to the subset ``w``, as a partition of ``{1..|w|}``."""
    wt = tuple(w)
    if not wt:
        raise DomainError("restriction set must be nonempty")
    if any(b <= a for a, b in zip(wt, wt[1:])):
        wt = tuple(sorted(set(wt)))
    if wt[0] < 1 or wt[-1] > p.n:
        raise DomainError(f"restriction set {wt} not inside 1..{p.n}")
    return _restrict(p, wt)


@lru_cache(maxsize=1 << 20)
def restriction_profile(p: Partition, s: Partition) -> tuple[Partition, ...]:
    """``(p_W for W in s.blocks)``: the relabeled restrictions along ``p <= s``.

    The caller must guarantee ``leq(p, s)``; this is the hot path shared by
    function evaluation and the Hopf-algebra comultiplication.
    """
    return tuple(_restrict(p, w) for w in s.blocks)


def lift(parts: Sequence[tuple[Partition, Sequence[int]]], n: int) -> Partition:
    """Assemble a partition of ``{1..n}`` from partitions living on disjoint sets.

    Each entry ``(q, w)`` places ``q`` (a partition of ``{1..|w|}``) on the
    ascending set ``w``.
    """
    labels = [-1] * n
    nxt = 0
    for q, w in parts:
        for b in q.blocks:
            for x in b:
                labels[w[x - 1] - 1] = nxt
            nxt += 1
    if min(labels, default=0) < 0:
        raise DomainError("pieces do not cover the ground set")
    return Partition.from_labels(labels)


def concat(p: Partition, q: Partition) -> Partition:
    """``p`` on ``1..p.n`` followed by ``q`` shifted to ``p.n+1..p.n+q.n``."""
    shift = p.n
    blocks = p.blocks + tuple(tuple(x + shift for x in b) for b in q.blocks)
    return Partition._make(p.n + q.n, blocks)


def interval_cover(p: Partition) -> list[tuple[int, int]]:
    """Finest interval partition above ``p``, as inclusive ``(start, end)`` pairs."""
    out: list[tuple[int, int]] = []
    start = 1
    reach = 0
    for i in range(1, p.n + 1):
        reach = max(reach, p.blocks[p.labels[i - 1]][-1])
        if reach == i:
            out.append((start, i))
            start = i + 1
    return out


def irreducible_factors(p: Partition) -> list[Partition]:
    """The unique irreducible partitions whose concatenation is ``p``."""
    return [restrict(p, range(a, b + 1)) for a, b in interval_cover(p)]


def is_irreducible(p: Partition) -> bool:
    """True iff 1 and n lie in the same block."""
    return p.labels[0] == p.labels[-1]


def is_interval(p: Partition) -> bool:
    return all(b[-1] - b[0] + 1 == len(b) for b in p.blocks)


def _nesting_parents(p: Partition) -> list[int]:
    """Index of the innermost block strictly enclosing each block, or -1."""
    parents = [-1] * len(p.blocks)
    stack: list[int] = []  # blocks open at the current position
    for idx, b in enumerate(p.blocks):
        while stack and p.blocks[stack[-1]][-1] < b[0]:
            stack.pop()
        parents[idx] = stack[-1] if stack else -1
        stack.append(idx)
    return parents


def inner_count(p: Partition) -> int:
    """Number of blocks nested inside some other block."""
    return sum(1 for par in _nesting_parents(p) if par >= 0)


def outer_count(p: Partition) -> int:
    """Number of blocks not nested inside any other block."""
    return len(p.blocks) - inner_count(p)


def irreducible_cover(p: Partition) -> Partition:
    """Smallest irreducible partition above ``p``."""
    if is_irreducible(p):
        return p
    first, last = p.labels[0], p.labels[-1]
    return Partition.from_labels([first if lab == last else lab for lab in p.labels])


def monotone_order_count(p: Partition) -> int:
    """Number of orderings of the blocks in which nested blocks come after their enclosers.

    Uses the forest hook-length formula ``|p|! / prod_V h(V)`` where ``h(V)``
    counts the blocks nested weakly inside ``V``.
    """
    parents = _nesting_parents(p)
    sizes = [1] * len(parents)
    # Blocks are sorted by minimum, so children always come after parents.
    for idx in range(len(parents) - 1, -1, -1):
        if parents[idx] >= 0:
            sizes[parents[idx]] += sizes[idx]
    denom = 1
    for s in sizes:
        denom *= s
    return math.factorial(len(parents)) // denom


# -- intervals ---------------------------------------------------------------

_lower_cache: dict[Partition, tuple[Partition, ...]] = {}
_upper_cache: dict[Partition, tuple[Partition, ...]] = {}


def below(s: Partition) -> tuple[Partition, ...]:
    """All ``p`` with ``p <= s`` (the lower interval), sorted by key."""
    cached = _lower_cache.get(s)
    if cached is not None:
        return cached
    options = []
    for w in s.blocks:
        options.append([(q, w) for q in _nc_unchecked(len(w))])
    out = sorted((lift(combo, s.n) for combo in itertools.product(*options)), key=lambda x: x.blocks)
    result = tuple(out)
    _lower_cache[s] = result
    return result


def above(p: Partition) -> tuple[Partition, ...]:
    """All ``s`` with ``p <= s`` (the upper interval), sorted by key.

    Uses that ``s >= p`` exactly when ``Kr(s) <= Kr(p)``.
    """
    cached = _upper_cache.get(p)
    if cached is not None:
        return cached
    result = tuple(sorted((kreweras_inverse(r) for r in below(kreweras(p))), key=lambda x: x.blocks))
    _upper_cache[p] = result
    return result


def _nc_unchecked(n: int) -> tuple[Partition, ...]:
    """Enumeration for internal sub-lattice use; bypasses the public cap."""
    cached = _enum_cache.get(n)
    if cached is not None:
        return cached
    with _enum_lock:
        cached = _enum_cache.get(n)
        if cached is None:
            parts = [Partition._make(n, tuple(sorted(bl))) for bl in _generate_blocks_cached(1, n)]
            parts.sort(key=lambda x: x.blocks)
            cached = tuple(parts)
            _enum_cache[n] = cached
    return cached


# -- chains ------------------------------------------------------------------


class Chain(tuple):
    """A strictly increasing tuple ``(p_0 < p_1 < ... < p_k)`` with ``k >= 1``."""

    __slots__ = ()

    def __new__(cls, steps: Iterable[Partition]) -> Chain:
        return super().__new__(cls, tuple(steps))

    @property
    def n(self) -> int:
        return self[0].n

    @property
    def length(self) -> int:
        return len(self) - 1

    def blocks(self) -> set[tuple[int, ...]]:
        """Every set that is a block of some step."""
        return {b for p in self for b in p.blocks}

    def new_blocks(self) -> set[tuple[int, ...]]:
        """Blocks of later steps that are not blocks of the first step."""
        base = set(self[0].blocks)
        return {b for p in self[1:] for b in p.blocks if b not in base}

    def is_efficient(self) -> bool:
        """Every new block occurs in exactly one step after the first."""
        counts: dict[tuple[int, ...], int] = {}
        base = set(self[0].blocks)
        for p in self[1:]:
            for b in p.blocks:
                if b not in base:
                    counts[b] = counts.get(b, 0) + 1
        return all(c == 1 for c in counts.values())

    def __repr__(self) -> str:
        return "Chain(" + " < ".join(str(p) for p in self) + ")"


def _all_chains(p: Partition, q: Partition) -> Iterator[tuple[Partition, ...]]:
    if p == q:
        yield (q,)
        return
    for s in above(p):
        if s != p and leq(s, q):
            for rest in _all_chains(s, q):
                yield (p,) + rest


_efficient_cache: dict[Partition, tuple[tuple[Partition, ...], ...]] = {}


def efficient_chains_to_top(p: Partition) -> tuple[tuple[Partition, ...], ...]:
    """Efficient chains from ``p`` to ``1_n``, built by recursion over the
    second-to-last step.

    A chain ending ``... < s < 1_n`` decomposes into one efficient chain per
    block ``V`` of ``s``, running from ``p_V`` to ``1_|V|``; the pieces are
    aligned at the top and the shorter ones are padded at the bottom.  For
    ``p == 1_n`` this returns the single one-element sequence ``(1_n,)``.
    """
    cached = _efficient_cache.get(p)
    if cached is not None:
        return cached
    top = one(p.n)
    if p == top:
        result: tuple[tuple[Partition, ...], ...] = ((top,),)
        _efficient_cache[p] = result
        return result
    out: list[tuple[Partition, ...]] = [(p, top)]
    for s in above(p):
        if s == p or s == top:
            continue
        pieces = [efficient_chains_to_top(r) for r in restriction_profile(p, s)]
        for combo in itertools.product(*pieces):
            depth = max(len(c) for c in combo)
            levels = []
            for j in range(depth):  # j = 0 is the bottom level
                parts = []
                for c, w in zip(combo, s.blocks):
                    # Align at the top: level j of the result uses element
                    # j - (depth - len(c)) of c, clamped to its bottom.
                    parts.append((c[max(0, j - (depth - len(c)))], w))
                levels.append(lift(parts, p.n))
            out.append(tuple(levels) + (top,))
    result = tuple(out)
    _efficient_cache[p] = result
    return result


def chains_between(p: Partition, q: Partition, efficient_only: bool = False) -> Iterator[Chain]:
    """Chains ``p = p_0 < ... < p_k = q``.

    With ``efficient_only`` and ``q == 1_n`` the efficient chains are built
    directly; for other ``q`` all chains are enumerated and filtered.
    """
    _check_same_n(p, q)
    if not leq(p, q) or p == q:
        raise DomainError(f"need {p} < {q}")
    if efficient_only and q.is_one():
        for c in efficient_chains_to_top(p):
            yield Chain(c)
        return
    for c in _all_chains(p, q):
        ch = Chain(c)
        if not efficient_only or ch.is_efficient():
            yield ch


def count_chains(p: Partition, q: Partition) -> int:
    """Number of chains from ``p`` to ``q`` (all of them), by dynamic programming."""
    _check_same_n(p, q)

    @lru_cache(maxsize=None)
    def count(s: Partition) -> int:
        if s == q:
            return 1
        return sum(count(t) for t in above(s) if t != s and leq(t, q))

    if not leq(p, q) or p == q:
        raise DomainError(f"need {p} < {q}")
    return count(p)
