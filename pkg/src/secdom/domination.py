"""Domination and secure domination predicates.

A set ``S`` is secure dominating when it dominates the graph and every
vertex ``v`` outside ``S`` has a neighbour ``w`` in ``S`` such that swapping
``w`` for ``v`` still leaves a dominating set.  ``w`` is then said to guard
``v``.

Three checkers live here: a naive one that rebuilds every swapped set
(the reference), a localized one working on private neighbourhoods, and a
numpy batch version that checks many sets of one graph at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from secdom.errors import ContractError, ParseError
from secdom.graphs import Graph


@dataclass(frozen=True)
class VertexSet:
    members: tuple[int, ...]
    universe_size: int

    def __post_init__(self) -> None:
        members = tuple(self.members)
        if list(members) != sorted(set(members)):
            raise ContractError("members must be sorted and distinct")
        if members and not (0 <= members[0] and members[-1] < self.universe_size):
            raise ContractError(f"member out of range 0..{self.universe_size - 1}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, members: Iterable[int], universe_size: int) -> VertexSet:
        items = list(members)
        if len(set(items)) != len(items):
            raise ContractError("duplicate vertex in set")
        return cls(tuple(sorted(items)), universe_size)

    @classmethod
    def from_mask(cls, mask: int, universe_size: int) -> VertexSet:
        return cls(tuple(i for i in range(universe_size) if mask >> i & 1), universe_size)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.members:
            m |= 1 << v
        return m

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class GuardCertificate:
    """Outcome of :func:`certificate`.

    On success ``assignments`` maps every vertex outside the set to its
    lowest-id guard and ``unguarded`` is ``None``.  On failure
    ``unguarded`` is the lowest-id vertex that no member can guard.
    """

    assignments: Mapping[int, int] = field(default_factory=dict)
    unguarded: int | None = None

    @property
    def ok(self) -> bool:
        return self.unguarded is None


def _check_universe(g: Graph, s: VertexSet) -> None:
    if s.universe_size != g.vertex_count:
        raise ContractError(
            f"set refers to {s.universe_size} vertices, graph has {g.vertex_count}"
        )


def _full(g: Graph) -> int:
    return (1 << g.vertex_count) - 1


# -- mask-level kernels (no validation; used by the solver) -----------------

def dominates_mask(g: Graph, s: int) -> bool:
    closed = g.closed_masks
    acc = 0
    while s:
        low = s & -s
        acc |= closed[low.bit_length() - 1]
        s ^= low
    return acc == _full(g)


def private_masks(g: Graph, s: int) -> dict[int, int] | None:
    """Private closed neighbourhood of each member of ``s``.

    Returns ``None`` when ``s`` does not dominate.  The private set of ``w``
    holds the vertices whose only dominator in ``s`` is ``w``.
    """
    closed = g.closed_masks
    sole = 0
    for u in range(g.vertex_count):
        c = (closed[u] & s).bit_count()
        if c == 0:
            return None
        if c == 1:
            sole |= 1 << u
    out = {}
    t = s
    while t:
        low = t & -t
        w = low.bit_length() - 1
        out[w] = closed[w] & sole
        t ^= low
    return out


def guard_ok_mask(g: Graph, private: Mapping[int, int], w: int, v: int) -> bool:
    # swap w -> v keeps domination iff every vertex relying solely on w sees v
    return g.has_edge(w, v) and private[w] & ~g.closed_masks[v] == 0


def secure_mask(g: Graph, s: int) -> bool:
    """Localized secure-domination check on a bitmask."""
    private = private_masks(g, s)
    if private is None:
        return False
    closed = g.closed_masks
    for v in range(g.vertex_count):
        if s >> v & 1:
            continue
        cv = ~closed[v]
        for w in g.adjacency[v]:
            if s >> w & 1 and private[w] & cv == 0:
                break
        else:
            return False
    return True


def secure_mask_naive(g: Graph, s: int) -> bool:
    """Reference check: rebuild and re-test every swapped set from scratch."""
    if not dominates_mask(g, s):
        return False
    for v in range(g.vertex_count):
        if s >> v & 1:
            continue
        if not any(
            s >> w & 1 and dominates_mask(g, (s & ~(1 << w)) | (1 << v))
            for w in g.adjacency[v]
        ):
            return False
    return True


def secure_batch(g: Graph, masks: np.ndarray) -> np.ndarray:
    """Vectorized secure-domination check of many sets of one graph.

    ``masks`` holds one bitmask per set; the graph may have at most 63
    vertices.  Returns a boolean array aligned with ``masks``.
    """
    n = g.vertex_count
    if n > 63:
        raise ContractError("batch check supports at most 63 vertices")
    masks = np.asarray(masks, dtype=np.int64)
    if n == 0:
        return np.ones(masks.shape, dtype=bool)
    closed = [np.int64(c) for c in g.closed_masks]
    counts = [np.bitwise_count(masks & c) for c in closed]
    ok = np.ones(masks.shape, dtype=bool)
    for c in counts:
        ok &= c > 0
    sole = np.zeros(masks.shape, dtype=np.int64)
    for u, c in enumerate(counts):
        sole |= (c == 1).astype(np.int64) << u
    private = [sole & c for c in closed]
    for v in range(n):
        guarded = (masks >> v & 1).astype(bool)
        not_cv = ~closed[v]
        for w in g.adjacency[v]:
            guarded |= (masks >> w & 1).astype(bool) & ((private[w] & not_cv) == 0)
        ok &= guarded
    return ok


def dominating_batch(g: Graph, masks: np.ndarray) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    for c in g.closed_masks:
        ok &= (masks & np.int64(c)) != 0
    return ok


# -- public API --------------------------------------------------------------

def is_dominating(g: Graph, s: VertexSet) -> bool:
    _check_universe(g, s)
    return dominates_mask(g, s.mask)


def guards(g: Graph, s: VertexSet, w: int, v: int) -> bool:
    """Whether ``w`` in ``s`` guards ``v`` outside ``s``."""
    _check_universe(g, s)
    if v in s:
        raise ContractError(f"vertex {v} is already in the set")
    if w not in s:
        raise ContractError(f"guard {w} is not in the set")
    if not g.has_edge(w, v):
        return False
    return dominates_mask(g, (s.mask & ~(1 << w)) | (1 << v))


def is_secure_dominating(g: Graph, s: VertexSet, *, naive: bool = False) -> bool:
    _check_universe(g, s)
    return (secure_mask_naive if naive else secure_mask)(g, s.mask)


def certificate(g: Graph, s: VertexSet) -> GuardCertificate:
    """Lowest-id guard for every outside vertex, or the first unguardable one.

    A non-dominating set fails at its lowest undominated outside vertex,
    since nothing can guard a vertex with no neighbour in the set.
    """
    _check_universe(g, s)
    mask = s.mask
    private = private_masks(g, mask)
    assignments: dict[int, int] = {}
    for v in range(g.vertex_count):
        if mask >> v & 1:
            continue
        if private is None:
            guard = next(
                (w for w in g.adjacency[v]
                 if mask >> w & 1 and dominates_mask(g, (mask & ~(1 << w)) | (1 << v))),
                None,
            )
        else:
            guard = next(
                (w for w in g.adjacency[v] if mask >> w & 1 and guard_ok_mask(g, private, w, v)),
                None,
            )
        if guard is None:
            return GuardCertificate({}, unguarded=v)
        assignments[v] = guard
    return GuardCertificate(assignments)


def parse_vertex_set(text: str | bytes, universe_size: int) -> VertexSet:
    """Parse whitespace-separated 0-based vertex ids."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    ids: list[int] = []
    seen: set[int] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"not a vertex id: {tok!r}", line=lineno) from None
            if not 0 <= v < universe_size:
                raise ParseError(f"vertex {v} out of range 0..{universe_size - 1}", line=lineno)
            if v in seen:
                raise ParseError(f"duplicate vertex {v}", line=lineno)
            seen.add(v)
            ids.append(v)
    return VertexSet.of(ids, universe_size)


def render_vertex_set(s: VertexSet) -> str:
    return " ".join(map(str, s.members)) + "\n"
