"""Copy-level structure of vertex sets on the product families.

A product instance is a sequence of copies of ``P2`` or ``P3``; the type of
a copy is how many of its vertices lie in the set.  This module classifies
copies, finds blocks and type patterns, applies the graph modifications
that are known to preserve secure domination, and audits structural
claims by exhaustive enumeration.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Union

import numpy as np

from secdom.domination import VertexSet, secure_batch
from secdom.errors import ContractError
from secdom.graphs import Family, FamilyInstance, Graph, build_family
from secdom.solver import enumerate_minimum_secure_sets, enumerate_secure_masks, solve_gamma_s

OUTER = "o"
INNER = "i"


@dataclass(frozen=True)
class CopyProfile:
    """Per-copy view of a set.

    ``rows_in_set[c]`` lists the rows of copy ``c + 1`` that are in the set.
    ``row_marks`` carries ``"o"``/``"i"`` for type-1 copies of two-row
    families (row 1 is outer) and ``None`` elsewhere.
    """

    types: tuple[int, ...]
    rows_in_set: tuple[tuple[int, ...], ...]
    row_marks: tuple[str | None, ...]
    m_counts: tuple[int, int, int, int]
    cyclic: bool
    rows: int

    @property
    def n(self) -> int:
        return len(self.types)

    @property
    def type_string(self) -> str:
        return "".join(map(str, self.types))

    @property
    def size(self) -> int:
        return sum(self.types)


@dataclass(frozen=True)
class Block:
    start: int
    length: int
    kind: str
    s_count: int

    def copies(self, n: int) -> list[int]:
        return [(self.start - 1 + k) % n + 1 for k in range(self.length)]


@dataclass(frozen=True)
class Violation:
    n: int
    size: int
    set: tuple[int, ...]
    pattern: str
    position: int

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "size": self.size, "set": list(self.set),
             "pattern": self.pattern, "position": self.position},
            separators=(",", ":"),
        )


def _profile_from_rows(rows_in_set: list[tuple[int, ...]], rows: int, cyclic: bool) -> CopyProfile:
    types = tuple(len(r) for r in rows_in_set)
    marks: list[str | None] = []
    for r in rows_in_set:
        if rows == 2 and len(r) == 1:
            marks.append(OUTER if r[0] == 1 else INNER)
        else:
            marks.append(None)
    m = [0, 0, 0, 0]
    for t in types:
        m[t] += 1
    return CopyProfile(types, tuple(rows_in_set), tuple(marks), tuple(m), cyclic, rows)


def classify_copies(inst: FamilyInstance, s: VertexSet) -> CopyProfile:
    if s.universe_size != inst.vertex_count:
        raise ContractError(f"set does not belong to {inst}")
    per_copy: list[list[int]] = [[] for _ in range(inst.n)]
    for v in s.members:
        c, r = inst.copy_row(v)
        per_copy[c - 1].append(r)
    return _profile_from_rows([tuple(r) for r in per_copy], inst.rows, inst.family.cyclic)


def profile_from_types(types: str | Sequence[int], *, cyclic: bool, rows: int = 2) -> CopyProfile:
    """Profile carrying only copy types (rows unknown), for pattern work."""
    ts = [int(t) for t in types]
    if any(not 0 <= t <= rows for t in ts):
        raise ContractError(f"copy types must lie in 0..{rows}")
    m = [0, 0, 0, 0]
    for t in ts:
        m[t] += 1
    return CopyProfile(tuple(ts), tuple(() for _ in ts), tuple(None for _ in ts), tuple(m), cyclic, rows)


def balance_identity(profile: CopyProfile, s_size: int, n: int) -> bool:
    """``m0 == n - |S| + m2 + 2*m3``."""
    m0, _, m2, m3 = profile.m_counts
    return m0 == n - s_size + m2 + 2 * m3


def _block_kind(interior: Sequence[int]) -> str:
    if interior and all(t == 1 for t in interior):
        return "type1_block"
    if list(interior) == [2]:
        return "type2_block"
    return "block"


def find_blocks(profile: CopyProfile) -> list[Block]:
    """Maximal runs bounded by type-0 copies.

    On a cycle the last run wraps to the first type-0 copy; a cycle with at
    most one type-0 copy has no blocks.  On a path, the runs before the
    first and after the last type-0 copy are end-blocks.
    """
    types = profile.types
    n = len(types)
    zeros = [i + 1 for i, t in enumerate(types) if t == 0]

    def make(start: int, length: int, kind: str | None = None) -> Block:
        cells = [types[(start - 1 + k) % n] for k in range(length)]
        return Block(start, length, kind or _block_kind(cells[1:-1]), sum(cells))

    blocks: list[Block] = []
    if profile.cyclic:
        if len(zeros) <= 1:
            return []
        for a, b in zip(zeros, zeros[1:]):
            blocks.append(make(a, b - a + 1))
        blocks.append(make(zeros[-1], zeros[0] + n - zeros[-1] + 1))
        return blocks
    if not zeros:
        return []
    if zeros[0] > 1:
        blocks.append(make(1, zeros[0], "end_block"))
    for a, b in zip(zeros, zeros[1:]):
        blocks.append(make(a, b - a + 1))
    if zeros[-1] < n:
        blocks.append(make(zeros[-1], n - zeros[-1] + 1, "end_block"))
    return sorted(blocks, key=lambda b: b.start)


def _validate_pattern(pattern: str) -> list[int]:
    if not pattern:
        raise ContractError("pattern must be nonempty")
    if any(ch not in "0123" for ch in pattern):
        raise ContractError(f"pattern {pattern!r} may only use digits 0-3")
    return [int(ch) for ch in pattern]


def find_pattern(profile: CopyProfile, pattern: str) -> list[int]:
    """1-based start copies where ``pattern`` occurs (wrapping on cycles)."""
    pat = _validate_pattern(pattern)
    types = profile.types
    n, k = len(types), len(pat)
    if k > n:
        return []
    if profile.cyclic:
        return [i + 1 for i in range(n) if all(types[(i + j) % n] == pat[j] for j in range(k))]
    return [i + 1 for i in range(n - k + 1) if list(types[i:i + k]) == pat]


# -- graph modifications ------------------------------------------------------

@dataclass(frozen=True)
class AddEdge:
    u: int
    v: int


@dataclass(frozen=True)
class DeleteEdge:
    """Remove an edge whose endpoints both lie in the set."""

    u: int
    v: int


@dataclass(frozen=True)
class DeleteVertex:
    """Remove a vertex outside the set together with its edges."""

    v: int


Modification = Union[AddEdge, DeleteEdge, DeleteVertex]


@dataclass(frozen=True)
class ModificationResult:
    graph: Graph
    vertex_set: VertexSet
    # old id -> new id; identity unless a vertex was deleted
    mapping: dict[int, int]


def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the remaining vertices, ids compacted in order."""
    gone = set(removed)
    keep = [v for v in range(g.vertex_count) if v not in gone]
    mapping = {old: new for new, old in enumerate(keep)}
    edges = [(mapping[a], mapping[b]) for a, b in g.edges() if a in mapping and b in mapping]
    return Graph.from_edges(len(keep), edges), mapping


def _with_edges(g: Graph, add=(), remove=()) -> Graph:
    dropped = {tuple(sorted(e)) for e in remove}
    edges = [e for e in g.edges() if e not in dropped]
    edges.extend(add)
    return Graph.from_edges(g.vertex_count, edges)


def apply_modification(g: Graph, s: VertexSet, mod: Modification) -> ModificationResult:
    if s.universe_size != g.vertex_count:
        raise ContractError("set and graph sizes differ")
    n = g.vertex_count
    identity = {v: v for v in range(n)}
    if isinstance(mod, AddEdge):
        u, v = mod.u, mod.v
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ContractError(f"cannot add edge {u}-{v}")
        if g.has_edge(u, v):
            raise ContractError(f"edge {u}-{v} already present")
        return ModificationResult(_with_edges(g, add=[(u, v)]), s, identity)
    if isinstance(mod, DeleteEdge):
        u, v = mod.u, mod.v
        if not (0 <= u < n and 0 <= v < n) or not g.has_edge(u, v):
            raise ContractError(f"{u}-{v} is not an edge")
        if u not in s or v not in s:
            raise ContractError("both endpoints of a deleted edge must be in the set")
        return ModificationResult(_with_edges(g, remove=[(u, v)]), s, identity)
    if isinstance(mod, DeleteVertex):
        if not 0 <= mod.v < n:
            raise ContractError(f"vertex {mod.v} does not exist")
        if mod.v in s:
            raise ContractError("a deleted vertex must lie outside the set")
        h, mapping = delete_vertices(g, [mod.v])
        return ModificationResult(h, VertexSet.of((mapping[x] for x in s), h.vertex_count), mapping)
    raise ContractError(f"unknown modification {mod!r}")


def deletable_edge(g: Graph, s: VertexSet, u: int, v: int) -> bool:
    """Whether edge ``uv`` meets the neighbourhood test for safe deletion.

    Both endpoints must be outside the set, and either each has two or more
    neighbours in the set, or their common neighbours in the set are not
    exactly one vertex.
    """
    if not g.has_edge(u, v):
        raise ContractError(f"{u}-{v} is not an edge")
    if u in s or v in s:
        return False
    mask = s.mask
    nu = g.open_masks[u] & mask
    nv = g.open_masks[v] & mask
    return (nu.bit_count() > 1 and nv.bit_count() > 1) or (nu & nv).bit_count() != 1


def trim_bound(g: Graph, s: VertexSet, u_set: VertexSet) -> int:
    """``gamma_s(g - U) + |U ∩ S|``, a lower bound on ``|S|``.

    ``U`` may only touch the rest of the graph through its vertices that are
    outside ``S``.
    """
    if s.universe_size != g.vertex_count or u_set.universe_size != g.vertex_count:
        raise ContractError("sets and graph sizes differ")
    inside = set(u_set.members)
    for a in inside:
        if a in s and any(b not in inside for b in g.adjacency[a]):
            raise ContractError(f"vertex {a} of U is in S but has a neighbour outside U")
    rest, _ = delete_vertices(g, inside)
    kept = 0 if rest.vertex_count == 0 else solve_gamma_s(rest).optimum
    return kept + sum(1 for a in inside if a in s)


# -- exhaustive audits --------------------------------------------------------

def copy_types_batch(inst: FamilyInstance, masks: np.ndarray) -> np.ndarray:
    """Copy types of many sets at once, shape ``(len(masks), n)``."""
    rows = inst.rows
    masks = np.asarray(masks, dtype=np.int64)
    full = np.int64((1 << rows) - 1)
    shifts = np.arange(inst.n, dtype=np.int64) * rows
    return np.bitwise_count((masks[:, None] >> shifts[None, :]) & full).astype(np.int8)


def _pattern_hits(types: np.ndarray, pat: list[int], cyclic: bool) -> list[tuple[int, int]]:
    count, n = types.shape
    k = len(pat)
    if k > n:
        return []
    starts = range(n) if cyclic else range(n - k + 1)
    hits = []
    for p in starts:
        ok = np.ones(count, dtype=bool)
        for j, t in enumerate(pat):
            ok &= types[:, (p + j) % n] == t
        hits.extend((int(i), p + 1) for i in np.nonzero(ok)[0])
    return hits


def audit_forbidden_pattern(inst: FamilyInstance, sizes: Iterable[int], pattern: str) -> list[Violation]:
    """Every (set, position) where a secure dominating set shows ``pattern``."""
    pat = _validate_pattern(pattern)
    g = build_family(inst)
    out: list[Violation] = []
    for size in sizes:
        if not 0 <= size <= inst.vertex_count:
            continue
        masks = enumerate_secure_masks(g, size)
        if len(masks) == 0:
            continue
        types = copy_types_batch(inst, masks)
        hits = sorted(_pattern_hits(types, pat, inst.family.cyclic))
        for i, pos in hits:
            members = VertexSet.from_mask(int(masks[i]), inst.vertex_count).members
            out.append(Violation(inst.n, size, members, pattern, pos))
    return out


ALL_TYPE_1 = "all-type-1"


def audit_111111(inst: FamilyInstance, sizes: Iterable[int]) -> list[Violation]:
    """Check the six-copy diagonal rule and the all-type-1 residue rule.

    In every run of six consecutive type-1 copies the first and fourth must
    use the same row; a set with every copy of type 1 may only exist when
    ``n ≡ 0 mod 3``.
    """
    if inst.family is not Family.P3xCn:
        raise ContractError("the 111111 audit applies to P3xCn only")
    g = build_family(inst)
    n = inst.n
    out: list[Violation] = []
    for size in sizes:
        if not 0 <= size <= inst.vertex_count:
            continue
        for m in enumerate_secure_masks(g, size):
            s = VertexSet.from_mask(int(m), inst.vertex_count)
            profile = classify_copies(inst, s)
            if all(t == 1 for t in profile.types) and n % 3 != 0:
                out.append(Violation(n, size, s.members, ALL_TYPE_1, 1))
            for pos in find_pattern(profile, "111111"):
                first = profile.rows_in_set[pos - 1]
                fourth = profile.rows_in_set[(pos + 2) % n]
                if first != fourth:
                    out.append(Violation(n, size, s.members, "111111", pos))
    return out


def audit_type1_blocks(inst: FamilyInstance, allowed: tuple[int, ...] = (4, 5)) -> list[Violation]:
    """Type-1 blocks of every minimum secure dominating set with a bad length."""
    g = build_family(inst)
    out: list[Violation] = []
    for s in enumerate_minimum_secure_sets(g):
        profile = classify_copies(inst, s)
        for block in find_blocks(profile):
            if block.kind == "type1_block" and block.length not in allowed:
                out.append(Violation(inst.n, len(s), s.members, profile.type_string, block.start))
    return out


def lemma1_violations(g: Graph, masks: np.ndarray) -> list[tuple[str, int, int, int]]:
    """Single modifications after which a secure set stops being secure.

    ``masks`` must all be secure dominating in ``g``.  Each entry is
    ``(kind, u, v, mask)``; ``v`` is -1 for vertex deletions.
    """
    masks = np.asarray(masks, dtype=np.int64)
    out: list[tuple[str, int, int, int]] = []
    if len(masks) == 0:
        return out
    n = g.vertex_count
    for u in range(n):
        for v in range(u + 1, n):
            if g.has_edge(u, v):
                continue
            ok = secure_batch(_with_edges(g, add=[(u, v)]), masks)
            out.extend(("add_edge", u, v, int(m)) for m in masks[~ok])
    for u, v in g.edges():
        both = ((masks >> u) & (masks >> v) & 1).astype(bool)
        sel = masks[both]
        if len(sel):
            ok = secure_batch(_with_edges(g, remove=[(u, v)]), sel)
            out.extend(("delete_edge", u, v, int(m)) for m in sel[~ok])
    for v in range(n):
        sel = masks[((masks >> v) & 1) == 0]
        if len(sel) == 0:
            continue
        h, _ = delete_vertices(g, [v])
        low = np.int64((1 << v) - 1)
        packed = (sel & low) | ((sel >> 1) & ~low)
        ok = secure_batch(h, packed)
        out.extend(("delete_vertex", v, -1, int(m)) for m in sel[~ok])
    return out


def lemma2_violations(g: Graph, masks: np.ndarray) -> list[tuple[int, int, int]]:
    """Deletable edges (per :func:`deletable_edge`) whose removal breaks security."""
    masks = np.asarray(masks, dtype=np.int64)
    out: list[tuple[int, int, int]] = []
    if len(masks) == 0:
        return out
    for u, v in g.edges():
        outside = (((masks >> u) | (masks >> v)) & 1) == 0
        nu = masks & np.int64(g.open_masks[u])
        nv = masks & np.int64(g.open_masks[v])
        cond = ((np.bitwise_count(nu) > 1) & (np.bitwise_count(nv) > 1)) | (np.bitwise_count(nu & nv) != 1)
        sel = masks[outside & cond]
        if len(sel):
            ok = secure_batch(_with_edges(g, remove=[(u, v)]), sel)
            out.extend((u, v, int(m)) for m in sel[~ok])
    return out
