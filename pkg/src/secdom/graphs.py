"""Graph representation and constructors for the ladder-like families.

Vertices are the integers ``0..vertex_count-1``.  For the product families a
vertex is also addressed as ``(copy, row)`` with 1-based copy and row, laid
out as ``(copy - 1) * rows + (row - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator

from secdom.errors import InvalidSizeError, ParseError


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``.  Build with
    :meth:`from_edges` rather than the raw constructor.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise InvalidSizeError("vertex_count must be nonnegative")
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length does not match vertex_count")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbours of {v} not sorted/unique")
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if not 0 <= u < self.vertex_count:
                    raise ValueError(f"neighbour {u} of {v} out of range")
                if v not in self.adjacency[u]:
                    raise ValueError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge {u}-{v} out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(vertex_count, tuple(tuple(sorted(s)) for s in nbrs))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets[u]

    @cached_property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(n) for n in self.adjacency)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        """Bitmask of the closed neighbourhood ``N[v]`` for every vertex."""
        out = []
        for v, nbrs in enumerate(self.adjacency):
            m = 1 << v
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    @cached_property
    def open_masks(self) -> tuple[int, ...]:
        return tuple(m & ~(1 << v) for v, m in enumerate(self.closed_masks))

    @property
    def edge_count(self) -> int:
        return sum(len(n) for n in self.adjacency) // 2

    @property
    def max_degree(self) -> int:
        return max((len(n) for n in self.adjacency), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(len(n) for n in self.adjacency)


def build_path(n: int) -> Graph:
    if n < 1:
        raise InvalidSizeError(f"path needs at least 1 vertex, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidSizeError(f"cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """``g □ h`` with vertex ``(a, b)`` numbered ``a * |V(h)| + b``."""
    if g.vertex_count == 0 or h.vertex_count == 0:
        raise InvalidSizeError("cartesian product of an empty graph")
    nh = h.vertex_count
    edges = []
    for a in range(g.vertex_count):
        for b, b2 in h.edges():
            edges.append((a * nh + b, a * nh + b2))
    for a, a2 in g.edges():
        for b in range(nh):
            edges.append((a * nh + b, a2 * nh + b))
    return Graph.from_edges(g.vertex_count * nh, edges)


class Family(str, Enum):
    P2xPn = "p2xpn"
    P2xCn = "p2xcn"
    M2n = "m2n"
    P3xPn = "p3xpn"
    P3xCn = "p3xcn"

    @property
    def rows(self) -> int:
        return 3 if self in (Family.P3xPn, Family.P3xCn) else 2

    @property
    def min_n(self) -> int:
        return 2 if self in (Family.P2xPn, Family.P3xPn) else 3

    @property
    def cyclic(self) -> bool:
        return self is not Family.P2xPn and self is not Family.P3xPn

    @property
    def label(self) -> str:
        return {
            Family.P2xPn: "P2xPn",
            Family.P2xCn: "P2xCn",
            Family.M2n: "M2n",
            Family.P3xPn: "P3xPn",
            Family.P3xCn: "P3xCn",
        }[self]

    @classmethod
    def parse(cls, name: str | Family) -> Family:
        if isinstance(name, Family):
            return name
        key = name.strip().lower()
        for fam in cls:
            if fam.value == key:
                return fam
        raise ValueError(f"unknown family {name!r}")


@dataclass(frozen=True)
class FamilyInstance:
    family: Family
    n: int
    rows: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "rows", self.family.rows)
        if not isinstance(self.n, int) or self.n < self.family.min_n:
            raise InvalidSizeError(
                f"{self.family.label} requires n >= {self.family.min_n}, got {self.n}"
            )

    @property
    def vertex_count(self) -> int:
        return self.rows * self.n

    def vertex_id(self, copy: int, row: int) -> int:
        if not (1 <= copy <= self.n and 1 <= row <= self.rows):
            raise ValueError(f"(copy={copy}, row={row}) outside {self}")
        return (copy - 1) * self.rows + (row - 1)

    def copy_row(self, vertex: int) -> tuple[int, int]:
        if not 0 <= vertex < self.vertex_count:
            raise ValueError(f"vertex {vertex} outside {self}")
        return vertex // self.rows + 1, vertex % self.rows + 1

    def __str__(self) -> str:
        return f"{self.family.label}(n={self.n})"


def build_family(inst: FamilyInstance) -> Graph:
    """Graph of a family instance in the canonical ``(copy, row)`` layout.

    The Möbius ladder is ``P2 □ Pn`` closed by the crossed edges
    ``(n,1)-(1,2)`` and ``(n,2)-(1,1)``.
    """
    n, rows = inst.n, inst.rows
    vid = inst.vertex_id
    edges = []
    for i in range(1, n + 1):
        for j in range(1, rows):
            edges.append((vid(i, j), vid(i, j + 1)))
    for i in range(1, n):
        for j in range(1, rows + 1):
            edges.append((vid(i, j), vid(i + 1, j)))
    fam = inst.family
    if fam in (Family.P2xCn, Family.P3xCn):
        for j in range(1, rows + 1):
            edges.append((vid(n, j), vid(1, j)))
    elif fam is Family.M2n:
        edges.append((vid(n, 1), vid(1, 2)))
        edges.append((vid(n, 2), vid(1, 1)))
    return Graph.from_edges(inst.vertex_count, edges)


def render_graph(g: Graph) -> str:
    """Canonical edge-list text: ``N M`` header then sorted ``u v`` lines."""
    edges = list(g.edges())
    lines = [f"{g.vertex_count} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}", line=1) from None
    rows = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    rows = [(i, parts) for i, parts in rows if parts]
    if not rows:
        raise ParseError("missing header", line=1)
    hline, header = rows[0]
    if len(header) != 2:
        raise ParseError("header must be 'N M'", line=hline)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError("header must contain two integers", line=hline) from None
    if n < 0 or m < 0:
        raise ParseError("negative count in header", line=hline)
    body = rows[1:]
    if len(body) != m:
        line = body[m][0] if len(body) > m else hline
        raise ParseError(f"header declares {m} edges, found {len(body)}", line=line)
    seen: set[tuple[int, int]] = set()
    for lineno, parts in body:
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", line=lineno) from None
        if u == v:
            raise ParseError(f"self-loop at {u}", line=lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range 0..{n - 1}", line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key[0]} {key[1]}", line=lineno)
        seen.add(key)
    return Graph.from_edges(n, sorted(seen))
