"""Exact secure domination and domination numbers.

Two independent routes compute the same optimum:

* :func:`brute_force_gamma_s` enumerates k-subsets in lexicographic order and
  tests each with the naive swap check.  It is the oracle.
* :func:`solve_gamma_s` is an include/exclude branch and bound.  A node is a
  pair (chosen, excluded).  While some vertex is undominated it branches on
  the non-excluded members of that vertex's closed neighbourhood; once the
  chosen set dominates it picks an unguarded vertex ``v`` and branches on
  every vertex whose addition could let ``v`` be guarded.  Each branch
  excludes the candidates tried before it, so every set is reached at most
  once.  Because supersets of secure dominating sets are secure dominating,
  a budget-k search succeeds iff ``gamma_s <= k``; budgets are tried upward
  from a lower bound.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import ceil
from typing import Iterator

import numpy as np

from secdom.domination import (
    VertexSet,
    dominates_mask,
    secure_batch,
    secure_mask_naive,
)
from secdom.errors import ContractError, InvalidSizeError
from secdom.graphs import Graph

THREADS_ENV = "SECDOM_THREADS"


class Method(str, Enum):
    ORACLE = "oracle"
    BRANCH_AND_BOUND = "branch_and_bound"


@dataclass(frozen=True)
class SolveResult:
    optimum: int | None
    witness: VertexSet | None
    nodes_explored: int
    method: Method

    @property
    def feasible(self) -> bool:
        return self.optimum is not None


def _require_nonempty(g: Graph) -> None:
    if g.vertex_count == 0:
        raise InvalidSizeError("graph has no vertices")


def trivial_lower_bound(g: Graph) -> int:
    """``ceil(|V| / (max degree + 1))``: each vertex dominates its closed ball."""
    if g.vertex_count == 0:
        return 0
    return ceil(g.vertex_count / (g.max_degree + 1))


# -- oracle -----------------------------------------------------------------

def brute_force_gamma_s(g: Graph, max_size: int | None = None) -> SolveResult:
    """Smallest secure dominating set by plain enumeration.

    The witness is the lexicographically smallest optimum.  When no set of
    size ``<= max_size`` is secure the result has ``optimum=None``.
    """
    _require_nonempty(g)
    n = g.vertex_count
    top = n if max_size is None else min(max_size, n)
    checked = 0
    for k in range(trivial_lower_bound(g), top + 1):
        for combo in combinations(range(n), k):
            checked += 1
            mask = 0
            for v in combo:
                mask |= 1 << v
            if dominates_mask(g, mask) and secure_mask_naive(g, mask):
                return SolveResult(k, VertexSet(combo, n), checked, Method.ORACLE)
    return SolveResult(None, None, checked, Method.ORACLE)


def brute_force_gamma(g: Graph) -> int:
    _require_nonempty(g)
    n = g.vertex_count
    for k in range(trivial_lower_bound(g), n + 1):
        for combo in combinations(range(n), k):
            if dominates_mask(g, sum(1 << v for v in combo)):
                return k
    raise AssertionError("the full vertex set always dominates")


# -- branch and bound --------------------------------------------------------

class _Search:
    """Budgeted depth-first search over one graph.

    ``secure`` selects the predicate: plain domination when False.
    """

    def __init__(self, g: Graph, secure: bool) -> None:
        self.g = g
        self.secure = secure
        self.n = g.vertex_count
        self.full = (1 << self.n) - 1
        self.closed = g.closed_masks
        self.nbrs = g.adjacency
        # candidate order inside a branch: descending degree, ties by id
        self.rank = sorted(range(self.n), key=lambda v: (-g.degree(v), v))
        self.nodes = 0

    def _ordered(self, cand: int) -> list[int]:
        return [v for v in self.rank if cand >> v & 1]

    def _dominated(self, s: int) -> int:
        acc = 0
        closed = self.closed
        while s:
            low = s & -s
            acc |= closed[low.bit_length() - 1]
            s ^= low
        return acc

    def _packing(self, sets: Iterator[int]) -> int:
        """Number of pairwise-disjoint candidate sets found greedily."""
        used = 0
        count = 0
        for c in sets:
            if c & used == 0:
                used |= c
                count += 1
        return count

    def branch_candidates(self, s: int, x: int, size: int, k: int) -> list[int] | None:
        """Ordered branching candidates, ``[]`` for a solution, ``None`` to prune."""
        closed = self.closed
        allowed = self.full & ~x & ~s
        undominated = self.full & ~self._dominated(s)
        if undominated:
            if size >= k:
                return None
            best = None
            best_count = self.n + 1
            cands = []
            t = undominated
            while t:
                low = t & -t
                u = low.bit_length() - 1
                t ^= low
                c = closed[u] & allowed
                if c == 0:
                    return None
                cands.append(c)
                pc = c.bit_count()
                if pc < best_count:
                    best, best_count = c, pc
            if size + self._packing(sorted(cands, key=int.bit_count)) > k:
                return None
            return self._ordered(best)
        if not self.secure:
            return []
        fixers = self._unguarded_fixers(s, allowed)
        if fixers is None:
            return None
        if not fixers:
            return []
        if size >= k:
            return None
        if size + self._packing(sorted(fixers, key=int.bit_count)) > k:
            return None
        best = min(fixers, key=int.bit_count)
        return self._ordered(best)

    def _unguarded_fixers(self, s: int, allowed: int) -> list[int] | None:
        """Fixer masks of every unguarded vertex; ``None`` if one has none."""
        closed = self.closed
        n = self.n
        sole = 0
        for u in range(n):
            if (closed[u] & s).bit_count() == 1:
                sole |= 1 << u
        out = []
        outside = self.full & ~s
        while outside:
            low = outside & -outside
            v = low.bit_length() - 1
            outside ^= low
            not_cv = ~closed[v]
            fix = closed[v] & allowed
            guarded = False
            for w in self.nbrs[v]:
                if not s >> w & 1:
                    continue
                stray = closed[w] & sole & not_cv
                if stray == 0:
                    guarded = True
                    break
                u = (stray & -stray).bit_length() - 1
                fix |= closed[u] & allowed
            if guarded:
                continue
            if fix == 0:
                return None
            out.append(fix)
        return out

    def run(self, s: int, x: int, size: int, k: int) -> int | None:
        """First solution of size ``<= k`` below node ``(s, x)`` in DFS order."""
        self.nodes += 1
        cands = self.branch_candidates(s, x, size, k)
        if cands is None:
            return None
        if not cands:
            return s
        for v in cands:
            found = self.run(s | 1 << v, x, size + 1, k)
            if found is not None:
                return found
            x |= 1 << v
        return None

    def run_all(self, s: int, x: int, size: int, k: int, out: list[int]) -> None:
        """Collect every solution leaf with budget ``k``."""
        self.nodes += 1
        cands = self.branch_candidates(s, x, size, k)
        if cands is None:
            return
        if not cands:
            out.append(s)
            return
        for v in cands:
            self.run_all(s | 1 << v, x, size + 1, k, out)
            x |= 1 << v

    def frontier(self, k: int, depth: int) -> list[tuple[int, int, int]]:
        """Open nodes at ``depth`` in DFS order; solved nodes are kept as-is."""
        nodes = [(0, 0, 0)]
        for _ in range(depth):
            nxt = []
            for s, x, size in nodes:
                cands = self.branch_candidates(s, x, size, k)
                if cands is None:
                    continue
                if not cands:
                    nxt.append((s, x, size))
                    continue
                for v in cands:
                    nxt.append((s | 1 << v, x, size + 1))
                    x |= 1 << v
            nodes = nxt
        return nodes


def _subtree(args: tuple[Graph, bool, int, int, int, int]) -> tuple[int | None, int]:
    g, secure, s, x, size, k = args
    search = _Search(g, secure)
    found = search.run(s, x, size, k)
    return found, search.nodes


def worker_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, threads)
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ContractError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def _budget_search(g: Graph, secure: bool, k: int, workers: int) -> tuple[int | None, int]:
    if workers <= 1:
        search = _Search(g, secure)
        return search.run(0, 0, 0, k), search.nodes
    # fan out subtrees; the lowest-index success is what a sequential run returns
    search = _Search(g, secure)
    tasks = search.frontier(k, depth=2)
    nodes = search.nodes
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_subtree, [(g, secure, s, x, size, k) for s, x, size in tasks]))
    for found, count in results:
        nodes += count
    for found, _ in results:
        if found is not None:
            return found, nodes
    return None, nodes


def _solve(g: Graph, secure: bool, lower: int, threads: int | None) -> SolveResult:
    workers = worker_count(threads)
    total = 0
    for k in range(lower, g.vertex_count + 1):
        found, nodes = _budget_search(g, secure, k, workers)
        total += nodes
        if found is not None:
            witness = VertexSet.from_mask(found, g.vertex_count)
            return SolveResult(len(witness), witness, total, Method.BRANCH_AND_BOUND)
    raise AssertionError("the full vertex set is always secure dominating")


def solve_gamma(g: Graph, *, threads: int | None = None) -> SolveResult:
    """Domination number by the same search with the plain predicate."""
    _require_nonempty(g)
    return _solve(g, False, trivial_lower_bound(g), threads)


def solve_gamma_s(g: Graph, *, threads: int | None = None) -> SolveResult:
    """Secure domination number by branch and bound.

    The budget starts at ``max(gamma(g), ceil(|V|/(max degree + 1)))``.
    """
    _require_nonempty(g)
    gamma = solve_gamma(g, threads=threads)
    result = _solve(g, True, max(gamma.optimum, trivial_lower_bound(g)), threads)
    return SolveResult(
        result.optimum, result.witness, result.nodes_explored + gamma.nodes_explored, result.method
    )


def _k_subset_masks(n: int, k: int) -> np.ndarray:
    if k == 0:
        return np.zeros(1, dtype=np.int64)
    idx = np.array(list(combinations(range(n), k)), dtype=np.int64)
    return np.bitwise_or.reduce(np.left_shift(np.int64(1), idx), axis=1)


def enumerate_secure_masks(g: Graph, k: int) -> np.ndarray:
    """Bitmasks of all size-k secure dominating sets, lexicographic order."""
    n = g.vertex_count
    if not 0 <= k <= n:
        raise ContractError(f"k must lie in 0..{n}, got {k}")
    masks = _k_subset_masks(n, k)
    return masks[secure_batch(g, masks)]


def enumerate_secure_sets(g: Graph, k: int) -> list[VertexSet]:
    n = g.vertex_count
    return [VertexSet.from_mask(int(m), n) for m in enumerate_secure_masks(g, k)]


def enumerate_minimum_secure_sets(g: Graph, optimum: int | None = None) -> list[VertexSet]:
    """All secure dominating sets of size ``gamma_s(g)``, lexicographic order.

    Uses the branch and bound in all-solutions mode, so it scales past the
    plain enumeration.  Every minimum set is a leaf reached exactly once.
    """
    _require_nonempty(g)
    if optimum is None:
        optimum = solve_gamma_s(g).optimum
    search = _Search(g, True)
    leaves: list[int] = []
    search.run_all(0, 0, 0, optimum, leaves)
    n = g.vertex_count
    sets = {VertexSet.from_mask(m, n) for m in leaves if m.bit_count() == optimum}
    return sorted(sets, key=lambda s: s.members)
