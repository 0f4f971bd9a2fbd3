"""Structural parameters: minimum vertex cover, minimum feedback vertex set,
twin classes and cover tripartitions.

The vertex cover solver is a plain exact edge-branching with a degree-1
reduction; at desk scale that is all the rest of the package needs.  Ties
between minimum covers are broken towards the lexicographically smallest
vertex set so that repeated runs are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graphs import Graph


@dataclass(frozen=True)
class CoverSplit:
    """A vertex cover together with the complementary independent set."""

    cover: frozenset[int]
    independent: frozenset[int]


@dataclass(frozen=True)
class Tripartition:
    """One assignment of cover vertices to the roles matched / unused /
    matched-into-the-opposite-independent-set."""

    matched: frozenset[int]
    unused: frozenset[int]
    to_independent: frozenset[int]


@dataclass(frozen=True)
class TwinClass:
    """Independent-set vertices sharing one exact neighborhood in the cover."""

    neighborhood: frozenset[int]
    members: tuple[int, ...]


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[TwinClass, ...]


@dataclass(frozen=True)
class FvsResult:
    """A minimum-cardinality vertex set whose removal leaves a forest."""

    vertices: frozenset[int]
    size: int


# ---------------------------------------------------------------------------
# vertex cover


def _branch_size(adj: dict[int, set[int]]) -> int:
    """Minimum cover size of the graph given as a mutable adjacency dict."""
    adj = {v: set(nbrs) for v, nbrs in adj.items() if nbrs}
    taken = 0
    while True:
        leaf = next((v for v, nbrs in adj.items() if len(nbrs) == 1), None)
        if leaf is None:
            break
        # degree-1 reduction: some minimum cover contains the leaf's neighbor
        (u,) = adj[leaf]
        _remove(adj, u)
        taken += 1
    if not adj:
        return taken
    u = max(adj, key=lambda v: (len(adj[v]), -v))
    v = min(adj[u])
    left = {w: set(ns) for w, ns in adj.items()}
    _remove(left, u)
    right = {w: set(ns) for w, ns in adj.items()}
    _remove(right, v)
    return taken + 1 + min(_branch_size(left), _branch_size(right))


def _remove(adj: dict[int, set[int]], v: int) -> None:
    for w in adj.pop(v, ()):
        adj[w].discard(v)
        if not adj[w]:
            del adj[w]


def _cover_feasible(
    edges: list[tuple[int, int]], k: int, forced: frozenset[int], banned: frozenset[int]
) -> bool:
    """Is there a vertex cover of size <= k containing forced, avoiding banned?"""
    uncovered = [(u, v) for u, v in edges if u not in forced and v not in forced]
    if not uncovered:
        return len(forced) <= k
    if len(forced) >= k:
        return False
    u, v = uncovered[0]
    for w in (u, v):
        if w not in banned and _cover_feasible(edges, k, forced | {w}, banned):
            return True
    return False


def vertex_cover_number(g: Graph) -> int:
    """Size of a minimum vertex cover."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    return _branch_size(adj)


def min_vertex_cover(g: Graph) -> CoverSplit:
    """Lexicographically smallest minimum vertex cover and its complement."""
    k = vertex_cover_number(g)
    edges = sorted(g.edges)
    chosen: set[int] = set()
    banned: set[int] = set()
    for v in range(g.n):
        if len(chosen) == k:
            break
        if _cover_feasible(edges, k, frozenset(chosen | {v}), frozenset(banned)):
            chosen.add(v)
        else:
            banned.add(v)
    return CoverSplit(frozenset(chosen), frozenset(range(g.n)) - frozenset(chosen))


# ---------------------------------------------------------------------------
# feedback vertex set


def _acyclic_without(g: Graph, removed: set[int]) -> bool:
    parent = {v: v for v in range(g.n) if v not in removed}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if u in removed or v in removed:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def min_feedback_vertex_set(g: Graph) -> FvsResult:
    """Exact FVS by subset enumeration in increasing size (desk scale only)."""
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            if _acyclic_without(g, set(combo)):
                return FvsResult(frozenset(combo), size)
    raise AssertionError("removing all vertices always leaves a forest")


# ---------------------------------------------------------------------------
# twins and tripartitions


def twin_partition(g: Graph, split: CoverSplit) -> TwinPartition:
    """Group independent-set vertices by their exact neighborhood in the cover.

    Only inhabited classes are materialized.  Raises ``ValueError`` when
    ``split`` is not a valid cover split of ``g``.
    """
    if split.cover | split.independent != frozenset(range(g.n)) or (
        split.cover & split.independent
    ):
        raise ValueError("cover and independent set must partition the vertices")
    for u, v in g.edges:
        if u not in split.cover and v not in split.cover:
            raise ValueError(f"edge ({u}, {v}) is not covered")
    groups: dict[frozenset[int], list[int]] = {}
    for v in sorted(split.independent):
        groups.setdefault(g.adj[v], []).append(v)
    classes = tuple(
        TwinClass(nbhd, tuple(members))
        for nbhd, members in sorted(groups.items(), key=lambda kv: tuple(sorted(kv[0])))
    )
    return TwinPartition(classes)


def tripartitions(cover: Iterable[int]) -> Iterator[Tripartition]:
    """All 3^|cover| role assignments, in a fixed deterministic order."""
    order = sorted(set(cover))
    for roles in itertools.product(range(3), repeat=len(order)):
        parts: tuple[list[int], list[int], list[int]] = ([], [], [])
        for v, r in zip(order, roles):
            parts[r].append(v)
        yield Tripartition(
            matched=frozenset(parts[0]),
            unused=frozenset(parts[1]),
            to_independent=frozenset(parts[2]),
        )
