"""Small explicit graphs used as test doubles (complete graphs, hand-built examples).

They expose the same read-only surface as :class:`PaleyGraph` that the
matching and curvature code relies on: ``order``, ``degree``, ``vertices``,
``neighbors``, ``is_edge``, ``edges`` and ``distance``.
"""
from __future__ import annotations

from collections import deque

import numpy as np


class SimpleGraph:
    def __init__(self, adjacency: dict):
        self._adj = {int(v): frozenset(int(w) for w in nbrs) for v, nbrs in adjacency.items()}
        for v, nbrs in self._adj.items():
            if v in nbrs:
                raise ValueError(f"self-loop at {v}")
            for w in nbrs:
                if v not in self._adj.get(w, ()):
                    raise ValueError(f"edge {v}-{w} is not symmetric")
        self._dist: dict[int, dict[int, int]] = {}

    @classmethod
    def from_edges(cls, n_vertices: int, edges):
        adj = {v: set() for v in range(n_vertices)}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj)

    @property
    def order(self) -> int:
        return len(self._adj)

    @property
    def degree(self) -> int:
        degs = {len(n) for n in self._adj.values()}
        if len(degs) != 1:
            raise ValueError("graph is not regular")
        return degs.pop()

    def vertices(self):
        return sorted(self._adj)

    def neighbors(self, x) -> np.ndarray:
        return np.array(sorted(self._adj[int(x)]), dtype=np.int64)

    def is_edge(self, x, y):
        if np.ndim(x) or np.ndim(y):
            x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
            return np.vectorize(lambda a, b: int(b) in self._adj[int(a)], otypes=[bool])(x, y)
        return int(y) in self._adj[int(x)]

    def edges(self):
        for x in sorted(self._adj):
            for y in sorted(self._adj[x]):
                if y > x:
                    yield x, y

    def _bfs(self, source: int) -> dict[int, int]:
        if source not in self._dist:
            dist = {source: 0}
            todo = deque([source])
            while todo:
                v = todo.popleft()
                for w in self._adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        todo.append(w)
            self._dist[source] = dist
        return self._dist[source]

    def distance(self, u, v):
        """Shortest-path distance, -1 if unreachable; broadcasts over arrays."""
        if np.ndim(u) or np.ndim(v):
            u, v = np.broadcast_arrays(np.asarray(u), np.asarray(v))
            return np.vectorize(lambda a, b: self._bfs(int(a)).get(int(b), -1), otypes=[np.int64])(u, v)
        return self._bfs(int(u)).get(int(v), -1)


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph({v: set(range(n)) - {v} for v in range(n)})
