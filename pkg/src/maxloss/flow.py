"""Dinic max-flow on arbitrary-precision integer capacities.

Hand-rolled rather than delegated to scipy so capacities scaled up from exact
rationals can exceed 64 bits without overflow, and so the augmenting order is
deterministic (edges are explored in insertion order).
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        # flat edge arrays: edge i has reverse edge i ^ 1
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, capacity: int) -> int:
        """Add a directed edge, returning its index."""
        if capacity < 0:
            raise ValueError("capacity must be nonnegative")
        idx = len(self.to)
        self.to.append(v)
        self.cap.append(capacity)
        self.adj[u].append(idx)
        self.to.append(u)
        self.cap.append(0)
        self.adj[v].append(idx + 1)
        return idx

    def _bfs_levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for idx in self.adj[u]:
                v = self.to[idx]
                if self.cap[idx] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    q.append(v)
        return level if level[t] >= 0 else None

    def _dfs_block(self, u: int, t: int, pushed: int, level: list[int], it: list[int]) -> int:
        if u == t:
            return pushed
        while it[u] < len(self.adj[u]):
            idx = self.adj[u][it[u]]
            v = self.to[idx]
            if self.cap[idx] > 0 and level[v] == level[u] + 1:
                got = self._dfs_block(v, t, min(pushed, self.cap[idx]), level, it)
                if got > 0:
                    self.cap[idx] -= got
                    self.cap[idx ^ 1] += got
                    return got
            it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        inf = sum(self.cap) + 1
        while True:
            level = self._bfs_levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._dfs_block(s, t, inf, level, it)
                if pushed == 0:
                    break
                total += pushed

    def residual_reachable(self, s: int) -> set[int]:
        """Vertices reachable from s along positive residual capacity.

        Call after max_flow to read off the minimum cut: an edge (u, v) is cut
        iff u is reachable and v is not.
        """
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for idx in self.adj[u]:
                v = self.to[idx]
                if self.cap[idx] > 0 and v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen
