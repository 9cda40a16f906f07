"""Integral max-flow (Dinic) on small networks.

Capacities are non-negative integers, so the maximum flow found is integral;
the k-approval decider and the anonymous-profile feasibility check both read
per-edge flows back out of the solved network.
"""

from collections import deque


class FlowNetwork:
    def __init__(self, n_nodes: int, source: int, sink: int):
        if not (0 <= source < n_nodes and 0 <= sink < n_nodes) or source == sink:
            raise ValueError("source and sink must be distinct nodes in range")
        self.n = n_nodes
        self.source = source
        self.sink = sink
        # parallel arrays: edge i has reverse edge i^1
        self._to: list[int] = []
        self._cap: list[int] = []
        self._adj: list[list[int]] = [[] for _ in range(n_nodes)]
        self._orig_cap: list[int] = []

    def add_edge(self, u: int, v: int, cap: int) -> int:
        """Add a directed edge and return its id for later flow lookup."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) outside node range")
        if cap < 0 or cap != int(cap):
            raise ValueError(f"capacity must be a non-negative integer, got {cap!r}")
        eid = len(self._to)
        self._to.extend((v, u))
        self._cap.extend((int(cap), 0))
        self._orig_cap.extend((int(cap), 0))
        self._adj[u].append(eid)
        self._adj[v].append(eid + 1)
        return eid

    def flow_on(self, eid: int) -> int:
        """Flow currently routed through edge ``eid``."""
        return self._orig_cap[eid] - self._cap[eid]

    def _bfs_levels(self) -> list[int] | None:
        level = [-1] * self.n
        level[self.source] = 0
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for eid in self._adj[u]:
                v = self._to[eid]
                if self._cap[eid] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[self.sink] >= 0 else None

    def _dfs_augment(self, u: int, limit: int, level, it) -> int:
        if u == self.sink:
            return limit
        while it[u] < len(self._adj[u]):
            eid = self._adj[u][it[u]]
            v = self._to[eid]
            if self._cap[eid] > 0 and level[v] == level[u] + 1:
                pushed = self._dfs_augment(v, min(limit, self._cap[eid]), level, it)
                if pushed > 0:
                    self._cap[eid] -= pushed
                    self._cap[eid ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0

    def max_flow(self) -> int:
        total = 0
        while True:
            level = self._bfs_levels()
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._dfs_augment(self.source, 1 << 60, level, it)
                if pushed == 0:
                    break
                total += pushed
