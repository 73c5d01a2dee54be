"""
Min-cost flow by successive shortest paths

Integer capacities and nonnegative integer costs only; Dijkstra runs on
reduced costs, so potentials keep every residual arc nonnegative.
"""

import heapq

from core.errors import BadParams


class FlowArc:
    """Directed residual arc; reverse is the index of its twin in graph[to]"""

    __slots__ = ['to', 'capacity', 'cost', 'flow', 'reverse']

    def __init__(self, to, capacity, cost, reverse):
        self.to = to
        self.capacity = capacity
        self.cost = cost
        self.flow = 0
        self.reverse = reverse

    @property
    def residual(self):
        return self.capacity - self.flow

    def __repr__(self):
        return f"FlowArc(to={self.to}, cap={self.capacity}, cost={self.cost}, flow={self.flow})"


class MinCostFlow:
    """Successive shortest paths with Johnson potentials

    Usage:
        solver = MinCostFlow(n_nodes)
        solver.add_edge(u, v, capacity, cost)
        flow, cost = solver.solve(source, sink, required)
    """

    def __init__(self, n_nodes):
        self.n = n_nodes
        self.graph = [[] for _ in range(n_nodes)]
        self.augmentations = 0

    def add_edge(self, u, v, capacity, cost):
        if capacity < 0 or cost < 0:
            raise BadParams(f"arc ({u}, {v}) needs capacity >= 0 and cost >= 0, "
                            f"got {capacity} and {cost}")
        self.graph[u].append(FlowArc(v, capacity, cost, len(self.graph[v])))
        self.graph[v].append(FlowArc(u, 0, -cost, len(self.graph[u]) - 1))

    def _dijkstra(self, source, potential):
        dist = [None] * self.n
        parent = [None] * self.n
        dist[source] = 0
        heap = [(0, source)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for index, arc in enumerate(self.graph[u]):
                if arc.residual <= 0:
                    continue
                reduced = d + arc.cost + potential[u] - potential[arc.to]
                if dist[arc.to] is None or reduced < dist[arc.to]:
                    dist[arc.to] = reduced
                    parent[arc.to] = (u, index)
                    heapq.heappush(heap, (reduced, arc.to))
        return dist, parent

    def solve(self, source, sink, required=None):
        """Push up to `required` units (all it can if None); returns (flow, cost)"""
        potential = [0] * self.n
        flow = cost = 0
        while required is None or flow < required:
            dist, parent = self._dijkstra(source, potential)
            if dist[sink] is None:
                break
            for v in range(self.n):
                if dist[v] is not None:
                    potential[v] += dist[v]

            push = None if required is None else required - flow
            v = sink
            while v != source:
                u, index = parent[v]
                residual = self.graph[u][index].residual
                push = residual if push is None else min(push, residual)
                v = u

            v = sink
            while v != source:
                u, index = parent[v]
                arc = self.graph[u][index]
                arc.flow += push
                self.graph[v][arc.reverse].flow -= push
                cost += push * arc.cost
                v = u
            flow += push
            self.augmentations += 1
        return flow, cost
