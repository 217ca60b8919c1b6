"""Metric trees: weighted combinatorial trees with points on edge interiors."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class TreePoint:
    """A point of a metric tree: a vertex, or an interior point of an edge.

    ``edge`` refers to the tree's edge index; ``offset`` is measured from the
    edge's first endpoint. Construction through MetricTree.point canonicalizes
    endpoint offsets to vertex form.
    """
    vertex: Optional[int] = None
    edge: Optional[int] = None
    offset: float = 0.0

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None


class MetricTree:
    kind = "tree"

    def __init__(self, num_vertices: int, edges, tol: float = 1e-12):
        n = int(num_vertices)
        if n < 1:
            raise ValueError("tree needs at least one vertex")
        edges = [(int(u), int(v), float(l)) for u, v, l in edges]
        if len(edges) != n - 1:
            raise ValueError("a tree on n vertices has exactly n-1 edges")
        for u, v, l in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u}, {v})")
            if not (l > 0 and np.isfinite(l)):
                raise ValueError("edge lengths must be positive and finite")
        self.num_vertices = n
        self.edges = edges
        self.adjacency = [[] for _ in range(n)]  # (neighbor, edge index)
        seen = set()
        for k, (u, v, l) in enumerate(edges):
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError("duplicate edge")
            seen.add(key)
            self.adjacency[u].append((v, k))
            self.adjacency[v].append((u, k))
        self._vertex_dist, self._parent = self._all_pairs()
        if np.any(self._vertex_dist < 0):
            raise ValueError("tree is not connected")
        self.tol = tol

    def _all_pairs(self):
        n = self.num_vertices
        dist = np.full((n, n), -1.0)
        parent = np.full((n, n), -1, dtype=int)  # parent[s, v]: predecessor of v walking from s
        for s in range(n):
            dist[s, s] = 0.0
            stack = [s]
            while stack:
                u = stack.pop()
                for v, k in self.adjacency[u]:
                    if dist[s, v] < 0:
                        dist[s, v] = dist[s, u] + self.edges[k][2]
                        parent[s, v] = u
                        stack.append(v)
        return dist, parent

    # ------------------------------------------------------------- points
    def point(self, vertex: Optional[int] = None, edge: Optional[int] = None,
              offset: float = 0.0) -> TreePoint:
        if vertex is not None:
            if not 0 <= vertex < self.num_vertices:
                raise ValueError(f"vertex {vertex} out of range")
            return TreePoint(vertex=int(vertex))
        if edge is None:
            raise ValueError("need a vertex or an edge")
        if not 0 <= edge < len(self.edges):
            raise ValueError(f"edge {edge} out of range")
        u, v, l = self.edges[edge]
        if offset < -self.tol or offset > l + self.tol:
            raise ValueError(f"offset {offset} outside edge of length {l}")
        if offset <= self.tol:
            return TreePoint(vertex=u)
        if offset >= l - self.tol:
            return TreePoint(vertex=v)
        return TreePoint(edge=int(edge), offset=float(offset))

    def canonical(self, p: TreePoint) -> TreePoint:
        if not isinstance(p, TreePoint):
            raise ValueError("tree points must be TreePoint instances")
        if p.is_vertex:
            return self.point(vertex=p.vertex)
        return self.point(edge=p.edge, offset=p.offset)

    def _vertex_distances_from(self, p: TreePoint):
        """Distance from p to every vertex."""
        if p.is_vertex:
            return self._vertex_dist[p.vertex]
        u, v, l = self.edges[p.edge]
        return np.minimum(p.offset + self._vertex_dist[u],
                          (l - p.offset) + self._vertex_dist[v])

    def distance(self, p: TreePoint, q: TreePoint) -> float:
        p = self.canonical(p)
        q = self.canonical(q)
        if p.is_vertex and q.is_vertex:
            return float(self._vertex_dist[p.vertex, q.vertex])
        if not p.is_vertex and not q.is_vertex and p.edge == q.edge:
            return abs(p.offset - q.offset)
        if p.is_vertex:
            p, q = q, p
        # p is interior to an edge; route through one of its endpoints
        u, v, l = self.edges[p.edge]
        dq = self._vertex_distances_from(q)
        return float(min(p.offset + dq[u], (l - p.offset) + dq[v]))

    def points_equal(self, p, q, tol: float = 1e-12) -> bool:
        return self.distance(p, q) <= tol

    # ------------------------------------------------------------- paths
    def vertex_path(self, a: int, b: int):
        """Vertices along the unique path from a to b, inclusive."""
        path = [b]
        while path[-1] != a:
            path.append(int(self._parent[a, path[-1]]))
        return path[::-1]

    def _edge_between(self, a: int, b: int) -> int:
        for w, k in self.adjacency[a]:
            if w == b:
                return k
        raise ValueError(f"no edge between {a} and {b}")

    def _breakpoints(self, p: TreePoint, q: TreePoint):
        """Way-points of the geodesic p -> q as (cumulative length, TreePoint)."""
        p = self.canonical(p)
        q = self.canonical(q)
        pts = [(0.0, p)]
        if p.is_vertex and q.is_vertex:
            verts = self.vertex_path(p.vertex, q.vertex)
        else:
            # pick entry endpoints on the interior edges
            def anchor(x: TreePoint, other: TreePoint):
                if x.is_vertex:
                    return x.vertex, 0.0
                u, v, l = self.edges[x.edge]
                do = self._vertex_distances_from(other)
                if x.offset + do[u] <= (l - x.offset) + do[v]:
                    return u, x.offset
                return v, l - x.offset
            if not p.is_vertex and not q.is_vertex and p.edge == q.edge:
                pts.append((abs(p.offset - q.offset), q))
                return pts
            ap, lp = anchor(p, q)
            aq, lq = anchor(q, p)
            verts = self.vertex_path(ap, aq)
            if lp > 0:
                pts.append((lp, self.point(vertex=ap)))
        acc = pts[-1][0]
        for i in range(1, len(verts)):
            k = self._edge_between(verts[i - 1], verts[i])
            acc += self.edges[k][2]
            pts.append((acc, self.point(vertex=verts[i])))
        if not q.is_vertex:
            u, v, l = self.edges[q.edge]
            last = pts[-1][1].vertex
            step = q.offset if last == u else l - q.offset
            pts.append((pts[-1][0] + step, q))
        return pts

    def geodesic_eval(self, p, q):
        pts = self._breakpoints(p, q)
        total = pts[-1][0]

        def ev(t: float):
            s = t * total
            if s <= 0:
                return pts[0][1]
            if s >= total:
                return pts[-1][1]
            for i in range(1, len(pts)):
                if s <= pts[i][0] + 1e-15:
                    s0, a = pts[i - 1][0], pts[i - 1][1]
                    s1, b = pts[i][0], pts[i][1]
                    if s1 - s0 <= 1e-15:
                        return b
                    frac = (s - s0) / (s1 - s0)
                    return self._interp_adjacent(a, b, frac)
            return pts[-1][1]

        return ev

    def _interp_adjacent(self, a: TreePoint, b: TreePoint, frac: float) -> TreePoint:
        """Point at fraction frac of the way from a to b, where a and b lie on
        a common edge (consecutive way-points of a geodesic)."""
        if a.is_vertex and b.is_vertex:
            k = self._edge_between(a.vertex, b.vertex)
            u, v, l = self.edges[k]
            off = frac * l if a.vertex == u else (1 - frac) * l
            return self.point(edge=k, offset=off)
        if not a.is_vertex and not b.is_vertex:
            return self.point(edge=a.edge, offset=a.offset + frac * (b.offset - a.offset))
        if a.is_vertex:
            k = b.edge
            u, v, l = self.edges[k]
            start = 0.0 if a.vertex == u else l
            return self.point(edge=k, offset=start + frac * (b.offset - start))
        k = a.edge
        u, v, l = self.edges[k]
        end = 0.0 if b.vertex == u else l
        return self.point(edge=k, offset=a.offset + frac * (end - a.offset))

    # ------------------------------------------------------------- directions
    def direction_at(self, p: TreePoint, q: TreePoint):
        """Germ of the geodesic p -> q at p: hashable id, or None when q = p."""
        p = self.canonical(p)
        q = self.canonical(q)
        if self.points_equal(p, q):
            return None
        pts = self._breakpoints(p, q)
        nxt = pts[1][1]
        probe = self._interp_adjacent(p, nxt, 0.5) if pts[1][0] > 0 else nxt
        if p.is_vertex:
            # identify by the first edge and its orientation out of p
            k = probe.edge if not probe.is_vertex else self._edge_between(p.vertex, probe.vertex)
            u, v, l = self.edges[k]
            return (k, +1 if u == p.vertex else -1)
        # interior point: direction is toward one endpoint of its edge
        u, v, l = self.edges[p.edge]
        if probe.is_vertex:
            toward_v = probe.vertex == v
        elif probe.edge == p.edge:
            toward_v = probe.offset > p.offset
        else:
            toward_v = False  # unreachable: first way-point stays on the edge
        return (p.edge, +1 if toward_v else -1)

    def directions_at(self, p: TreePoint):
        """All direction ids at p with a farthest representative point each.

        Returns a list of (direction id, representative TreePoint, length)
        where the representative realizes the longest geodesic from p with
        that germ.
        """
        p = self.canonical(p)
        dv = self._vertex_distances_from(p)
        reps = {}
        for x in range(self.num_vertices):
            q = self.point(vertex=x)
            d = self.direction_at(p, q)
            if d is None:
                continue
            if d not in reps or dv[x] > reps[d][1]:
                reps[d] = (q, float(dv[x]))
        return [(d, rep, length) for d, (rep, length) in sorted(reps.items())]

    def random_point(self, rng, scale: float = 1.0) -> TreePoint:
        k = int(rng.integers(0, len(self.edges))) if self.edges else None
        if k is None:
            return self.point(vertex=0)
        l = self.edges[k][2]
        return self.point(edge=k, offset=float(rng.uniform(0.0, l)))

    def diameter_path(self):
        """Endpoints (as vertices) of a longest vertex-to-vertex geodesic."""
        i, j = np.unravel_index(np.argmax(self._vertex_dist), self._vertex_dist.shape)
        return self.point(vertex=int(i)), self.point(vertex=int(j))

    # ------------------------------------------------------------- io
    def point_to_json(self, p: TreePoint):
        p = self.canonical(p)
        if p.is_vertex:
            return {"vertex": p.vertex}
        return {"edge": p.edge, "offset": p.offset}

    def point_from_json(self, data) -> TreePoint:
        if "vertex" in data:
            return self.point(vertex=int(data["vertex"]))
        return self.point(edge=int(data["edge"]), offset=float(data["offset"]))

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "tree",
            "num_vertices": self.num_vertices,
            "edges": [[u, v, float(f"{l:.12g}")] for u, v, l in self.edges],
        }

    def __repr__(self):
        return f"MetricTree(vertices={self.num_vertices}, edges={len(self.edges)})"


def tripod(leg: float = 1.0, legs: int = 3) -> MetricTree:
    """Star tree: `legs` edges of equal length from a central vertex 0."""
    return MetricTree(legs + 1, [(0, i + 1, leg) for i in range(legs)])
