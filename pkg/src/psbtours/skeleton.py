"""1-skeleton of PSB(n) for small n, its statistics and exports."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .adjacency import test_nonadjacent_exhaustive, test_nonadjacent_linear
from .errors import CapExceeded, UnknownFormat
from .oracle import oracle_nonadjacent
from .tours import TourEncoding, check_n, decode, enumerate_psb

DEFAULT_CAP = 9
METHODS = ("exhaustive", "linear", "oracle")


@dataclass(frozen=True)
class SkeletonGraph:
    n: int
    vertices: tuple[TourEncoding, ...]
    edges: tuple[tuple[int, int], ...]  # (u, v) with u < v, sorted

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in self.vertices]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def _adjacent(method: str, x: TourEncoding, y: TourEncoding) -> bool:
    if method == "exhaustive":
        return test_nonadjacent_exhaustive(x, y).adjacent
    if method == "linear":
        return test_nonadjacent_linear(x, y).adjacent
    if method == "oracle":
        return not oracle_nonadjacent(decode(x), decode(y))
    raise ValueError(f"unknown adjacency method {method!r}")


def _row(args) -> list[int]:
    method, vertices, u = args
    x = vertices[u]
    return [v for v in range(u + 1, len(vertices)) if _adjacent(method, x, vertices[v])]


def build_skeleton(n: int, method: str = "exhaustive", workers: int | None = 1,
                   cap: int = DEFAULT_CAP) -> SkeletonGraph:
    """Evaluate every vertex pair of PSB(n).

    ``workers`` > 1 spreads the rows over a process pool (None means one per
    CPU); rows are merged in vertex order so the result does not depend on it.
    """
    check_n(n)
    if n > cap:
        raise CapExceeded(f"skeleton construction is capped at n <= {cap}, got {n}")
    if method not in METHODS:
        raise ValueError(f"unknown adjacency method {method!r}")
    vertices = tuple(enumerate_psb(n))
    jobs = [(method, vertices, u) for u in range(len(vertices))]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_row(job) for job in jobs]
    edges = tuple((u, v) for u, row in enumerate(rows) for v in row)
    return SkeletonGraph(n, vertices, edges)


@dataclass(frozen=True)
class GraphStats:
    vertex_count: int
    edge_count: int
    min_degree: int
    max_degree: int
    diameter: float  # math.inf when disconnected
    clique_number: int

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        if math.isinf(self.diameter):
            out["diameter"] = None
        return out


def diameter(adj: list[set[int]]) -> float:
    """Longest shortest path by BFS from every vertex; inf if disconnected."""
    best = 0
    for s in range(len(adj)):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        if len(dist) < len(adj):
            return math.inf
        best = max(best, max(dist.values()))
    return best


def clique_number(adj: list[set[int]]) -> int:
    """Exact maximum clique size by branch and bound over bitsets.

    Vertices are taken in degree order; candidates are greedily coloured and a
    branch is cut when the current clique plus the colour count of the
    remaining candidates cannot beat the best clique found so far.
    """
    m = len(adj)
    order = sorted(range(m), key=lambda v: len(adj[v]), reverse=True)
    pos = {v: i for i, v in enumerate(order)}
    nbr = [0] * m
    for v in range(m):
        bits = 0
        for u in adj[v]:
            bits |= 1 << pos[u]
        nbr[pos[v]] = bits
    best = 0

    def colour(cands: int) -> list[tuple[int, int]]:
        # (vertex, colour bound) in increasing bound order
        out = []
        k = 0
        uncoloured = cands
        while uncoloured:
            k += 1
            avail = uncoloured
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                uncoloured &= ~low
                avail &= ~low & ~nbr[v]
                out.append((v, k))
        return out

    def expand(size: int, cands: int) -> None:
        nonlocal best
        for v, bound in reversed(colour(cands)):
            if size + bound <= best:
                return
            new = cands & nbr[v]
            if new:
                expand(size + 1, new)
            elif size + 1 > best:
                best = size + 1
            cands &= ~(1 << v)

    if m:
        expand(0, (1 << m) - 1)
    return best


def graph_stats(g: SkeletonGraph) -> GraphStats:
    adj = g.adjacency()
    degrees = [len(a) for a in adj]
    return GraphStats(
        vertex_count=len(g.vertices),
        edge_count=len(g.edges),
        min_degree=min(degrees, default=0),
        max_degree=max(degrees, default=0),
        diameter=diameter(adj) if adj else 0,
        clique_number=clique_number(adj),
    )


def to_json(g: SkeletonGraph) -> dict:
    return {
        "n": g.n,
        "vertices": [v.tokens() for v in g.vertices],
        "edges": [list(e) for e in g.edges],
    }


def from_json(obj: dict) -> SkeletonGraph:
    n = int(obj["n"])
    vertices = tuple(TourEncoding.from_tokens(v, n) for v in obj["vertices"])
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in obj["edges"]))
    return SkeletonGraph(n, vertices, edges)


def export_graph(g: SkeletonGraph, fmt: str) -> bytes:
    fmt = fmt.lower()
    if fmt == "json":
        return json.dumps(to_json(g), separators=(",", ":")).encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(g.edges)
        return buf.getvalue().encode()
    if fmt == "dot":
        lines = [f"graph psb{g.n} {{"]
        for i, v in enumerate(g.vertices):
            lines.append(f'  {i} [label="{v}"];')
        for u, v in g.edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise UnknownFormat(f"unknown export format {fmt!r}; use dot, csv or json")

