"""3-CNF to Vertex Cover: variable edges plus clause triangles, budget k = n + 2m."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from ..cnf import CnfFormula, evaluate
from .common import pad_to_width3

DEFAULT_MAX_VERTICES = 30


@dataclass(frozen=True)
class Vertex:
    label: str
    kind: str  # "literal" or "clause"
    variable: Optional[int] = None
    polarity: Optional[bool] = None
    clause: Optional[int] = None
    position: Optional[int] = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def literal_label(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


def triangle_label(clause: int, position: int) -> str:
    return f"c{clause}.{position}"


@dataclass(frozen=True)
class VertexCoverInstance:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...]
    k: int

    def __post_init__(self) -> None:
        labels = [v.label for v in self.vertices]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate vertex labels")
        known = set(labels)
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop on {a}")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a}, {b}) references an unknown vertex")
        if not 0 <= self.k <= len(self.vertices):
            raise ValueError(f"budget k={self.k} outside 0..{len(self.vertices)}")

    @property
    def labels(self) -> list[str]:
        return [v.label for v in self.vertices]

    def to_dict(self) -> dict:
        return {
            "vertices": [v.to_dict() for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "k": self.k,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "VertexCoverInstance":
        return cls(
            vertices=tuple(Vertex(**v) for v in d["vertices"]),
            edges=tuple((a, b) for a, b in d["edges"]),
            k=int(d["k"]),
        )


def to_vertex_cover(formula: CnfFormula) -> VertexCoverInstance:
    clauses = pad_to_width3(formula)
    vertices: list[Vertex] = []
    edges: list[tuple[str, str]] = []
    for v in range(1, formula.num_variables + 1):
        vertices.append(Vertex(literal_label(v), "literal", variable=v, polarity=True))
        vertices.append(Vertex(literal_label(-v), "literal", variable=v, polarity=False))
        edges.append((literal_label(v), literal_label(-v)))
    for j, clause in enumerate(clauses):
        tri = [triangle_label(j, p) for p in range(3)]
        for p, lit in enumerate(clause):
            vertices.append(Vertex(tri[p], "clause", variable=abs(lit), polarity=lit > 0, clause=j, position=p))
        edges.extend([(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])])
        for p, lit in enumerate(clause):
            edges.append((tri[p], literal_label(lit)))
    return VertexCoverInstance(tuple(vertices), tuple(edges), formula.num_variables + 2 * len(clauses))


def check_cover(instance: VertexCoverInstance, cover: Iterable[str]) -> bool:
    """True iff ``cover`` has at most k vertices and touches every edge.

    Raises ``ValueError`` for labels that are not vertices of the instance.
    """
    cover = set(cover)
    unknown = cover - set(instance.labels)
    if unknown:
        raise ValueError(f"unknown vertices in cover: {sorted(unknown)}")
    if len(cover) > instance.k:
        return False
    return all(a in cover or b in cover for a, b in instance.edges)


def cover_from_assignment(formula: CnfFormula, sigma: Mapping[int, bool]) -> set[str]:
    """Cover of size n + 2m from a satisfying assignment.

    Takes the true literal vertex of each variable and, in each triangle, the
    two corners other than the first corner whose literal is true.
    """
    if not evaluate(formula, sigma):
        raise ValueError("assignment does not satisfy the formula")
    cover = {literal_label(v if sigma[v] else -v) for v in range(1, formula.num_variables + 1)}
    for j, clause in enumerate(pad_to_width3(formula)):
        keep = next(p for p, lit in enumerate(clause) if sigma[abs(lit)] == (lit > 0))
        cover.update(triangle_label(j, p) for p in range(3) if p != keep)
    return cover


def _matching_lower_bound(adj: dict[int, set[int]]) -> int:
    matched: set[int] = set()
    size = 0
    for u, nbrs in adj.items():
        if u in matched:
            continue
        for w in nbrs:
            if w not in matched:
                matched.update((u, w))
                size += 1
                break
    return size


def _remove(adj: dict[int, set[int]], vs: Iterable[int]) -> dict[int, set[int]]:
    gone = set(vs)
    out = {}
    for u, nbrs in adj.items():
        if u in gone:
            continue
        rest = nbrs - gone
        if rest:
            out[u] = rest
    return out


def _cover_exists(adj: dict[int, set[int]], budget: int) -> bool:
    if not adj:
        return True
    if budget <= 0:
        return False
    # a degree-1 vertex's neighbour can always be taken
    for u, nbrs in adj.items():
        if len(nbrs) == 1:
            (w,) = nbrs
            return _cover_exists(_remove(adj, [w]), budget - 1)
    if _matching_lower_bound(adj) > budget:
        return False
    v = max(adj, key=lambda u: (len(adj[u]), -u))
    if _cover_exists(_remove(adj, [v]), budget - 1):
        return True
    nbrs = adj[v]
    return len(nbrs) <= budget and _cover_exists(_remove(adj, nbrs), budget - len(nbrs))


def vc_brute_force(instance: VertexCoverInstance, max_vertices: int = DEFAULT_MAX_VERTICES) -> bool:
    """Exact decision: does a cover of size <= k exist?

    Branches on a maximum-degree vertex (in the cover, or all of its
    neighbours in the cover) with matching-size and degree-1 pruning.
    """
    if len(instance.vertices) > max_vertices:
        raise ValueError(f"{len(instance.vertices)} vertices exceeds the brute-force limit {max_vertices}")
    index = {label: i for i, label in enumerate(instance.labels)}
    adj: dict[int, set[int]] = {}
    for a, b in instance.edges:
        ia, ib = index[a], index[b]
        adj.setdefault(ia, set()).add(ib)
        adj.setdefault(ib, set()).add(ia)
    return _cover_exists(adj, instance.k)
