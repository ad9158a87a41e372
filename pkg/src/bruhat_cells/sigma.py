"""The directed graph on word positions that drives the transvections,
plus the coefficient matrix C and the E6-compatibility test.

For a double word of length m, vertices are the positions [1, m].  A pair
{k, l} with k < l is an edge when one of three conditions holds:

(i)   k = l-                                        ("horizontal"),
(ii)  k- < l- < k, nodes adjacent, eps(i_{l-}) = eps(i_k)   ("inclined"),
(iii) l- < k- < k, nodes adjacent, eps(i_{k-}) = -eps(i_k)  ("inclined").

A horizontal (inclined) edge with k < l is directed k -> l exactly when
eps(i_k) = +1 (resp. eps(i_k) = -1), otherwise l -> k.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations

from .cartan import CartanMatrix
from .weyl import DoubleWord, GuardError, l_minus

__all__ = [
    "CoeffMatrix",
    "SigmaEdge",
    "SigmaGraph",
    "c_matrix",
    "build_sigma",
    "bounded_subgraph",
    "e6_compatible",
    "is_e6_shape",
    "export_dot",
    "edges_json",
]

logger = logging.getLogger(__name__)

HORIZONTAL = "horizontal"
INCLINED = "inclined"

_E6_GUARD = 40


@dataclass(frozen=True)
class CoeffMatrix:
    """m x m coefficients: 1 on equal nodes, -a[node_k][node_l] otherwise."""

    word: DoubleWord
    rows: tuple[tuple[int, ...], ...]

    def value(self, k: int, l: int) -> int:
        """C[k][l] with 1-based positions."""
        return self.rows[k - 1][l - 1]


def c_matrix(cartan: CartanMatrix, word: DoubleWord) -> CoeffMatrix:
    m = word.m
    rows = tuple(
        tuple(
            1 if word.node(k) == word.node(l) else -cartan.entry(word.node(k), word.node(l))
            for l in range(1, m + 1)
        )
        for k in range(1, m + 1)
    )
    return CoeffMatrix(word, rows)


@dataclass(frozen=True)
class SigmaEdge:
    tail: int
    head: int
    kind: str

    def pair(self) -> tuple[int, int]:
        return (min(self.tail, self.head), max(self.tail, self.head))


@dataclass(frozen=True)
class SigmaGraph:
    """Directed graph on a set of word positions (kept as 1-based labels)."""

    vertices: tuple[int, ...]
    edges: tuple[SigmaEdge, ...]

    def in_edges(self, n: int) -> list[SigmaEdge]:
        return [e for e in self.edges if e.head == n]

    def out_edges(self, n: int) -> list[SigmaEdge]:
        return [e for e in self.edges if e.tail == n]

    def neighbors(self, n: int) -> list[int]:
        out = {e.tail if e.head == n else e.head for e in self.edges if n in (e.tail, e.head)}
        return sorted(out)

    def undirected_pairs(self) -> set[tuple[int, int]]:
        return {e.pair() for e in self.edges}


def _edge_condition(word: DoubleWord, cartan: CartanMatrix, k: int, l: int) -> str | None:
    """Which of (i)/(ii)/(iii) holds for the pair k < l, if any."""
    km, lm = l_minus(word, k), l_minus(word, l)
    fired = []
    if k == lm:
        fired.append("i")
    adjacent = cartan.adjacent(word.node(k), word.node(l)) if word.node(k) != word.node(l) else False
    if adjacent and km < lm < k and word.eps(lm) == word.eps(k):
        fired.append("ii")
    if adjacent and lm < km < k and word.eps(km) == -word.eps(k):
        fired.append("iii")
    if not fired:
        return None
    # The three conditions are mutually exclusive by their l-/k- inequalities.
    assert len(fired) == 1, f"conditions {fired} overlap on pair ({k},{l})"
    return fired[0]


def build_sigma(cartan: CartanMatrix, word: DoubleWord) -> SigmaGraph:
    """Edge set and orientation per the three conditions above."""
    edges = []
    for k in range(1, word.m + 1):
        for l in range(k + 1, word.m + 1):
            cond = _edge_condition(word, cartan, k, l)
            if cond is None:
                continue
            if cond == "iii":
                logger.debug("condition (iii) fired on pair (%d,%d) of word %s", k, l, word)
            kind = HORIZONTAL if cond == "i" else INCLINED
            forward = word.eps(k) == (1 if kind == HORIZONTAL else -1)
            tail, head = (k, l) if forward else (l, k)
            edges.append(SigmaEdge(tail, head, kind))
    return SigmaGraph(tuple(range(1, word.m + 1)), tuple(edges))


def bounded_subgraph(graph: SigmaGraph, word: DoubleWord) -> SigmaGraph:
    """Induced subgraph on the bounded vertices (n with n- > 0)."""
    keep = {n for n in graph.vertices if l_minus(word, n) > 0}
    edges = tuple(e for e in graph.edges if e.tail in keep and e.head in keep)
    return SigmaGraph(tuple(sorted(keep)), edges)


def _connected(vertices: tuple[int, ...], pairs: set[tuple[int, int]]) -> bool:
    if not vertices:
        return True
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def is_e6_shape(vertices: tuple[int, ...], pairs: set[tuple[int, int]]) -> bool:
    """Whether an undirected graph on 6 vertices is the E6 T-shape.

    E6 is the unique 6-vertex tree whose unique degree-3 vertex has arms of
    sizes 1, 2, 2; checking edge count, degree multiset, connectivity and
    the arm sizes pins it down.
    """
    if len(vertices) != 6 or len(pairs) != 5:
        return False
    deg = {v: 0 for v in vertices}
    for a, b in pairs:
        deg[a] += 1
        deg[b] += 1
    if sorted(deg.values()) != [1, 1, 1, 2, 2, 3]:
        return False
    if not _connected(vertices, pairs):
        return False
    center = next(v for v in vertices if deg[v] == 3)
    rest = tuple(v for v in vertices if v != center)
    adj: dict[int, set[int]] = {v: set() for v in rest}
    for a, b in pairs:
        if a != center and b != center:
            adj[a].add(b)
            adj[b].add(a)
    sizes = []
    seen: set[int] = set()
    for v in rest:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            for y in adj[stack.pop()]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        sizes.append(len(comp))
    return sorted(sizes) == [1, 2, 2]


def e6_compatible(graph: SigmaGraph) -> bool:
    """Connected, and some 6 vertices induce the E6 shape (undirected)."""
    verts = graph.vertices
    if len(verts) > _E6_GUARD:
        raise GuardError(f"{len(verts)} vertices exceed the E6 search guard {_E6_GUARD}")
    pairs = graph.undirected_pairs()
    if not _connected(verts, pairs):
        return False
    if len(verts) < 6:
        return False
    for sub in combinations(verts, 6):
        subset = set(sub)
        induced = {(a, b) for a, b in pairs if a in subset and b in subset}
        if len(induced) != 5:
            continue
        if is_e6_shape(tuple(sub), induced):
            return True
    return False


def export_dot(graph: SigmaGraph, word: DoubleWord | None = None) -> str:
    """Deterministic DOT text; vertices labeled "k:i_k" when a word is given."""
    lines = ["digraph sigma {"]
    for v in sorted(graph.vertices):
        label = f"{v}:{word.letter(v)}" if word is not None else str(v)
        lines.append(f'  v{v} [label="{label}"];')
    for e in sorted(graph.edges, key=lambda e: (e.tail, e.head)):
        lines.append(f"  v{e.tail} -> v{e.head} [kind={e.kind}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def edges_json(graph: SigmaGraph) -> list[dict]:
    """Edge list as {from, to, kind} dicts, sorted for byte stability."""
    return [
        {"from": e.tail, "to": e.head, "kind": e.kind}
        for e in sorted(graph.edges, key=lambda e: (e.tail, e.head))
    ]
