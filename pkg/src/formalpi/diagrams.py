"""Feynman diagrams as half-edge structures, up to isomorphism.

A diagram is a set of half-edges ``0..H-1`` with two partitions: vertices
(nonempty blocks) and edges (blocks of size two).  Isomorphism classes are
handled through the underlying loop multigraph: a vertex permutation that
preserves edge multiplicities lifts to exactly
``prod_{i<j} m_ij! * prod_i m_ii! 2^m_ii`` half-edge automorphisms.

A diagram may carry one *marked* vertex.  Isomorphisms must send the marked
vertex to the marked vertex; this is how observables (single inserted
vertices with their own weight) are enumerated.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Optional

__all__ = [
    "FeynmanDiagram",
    "DiagramClass",
    "is_isomorphic",
    "automorphism_count",
    "canonical_form",
    "enumerate_diagrams",
    "enumerate_marked_diagrams",
    "connected_components",
    "disjoint_union",
]


@dataclass(frozen=True)
class FeynmanDiagram:
    vertices: tuple
    edges: tuple
    marked: Optional[int] = None

    def __post_init__(self):
        vertices = tuple(tuple(sorted(v)) for v in self.vertices)
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        h = sum(len(v) for v in vertices)
        if any(len(v) == 0 for v in vertices):
            raise ValueError("vertices must be nonempty")
        if sorted(x for v in vertices for x in v) != list(range(h)):
            raise ValueError("vertices must partition the half-edges 0..H-1")
        if any(len(e) != 2 for e in edges):
            raise ValueError("every edge must have exactly two half-edges")
        if sorted(x for e in edges for x in e) != list(range(h)):
            raise ValueError("edges must partition the half-edges 0..H-1")
        if self.marked is not None and not 0 <= self.marked < len(vertices):
            raise ValueError("marked vertex out of range")

    @property
    def num_half_edges(self):
        return sum(len(v) for v in self.vertices)

    @property
    def degrees(self):
        return tuple(len(v) for v in self.vertices)

    @property
    def euler(self):
        return len(self.vertices) - len(self.edges)

    @property
    def order(self):
        """Loop order ``|E| - |V|``, the power of the coupling."""
        return -self.euler

    def vertex_of(self):
        owner = {}
        for i, v in enumerate(self.vertices):
            for h in v:
                owner[h] = i
        return owner

    def adjacency(self):
        """Edge multiplicities between vertices; ``m[i][i]`` counts self-loops."""
        n = len(self.vertices)
        owner = self.vertex_of()
        m = [[0] * n for _ in range(n)]
        for a, b in self.edges:
            i, j = owner[a], owner[b]
            m[i][j] += 1
            if i != j:
                m[j][i] += 1
        return m

    def colors(self):
        return tuple(int(i == self.marked) for i in range(len(self.vertices)))

    def to_text(self) -> str:
        sep = (",", ":")
        text = f"V:{json.dumps([list(v) for v in self.vertices], separators=sep)} " \
               f"E:{json.dumps([list(e) for e in self.edges], separators=sep)}"
        if self.marked is not None:
            text += f" M:{self.marked}"
        return text

    @classmethod
    def from_text(cls, text: str) -> "FeynmanDiagram":
        m = re.fullmatch(r"\s*V:(\[.*?\]\]|\[\])\s+E:(\[.*?\]\]|\[\])(?:\s+M:(\d+))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse diagram text {text!r}")
        marked = int(m.group(3)) if m.group(3) is not None else None
        return cls(tuple(map(tuple, json.loads(m.group(1)))),
                   tuple(map(tuple, json.loads(m.group(2)))), marked)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class DiagramClass:
    canonical: FeynmanDiagram
    aut_count: int
    euler: int

    @property
    def order(self):
        return -self.euler

    @property
    def num_vertices(self):
        return len(self.canonical.vertices)


def _classes_of(colors, degrees):
    return [(c, d) for c, d in zip(colors, degrees)]


def _refine(classes, m):
    """Colour refinement: split vertex classes by neighbourhood until stable.

    The result is isomorphism-invariant, so it can restrict the canonical
    search without changing which labeling wins.
    """
    n = len(classes)
    ranks = {c: r for r, c in enumerate(sorted(set(classes)))}
    colors = [ranks[c] for c in classes]
    while True:
        sig = [
            (colors[i], m[i][i], tuple(sorted((colors[j], m[i][j]) for j in range(n) if j != i and m[i][j])))
            for i in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(colors)):
            return [(classes[i], new[i]) for i in range(n)]
        colors = new


def _canonical_search(classes, m):
    """Lexicographically least relabeling of the multigraph.

    Positions are filled in order of the sorted vertex classes; the encoding
    is the lower triangle of the relabeled matrix read row by row.  Returns
    ``(encoding, permutation)`` where ``permutation[p]`` is the original
    vertex placed at position ``p``.
    """
    n = len(classes)
    classes = _refine(classes, m)
    slots = sorted(classes)
    best = {"rows": None, "perm": None}
    used = [False] * n
    perm = []
    rows = []

    def rec(p, tight):
        if p == n:
            if best["rows"] is None or rows < best["rows"]:
                best["rows"] = list(rows)
                best["perm"] = list(perm)
            return
        for v in range(n):
            if used[v] or classes[v] != slots[p]:
                continue
            row = tuple(m[v][perm[q]] for q in range(p)) + (m[v][v],)
            still_tight = False
            if tight and best["rows"] is not None:
                ref = best["rows"][p]
                if row > ref:
                    continue
                still_tight = row == ref
            used[v] = True
            perm.append(v)
            rows.append(row)
            rec(p + 1, still_tight)
            rows.pop()
            perm.pop()
            used[v] = False

    rec(0, True)
    return (tuple(slots), tuple(best["rows"] or ())), best["perm"] or []


def canonical_form(d: FeynmanDiagram):
    """A hashable, sortable key shared exactly by isomorphic diagrams."""
    classes = _classes_of(d.colors(), d.degrees)
    enc, _ = _canonical_search(classes, d.adjacency())
    return (tuple(sorted(classes)), enc)


def _diagram_from_matrix(classes, m):
    """Deterministic half-edge realization of a multigraph in the given vertex order."""
    n = len(classes)
    starts, h = [], 0
    for _, deg in classes:
        starts.append(h)
        h += deg
    nxt = list(starts)
    vertices = [tuple(range(starts[i], starts[i] + classes[i][1])) for i in range(n)]
    edges = []
    for i in range(n):
        for _ in range(m[i][i]):
            edges.append((nxt[i], nxt[i] + 1))
            nxt[i] += 2
        for j in range(i + 1, n):
            for _ in range(m[i][j]):
                edges.append((nxt[i], nxt[j]))
                nxt[i] += 1
                nxt[j] += 1
    marked = next((i for i, (c, _) in enumerate(classes) if c == 1), None)
    return FeynmanDiagram(tuple(vertices), tuple(edges), marked)


def canonical_diagram(d: FeynmanDiagram) -> FeynmanDiagram:
    classes = _classes_of(d.colors(), d.degrees)
    m = d.adjacency()
    _, perm = _canonical_search(classes, m)
    new_classes = [classes[v] for v in perm]
    new_m = [[m[a][b] for b in perm] for a in perm]
    return _diagram_from_matrix(new_classes, new_m)


def is_isomorphic(a: FeynmanDiagram, b: FeynmanDiagram) -> bool:
    if sorted(a.degrees) != sorted(b.degrees) or len(a.edges) != len(b.edges):
        return False
    if (a.marked is None) != (b.marked is None):
        return False
    return canonical_form(a) == canonical_form(b)


def _vertex_automorphisms(classes, m):
    n = len(classes)
    count = 0
    image = [None] * n
    used = [False] * n

    def rec(i):
        nonlocal count
        if i == n:
            count += 1
            return
        for v in range(n):
            if used[v] or classes[v] != classes[i] or m[v][v] != m[i][i]:
                continue
            if any(m[image[j]][v] != m[j][i] for j in range(i)):
                continue
            used[v] = True
            image[i] = v
            rec(i + 1)
            used[v] = False
        image[i] = None

    rec(0)
    return count


def automorphism_count(d: FeynmanDiagram) -> int:
    """Number of half-edge bijections preserving both partitions (and the mark)."""
    m = d.adjacency()
    n = len(m)
    lift = 1
    for i in range(n):
        lift *= factorial(m[i][i]) * 2 ** m[i][i]
        for j in range(i + 1, n):
            lift *= factorial(m[i][j])
    classes = _refine(_classes_of(d.colors(), d.degrees), m)
    return _vertex_automorphisms(classes, m) * lift


def _matrices(degrees):
    """All symmetric multiplicity matrices with the given vertex degrees."""
    n = len(degrees)
    m = [[0] * n for _ in range(n)]
    rem = list(degrees)

    def fill(i, j):
        if i == n:
            yield [row[:] for row in m]
            return
        if j == n:
            if rem[i] == 0:
                yield from fill(i + 1, i + 1)
            return
        if j == i:
            for k in range(rem[i] // 2 + 1):
                m[i][i] = k
                rem[i] -= 2 * k
                yield from fill(i, j + 1)
                rem[i] += 2 * k
            m[i][i] = 0
            return
        if j == n - 1:
            choices = [rem[i]] if rem[i] <= rem[j] else []
        else:
            choices = range(min(rem[i], rem[j]) + 1)
        for k in choices:
            m[i][j] = m[j][i] = k
            rem[i] -= k
            rem[j] -= k
            yield from fill(i, j + 1)
            rem[i] += k
            rem[j] += k
        m[i][j] = m[j][i] = 0

    yield from fill(0, 0)


def _is_connected_matrix(m):
    n = len(m)
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if m[i][j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _degree_sequences(count, total, lo, hi):
    """Nondecreasing sequences of ``count`` ints in ``[lo, hi]`` summing to ``total``."""
    if count == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, hi + 1):
        if first * count > total:
            break
        for rest in _degree_sequences(count - 1, total - first, first, hi):
            yield (first,) + rest


def _classes_for(class_lists, connected_only):
    seen = {}
    for classes in class_lists:
        degrees = [d for _, d in classes]
        for m in _matrices(degrees):
            if connected_only and not _is_connected_matrix(m):
                continue
            enc, perm = _canonical_search(classes, m)
            key = (tuple(sorted(classes)), enc)
            if key in seen:
                continue
            new_classes = [classes[v] for v in perm]
            new_m = [[m[a][b] for b in perm] for a in perm]
            seen[key] = _diagram_from_matrix(new_classes, new_m)
    out = []
    for key, diag in seen.items():
        out.append(DiagramClass(diag, automorphism_count(diag), diag.euler))
    return out


def _sort_key(cls: DiagramClass):
    return (cls.order, cls.num_vertices, tuple(sorted(cls.canonical.degrees)), canonical_form(cls.canonical))


@lru_cache(maxsize=None)
def _enumerate(max_order, min_valence, max_valence, connected_only):
    class_lists = [[]]  # the empty diagram
    for nv in range(1, 2 * max_order // (min_valence - 2) + 1):
        for order in range(1, max_order + 1):
            total = 2 * (nv + order)
            hi = total if max_valence is None else min(max_valence, total)
            for seq in _degree_sequences(nv, total, min_valence, hi):
                class_lists.append([(0, d) for d in seq])
    if connected_only:
        class_lists = class_lists[1:]
    classes = _classes_for(class_lists, connected_only)
    return tuple(sorted(classes, key=_sort_key))


def enumerate_diagrams(max_order: int, min_valence: int = 3, connected_only: bool = False,
                       max_valence: Optional[int] = None):
    """One representative per isomorphism class with ``|E| - |V| <= max_order``.

    Every vertex has valence in ``[min_valence, max_valence]``.  The empty
    diagram is included unless ``connected_only`` (it has no components).
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    if min_valence < 3:
        raise ValueError("enumeration needs min_valence >= 3 to be finite")
    if max_valence is not None and max_valence < min_valence:
        raise ValueError("max_valence < min_valence")
    return list(_enumerate(max_order, min_valence, max_valence, connected_only))


@lru_cache(maxsize=None)
def _enumerate_marked(max_order, min_marked, max_marked, min_valence):
    class_lists = []
    for n in range(min_marked, max_marked + 1):
        for nv in range(0, 2 * max_order + 1):
            # |E| - |V_base| = (sum(base) + n)/2 - nv  <=  max_order
            for order in range(1, max_order + 1):
                total = 2 * (nv + order) - n
                if total < min_valence * nv:
                    continue
                for seq in _degree_sequences(nv, total, min_valence, max(total, 0)):
                    class_lists.append([(1, n)] + [(0, d) for d in seq])
    classes = _classes_for(class_lists, False)
    marked = []
    for c in classes:
        # order counts only unmarked vertices
        nb = c.num_vertices - 1
        marked.append(DiagramClass(c.canonical, c.aut_count, nb - len(c.canonical.edges)))
    return tuple(sorted(marked, key=_sort_key))


def enumerate_marked_diagrams(max_order: int, min_marked: int = 1, max_marked: Optional[int] = None,
                              min_valence: int = 3):
    """Diagrams with one marked vertex of valence ``min_marked..max_marked`` and
    unmarked vertices of valence ``>= min_valence``.

    The reported ``euler``/``order`` counts unmarked vertices only, since an
    inserted observable carries no power of the coupling.
    """
    if max_marked is None:
        max_marked = 2 * max_order
    if min_marked < 1 or min_valence < 3:
        raise ValueError("need min_marked >= 1 and min_valence >= 3")
    return list(_enumerate_marked(max_order, min_marked, max_marked, min_valence))


def disjoint_union(a: FeynmanDiagram, b: FeynmanDiagram) -> FeynmanDiagram:
    if a.marked is not None and b.marked is not None:
        raise ValueError("at most one marked vertex")
    shift = a.num_half_edges
    vertices = a.vertices + tuple(tuple(h + shift for h in v) for v in b.vertices)
    edges = a.edges + tuple(tuple(h + shift for h in e) for e in b.edges)
    marked = a.marked if a.marked is not None else (
        None if b.marked is None else b.marked + len(a.vertices))
    return FeynmanDiagram(vertices, edges, marked)


def connected_components(d: FeynmanDiagram):
    """Components in order of their smallest half-edge, each relabeled from 0."""
    owner = d.vertex_of()
    parent = list(range(len(d.vertices)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in d.edges:
        ra, rb = find(owner[a]), find(owner[b])
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for i in range(len(d.vertices)):
        groups.setdefault(find(i), []).append(i)
    comps = []
    for members in sorted(groups.values(), key=lambda vs: min(d.vertices[vs[0]])):
        halfs = sorted(h for i in members for h in d.vertices[i])
        relabel = {h: k for k, h in enumerate(halfs)}
        vs = tuple(tuple(relabel[h] for h in d.vertices[i]) for i in members)
        es = tuple((relabel[a], relabel[b]) for a, b in d.edges if a in relabel)
        marked = next((k for k, i in enumerate(members) if i == d.marked), None)
        comps.append(FeynmanDiagram(vs, es, marked))
    return comps
