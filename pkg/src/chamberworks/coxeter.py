"""Root systems of types A_n, B_n, D_n, F4, E6, E7, E8 and Weyl-group folding.

Coordinates, simple roots and fundamental-vertex tables follow one fixed
model per type:

* A_n lives in {x_0 + ... + x_n = 0} in R^{n+1}, simple roots e_i - e_{i-1}.
* B_n: simple roots e_1, e_i - e_{i-1}.   D_n: e_1 + e_2, e_i - e_{i-1}.
* F4: -1/2(1,1,1,1), e_1, e_2 - e_1, e_3 - e_2.
* E6 inside R^8 on {x6 = x7 = x8}; E7, E8 extend the E6 diagram by a chain
  6 - 7 - 8.

The vertex labelled i of the fundamental chamber is the one opposite to the
panel of the i-th simple root, i.e. orthogonal to every other simple root.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from .linalg import (
    canonical_ray,
    dot,
    inverse,
    matmul,
    matvec,
    norm2,
    nullspace,
    primitive_line,
    rank,
    reflect,
    vec,
)

H = Fraction(1, 2)

ENUMERATION_LIMITS = {"A": 7, "B": 6, "D": 6}


def _e(n: int, i: int, c=1) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return tuple(v)


def _sub(n, i, j):
    v = [Fraction(0)] * n
    v[i] += 1
    v[j] -= 1
    return tuple(v)


# --------------------------------------------------------------------------
# Coxeter graphs


def coxeter_matrix_entry(r: Sequence, s: Sequence) -> int:
    """Order m of s_r s_s from the angle between two simple roots."""
    c2 = Fraction(dot(r, s) ** 2, norm2(r) * norm2(s))
    table = {Fraction(0): 2, Fraction(1, 4): 3, Fraction(1, 2): 4, Fraction(3, 4): 6}
    if c2 not in table:
        raise ValueError(f"unexpected squared cosine {c2} between simple roots")
    return table[c2]


def coxeter_graph(simple_roots: Sequence[Sequence], labels: Sequence[int]) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(labels)
    for (a, r), (b, s) in combinations(zip(labels, simple_roots), 2):
        m = coxeter_matrix_entry(r, s)
        if m > 2:
            g.add_edge(a, b, m=m)
    return g


def _component_name(g: nx.Graph) -> str:
    n = g.number_of_nodes()
    if n == 1:
        return "A1"
    ms = sorted(d["m"] for _, _, d in g.edges(data=True))
    degrees = sorted(d for _, d in g.degree())
    if g.number_of_edges() != n - 1:
        raise ValueError("Coxeter graph of a finite group must be a forest")
    if max(degrees) <= 2:
        if all(m == 3 for m in ms):
            return f"A{n}"
        if ms.count(6) == 1 and n == 2:
            return "G2"
        if ms.count(4) == 1 and all(m in (3, 4) for m in ms):
            ends = [v for v in g if g.degree(v) == 1]
            end_edges = [g.edges[e]["m"] for v in ends for e in g.edges(v)]
            if n == 2 or 4 in end_edges:
                return f"B{n}"
            if n == 4:
                return "F4"
        raise ValueError("not a crystallographic finite Coxeter graph")
    if degrees[-1] == 3 and degrees[-2] <= 2 and all(m == 3 for m in ms):
        centre = next(v for v in g if g.degree(v) == 3)
        h = g.copy()
        h.remove_node(centre)
        arms = sorted(len(c) for c in nx.connected_components(h))
        if arms[:2] == [1, 1]:
            return f"D{n}"
        if arms == [1, 2, 2]:
            return "E6"
        if arms == [1, 2, 3]:
            return "E7"
        if arms == [1, 2, 4]:
            return "E8"
    raise ValueError("not a crystallographic finite Coxeter graph")


def classify_graph(g: nx.Graph) -> str:
    """Name like 'B3' or 'A2∘A1∘A1'; join factors ordered by smallest label."""
    comps = sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])
    return "∘".join(_component_name(g.subgraph(c)) for c in comps)


def graph_automorphisms(g: nx.Graph) -> list[dict]:
    """Label permutations preserving the Coxeter graph with edge orders."""
    gm = isomorphism.GraphMatcher(g, g, edge_match=lambda a, b: a["m"] == b["m"])
    autos = [dict(m) for m in gm.isomorphisms_iter()]
    autos.sort(key=lambda m: tuple(m[k] for k in sorted(m)))
    return autos


def same_graph(g1: nx.Graph, g2: nx.Graph) -> bool:
    return nx.is_isomorphic(g1, g2, edge_match=lambda a, b: a["m"] == b["m"])


# --------------------------------------------------------------------------
# root systems


@dataclass(eq=False)
class RootSystem:
    """A reduced root system with an ordered simple system.

    ``labels[k]`` names the k-th simple root and the fundamental vertex
    opposite to its panel.
    """

    type_label: str
    rank: int
    ambient_dim: int
    simple_roots: tuple
    labels: tuple
    fundamental_vertices: dict
    roots: tuple = field(default=())

    def __post_init__(self):
        self.simple_roots = tuple(vec(r) for r in self.simple_roots)
        self.labels = tuple(self.labels)
        if not self.roots:
            self.roots = _close_roots(self.simple_roots)
        if not self.fundamental_vertices:
            self.fundamental_vertices = dict(zip(self.labels, dual_vertices(self.simple_roots)))
        self.fundamental_vertices = {k: vec(v) for k, v in self.fundamental_vertices.items()}

    @property
    def name(self) -> str:
        return self.type_label

    def fundamental(self, label) -> tuple:
        return self.fundamental_vertices[label]

    def label_index(self, label) -> int:
        return self.labels.index(label)

    @property
    def positive_roots(self) -> tuple:
        return tuple(r for r in self.roots if is_lex_positive(r))

    @property
    def walls(self) -> list[tuple[int, ...]]:
        """One primitive integer normal per reflecting hyperplane, sorted."""
        return sorted({primitive_line(r) for r in self.roots})

    def graph(self) -> nx.Graph:
        return coxeter_graph(self.simple_roots, self.labels)

    def chamber_inequalities_hold(self, x: Sequence) -> bool:
        return all(dot(x, r) >= 0 for r in self.simple_roots)

    def span_basis(self) -> list:
        return list(self.simple_roots)

    def complement_basis(self) -> list:
        """Basis of the orthogonal complement of the span of the roots."""
        return nullspace(self.simple_roots, self.ambient_dim)

    def in_span(self, x: Sequence) -> bool:
        return all(dot(x, c) == 0 for c in self.complement_basis())

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label}, ambient_dim={self.ambient_dim})"


def is_lex_positive(v: Sequence) -> bool:
    for a in v:
        if a != 0:
            return a > 0
    return False


def _close_roots(simple: Sequence) -> tuple:
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for r in simple:
                w = reflect(v, r)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(seen))


def dual_vertices(simple: Sequence) -> list[tuple]:
    """Primitive rays v_i in span(simple) with <v_i, r_j> = 0 (j != i), > 0 (j = i)."""
    n = len(simple[0])
    comp = nullspace(simple, n)
    out = []
    for i in range(len(simple)):
        rows = [r for j, r in enumerate(simple) if j != i] + list(comp)
        (v,) = nullspace(rows, n)
        if dot(v, simple[i]) < 0:
            v = tuple(-a for a in v)
        out.append(vec(canonical_ray(v)))
    return out


def _table_a(n):
    dim = n + 1
    simple = [_sub(dim, i, i - 1) for i in range(1, n + 1)]
    verts = {}
    for k in range(1, n + 1):
        verts[k] = vec([-(n + 1 - k)] * k + [k] * (n + 1 - k))
    return simple, verts


def _table_b(n):
    simple = [_e(n, 0)] + [_sub(n, i, i - 1) for i in range(1, n)]
    verts = {k: vec([0] * (k - 1) + [1] * (n - k + 1)) for k in range(1, n + 1)}
    return simple, verts


def _table_d(n):
    simple = [tuple(Fraction(int(i < 2)) for i in range(n))] + [_sub(n, i, i - 1) for i in range(1, n)]
    verts = {1: vec([1] * n), 2: vec([-1] + [1] * (n - 1))}
    for k in range(3, n + 1):
        verts[k] = vec([0] * (k - 1) + [1] * (n - k + 1))
    return simple, verts


def _table_f4():
    simple = [vec([-H] * 4), _e(4, 0), _sub(4, 1, 0), _sub(4, 2, 1)]
    verts = {
        1: vec((0, 0, 0, -1)),
        2: vec((1, 1, 1, -3)),
        3: vec((0, 1, 1, -2)),
        4: vec((0, 0, 1, -1)),
    }
    return simple, verts


E6_SIMPLE = (
    vec((H, H, H, -H, -H, -H, -H, -H)),
    vec((-1, 1, 0, 0, 0, 0, 0, 0)),
    vec((0, -1, 1, 0, 0, 0, 0, 0)),
    vec((0, 0, -1, 1, 0, 0, 0, 0)),
    vec((0, 0, 0, -1, 1, 0, 0, 0)),
    vec((H, H, H, H, -H, H, H, H)),
)
E7_EXTRA = vec((-H, -H, -H, -H, -H, -H, H, -H))
E8_EXTRA = vec((0, 0, 0, 0, 0, 0, -1, 1))


def _table_e6():
    verts = {
        1: vec((1, 1, 1, 1, 1, -1, -1, -1)),
        2: vec((-3, 3, 3, 3, 3, -1, -1, -1)),
        3: vec((0, 0, 3, 3, 3, -1, -1, -1)),
        4: vec((1, 1, 1, 3, 3, -1, -1, -1)),
        5: vec((3, 3, 3, 3, 9, -1, -1, -1)),
        6: vec((3, 3, 3, 3, 3, 1, 1, 1)),
    }
    return list(E6_SIMPLE), verts


def e8_roots() -> list[tuple]:
    """The 240 E8 roots in the odd-sign-parity model."""
    out = []
    for i, j in combinations(range(8), 2):
        for a, b in product((1, -1), repeat=2):
            v = [Fraction(0)] * 8
            v[i], v[j] = Fraction(a), Fraction(b)
            out.append(tuple(v))
    for eps in product((1, -1), repeat=8):
        p = 1
        for e in eps:
            p *= e
        if p == -1:
            out.append(tuple(Fraction(e, 2) for e in eps))
    return sorted(out)


def parse_type(type_label: str, rank: int | None = None) -> tuple[str, int]:
    t = type_label.strip().upper()
    if len(t) > 1 and t[1:].isdigit():
        t, r = t[0], int(t[1:])
        if rank is not None and rank != r:
            raise ValueError(f"conflicting ranks for {type_label}")
        rank = r
    if t not in "ABDEF" or len(t) != 1:
        raise ValueError(f"unknown type {type_label!r}")
    if rank is None:
        raise ValueError(f"type {t} needs a rank")
    legal = {
        "A": rank >= 1,
        "B": rank >= 2,
        "D": rank >= 4,
        "F": rank == 4,
        "E": rank in (6, 7, 8),
    }[t]
    if not legal:
        raise ValueError(f"illegal rank {rank} for type {t}")
    return t, rank


def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    """Root system with the fixed simple roots and fundamental-vertex table."""
    t, n = parse_type(type_label, rank)
    if t == "A":
        simple, verts = _table_a(n)
    elif t == "B":
        simple, verts = _table_b(n)
    elif t == "D":
        simple, verts = _table_d(n)
    elif t == "F":
        simple, verts = _table_f4()
    elif n == 6:
        simple, verts = _table_e6()
    else:
        simple = list(E6_SIMPLE) + [E7_EXTRA] + ([E8_EXTRA] if n == 8 else [])
        verts = {}
    labels = tuple(range(1, n + 1))
    rs = RootSystem(f"{t}{n}", n, len(simple[0]), tuple(simple), labels, dict(verts))
    computed = dict(zip(labels, dual_vertices(rs.simple_roots)))
    for k, v in rs.fundamental_vertices.items():
        if canonical_ray(v) != canonical_ray(computed[k]):
            raise RuntimeError(f"{rs.type_label}: tabulated vertex {k} is not dual to the simple roots")
    return rs


def root_system_from_simple(simple_roots, labels, type_label: str | None = None,
                            vertices: dict | None = None, roots=None) -> RootSystem:
    simple_roots = [vec(r) for r in simple_roots]
    if type_label is None:
        type_label = classify_graph(coxeter_graph(simple_roots, labels))
    return RootSystem(type_label, len(simple_roots), len(simple_roots[0]), tuple(simple_roots),
                      tuple(labels), dict(vertices or {}), tuple(roots or ()))


def simple_system(roots: Sequence[Sequence]) -> list[tuple]:
    """Simple roots of the lexicographic positive system of ``roots``.

    A positive root a is simple iff its reflection permutes the other
    positive roots.
    """
    pos = [vec(r) for r in roots if is_lex_positive(r)]
    pos_set = set(pos)
    out = []
    for a in pos:
        if all(b == a or reflect(b, a) in pos_set for b in pos):
            out.append(a)
    return out


# --------------------------------------------------------------------------
# Weyl elements and folding


class WeylElement:
    """An orthogonal rational matrix in a Weyl group."""

    __slots__ = ("matrix", "_hash")

    def __init__(self, matrix):
        self.matrix = tuple(tuple(Fraction(a) for a in row) for row in matrix)
        self._hash = hash(self.matrix)

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def reflection(cls, r: Sequence) -> "WeylElement":
        n = len(r)
        rr = norm2(r)
        return cls([[Fraction(int(i == j)) - Fraction(2 * r[i] * r[j], rr) for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_word(cls, word: Sequence[int], generators: Sequence[Sequence], n: int) -> "WeylElement":
        """Product s_{word[-1]} ... s_{word[0]} (the first letter acts first)."""
        w = cls.identity(n)
        for k in word:
            w = cls.reflection(generators[k]) * w
        return w

    def apply(self, v: Sequence) -> tuple:
        return matvec(self.matrix, v)

    def __call__(self, v: Sequence) -> tuple:
        return self.apply(v)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(matmul(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        return WeylElement(list(zip(*self.matrix)))

    def is_identity(self) -> bool:
        return all(a == int(i == j) for i, row in enumerate(self.matrix) for j, a in enumerate(row))

    def root_permutation(self, roots: Sequence) -> tuple[int, ...]:
        index = {r: i for i, r in enumerate(roots)}
        return tuple(index[self.apply(r)] for r in roots)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"WeylElement({[[str(a) for a in r] for r in self.matrix]})"


def weyl_from_root_images(rs: RootSystem, images: Sequence[Sequence]) -> WeylElement:
    """The element sending simple root k to ``images[k]``, identity off span(roots)."""
    comp = rs.complement_basis()
    src = list(rs.simple_roots) + comp
    dst = [vec(v) for v in images] + comp
    # M src^T = dst^T  ->  M = dst^T (src^T)^-1
    src_t = [list(c) for c in zip(*src)]
    dst_t = [list(c) for c in zip(*dst)]
    return WeylElement(matmul(dst_t, inverse(src_t)))


def fold(simple_roots: Sequence[Sequence], x: Sequence) -> tuple[list[int], tuple]:
    """Reflect ``x`` into the closed chamber {<., r> >= 0 for all simple r}.

    Returns the word (indices into ``simple_roots``, first letter applied
    first) and the folded vector.
    """
    x = vec(x)
    word: list[int] = []
    while True:
        for k, r in enumerate(simple_roots):
            if dot(x, r) < 0:
                x = reflect(x, r)
                word.append(k)
                break
        else:
            return word, x


def fold_to_chamber(rs: RootSystem, x: Sequence) -> tuple[WeylElement, tuple]:
    """(w, x0) with x0 = w x in the closed fundamental chamber."""
    if all(a == 0 for a in x):
        raise ValueError("cannot fold the zero vector")
    word, x0 = fold(rs.simple_roots, x)
    return WeylElement.from_word(word, rs.simple_roots, rs.ambient_dim), x0


def vertex_label(rs: RootSystem, x: Sequence):
    """Label of the fundamental vertex in the W-orbit of the ray ``x``, else None."""
    _, x0 = fold(rs.simple_roots, x)
    ray = canonical_ray(x0)
    for k, v in rs.fundamental_vertices.items():
        if canonical_ray(v) == ray:
            return k
    return None


def canonical_involution(rs: RootSystem) -> dict:
    """Label map induced by x -> fold(-x) on the fundamental vertices."""
    out = {}
    for k, v in rs.fundamental_vertices.items():
        lab = vertex_label(rs, tuple(-a for a in v))
        if lab is None:
            raise AssertionError("antipode of a vertex folded to a non-vertex")
        out[k] = lab
    return out


def roots_orthogonal_to(rs: RootSystem, vectors: Sequence[Sequence]) -> list[tuple]:
    return [r for r in rs.roots if all(dot(r, v) == 0 for v in vectors)]


def transporter(rs: RootSystem, sources: Sequence[Sequence], targets: Sequence[Sequence]) -> WeylElement | None:
    """Some w in W with w(sources[i]) on the ray of targets[i] for every i.

    Maps the rays one at a time; after fixing the first k targets the
    remaining freedom is the pointwise stabilizer of those targets, which is
    the reflection group of the roots orthogonal to them. Each step folds
    both the current image and the target into a chamber of that group and
    compares rays.
    """
    n = rs.ambient_dim
    w = WeylElement.identity(n)
    fixed: list[tuple] = []
    for src, tgt in zip(sources, targets):
        sub_roots = roots_orthogonal_to(rs, fixed) if fixed else list(rs.roots)
        simple = simple_system(sub_roots)
        cur = w.apply(src)
        word_a, a0 = fold(simple, cur)
        word_b, b0 = fold(simple, tgt)
        if canonical_ray(a0) != canonical_ray(b0):
            return None
        u_a = WeylElement.from_word(word_a, simple, n)
        u_b = WeylElement.from_word(word_b, simple, n)
        w = u_b.inverse() * u_a * w
        fixed.append(vec(tgt))
    return w


def weyl_order_formula(type_label: str) -> int:
    from math import factorial

    t, n = parse_type(type_label)
    return {
        "A": factorial(n + 1),
        "B": 2 ** n * factorial(n),
        "D": 2 ** (n - 1) * factorial(n),
        "F": 1152,
        "E": {6: 51840, 7: 2903040, 8: 696729600}.get(n, 0),
    }[t]


def span_rank(vectors) -> int:
    return rank(list(vectors))
