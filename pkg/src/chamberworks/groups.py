"""Weyl groups and full automorphism groups as permutation tables.

A Weyl group is stored as two integer tables: the action on the indexed root
list and the action on the indexed vertex list of the complex. Row 0 is the
identity; rows are in breadth-first order over left multiplication by simple
reflections, each new element keeping its first (parent, generator) pair.

Outer automorphisms are never realized as matrices. A diagram symmetry d of
the Coxeter graph lifts to the vertex permutation

    phi_d(w . v_i) = d~(w) . v_{d(i)},   d~(s_j) = s_{d(j)},

and Aut = union over d of W . phi_d.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .coxeter import ENUMERATION_LIMITS, RootSystem, WeylElement, graph_automorphisms, weyl_from_root_images
from .linalg import canonical_ray, reflect_ray


class EnumerationRefused(RuntimeError):
    pass


E7_FLAG = "CHAMBERWORKS_E7"


def check_enumerable(rs: RootSystem, allow_e7: bool | None = None) -> None:
    t = rs.type_label
    if t == "E8":
        raise EnumerationRefused("E8 Weyl group (order 696729600) is never enumerated")
    if t == "E7":
        if allow_e7 is None:
            allow_e7 = os.environ.get(E7_FLAG) == "1"
        if not allow_e7:
            raise EnumerationRefused(f"E7 enumeration is opt-in (set {E7_FLAG}=1)")
    kind, n = t[0], int(t[1:]) if t[1:].isdigit() else 0
    if kind in ENUMERATION_LIMITS and n > ENUMERATION_LIMITS[kind]:
        raise EnumerationRefused(f"{t} exceeds the enumeration budget ({kind}<={ENUMERATION_LIMITS[kind]})")


def _perm_of(reflector: tuple, points: Sequence[tuple], index: dict) -> np.ndarray:
    return np.array([index[reflect_ray(p, reflector)] for p in points], dtype=np.int32)


def _pack_keys(root_rows: np.ndarray, cols: Sequence[int]) -> np.ndarray:
    keys = np.zeros(root_rows.shape[0], dtype=np.uint64)
    for c in cols:
        keys = (keys << np.uint64(8)) | root_rows[:, c].astype(np.uint64)
    return keys


class WeylGroup:
    """Enumerated Weyl group acting on roots and (optionally) vertices."""

    def __init__(self, rs: RootSystem, vertex_rays: Sequence[tuple] | None = None,
                 *, allow_e7: bool | None = None):
        check_enumerable(rs, allow_e7)
        self.rs = rs
        self.root_rays = [canonical_ray(r) for r in rs.roots]
        self.vertex_rays = list(vertex_rays) if vertex_rays is not None else []
        self.nroots = len(self.root_rays)
        if self.nroots > 255:
            raise EnumerationRefused("root index does not fit the packed key")
        rindex = {r: i for i, r in enumerate(self.root_rays)}
        vindex = {v: i for i, v in enumerate(self.vertex_rays)}
        self.simple_cols = [rindex[canonical_ray(r)] for r in rs.simple_roots]
        simple_int = [canonical_ray(r) for r in rs.simple_roots]
        self.gen_roots = [_perm_of(r, self.root_rays, rindex) for r in simple_int]
        self.gen_verts = [_perm_of(r, self.vertex_rays, vindex) for r in simple_int]
        self._enumerate()

    def _enumerate(self):
        ngen = len(self.gen_roots)
        dt = np.int16 if max(self.nroots, len(self.vertex_rays)) < 32767 else np.int32
        idr = np.arange(self.nroots, dtype=dt)[None, :]
        idv = np.arange(len(self.vertex_rays), dtype=dt)[None, :]
        layers_r, layers_v = [idr], [idv]
        parents, gens = [np.array([-1])], [np.array([-1])]
        seen = _pack_keys(idr, self.simple_cols)
        start = 0
        while True:
            lr, lv = layers_r[-1], layers_v[-1]
            m = lr.shape[0]
            cand_r = np.stack([g[lr] for g in self.gen_roots], axis=1).reshape(m * ngen, -1)
            keys = _pack_keys(cand_r, self.simple_cols)
            uniq, first = np.unique(keys, return_index=True)
            fresh = ~np.isin(uniq, seen, assume_unique=True)
            first = np.sort(first[fresh])
            if first.size == 0:
                break
            cand_v = np.stack([g[lv] for g in self.gen_verts], axis=1).reshape(m * ngen, -1)
            layers_r.append(cand_r[first].astype(dt))
            layers_v.append(cand_v[first].astype(dt))
            parents.append(start + first // ngen)
            gens.append(first % ngen)
            seen = np.union1d(seen, uniq[fresh])
            start += m
        self.roots_perm = np.ascontiguousarray(np.concatenate(layers_r))
        self.verts_perm = np.ascontiguousarray(np.concatenate(layers_v))
        self.parent = np.concatenate(parents)
        self.generator = np.concatenate(gens)
        self.layer_sizes = [x.shape[0] for x in layers_r]
        self.keys = _pack_keys(self.roots_perm, self.simple_cols)
        self._key_order = np.argsort(self.keys)
        self._sorted_keys = self.keys[self._key_order]

    @property
    def order(self) -> int:
        return self.roots_perm.shape[0]

    def __len__(self) -> int:
        return self.order

    def lookup(self, root_rows: np.ndarray) -> np.ndarray:
        """Indices of the elements with the given root permutations."""
        keys = _pack_keys(np.atleast_2d(root_rows), self.simple_cols)
        pos = np.minimum(np.searchsorted(self._sorted_keys, keys), len(self._sorted_keys) - 1)
        if np.any(self._sorted_keys[pos] != keys):
            raise KeyError("root permutation is not in the group")
        return self._key_order[pos]

    def word(self, k: int) -> list[int]:
        """Generator indices, first letter applied first."""
        out = []
        while k > 0:
            out.append(int(self.generator[k]))
            k = int(self.parent[k])
        return out[::-1]

    def element(self, k: int) -> WeylElement:
        images = [self.rs.roots[i] for i in self.roots_perm[k, self.simple_cols]]
        return weyl_from_root_images(self.rs, images)

    def inverse_index(self, k: int) -> int:
        inv = np.argsort(self.roots_perm[k])
        return int(self.lookup(inv[None, :])[0])

    def compose_index(self, a: int, b: int) -> int:
        """Index of w_a * w_b (w_b acts first)."""
        return int(self.lookup(self.roots_perm[a][self.roots_perm[b]][None, :])[0])

    def index_of(self, w: WeylElement) -> int:
        row = np.array(w.root_permutation(self.rs.roots), dtype=self.roots_perm.dtype)
        return int(self.lookup(row[None, :])[0])

    def longest_index(self) -> int:
        # BFS layers are word lengths; the longest element is alone in the last one
        if self.layer_sizes[-1] != 1:
            raise RuntimeError("last BFS layer is not a single element")
        return self.order - 1

    @cached_property
    def layer_bounds(self) -> list[tuple[int, int]]:
        out, s = [], 0
        for n in self.layer_sizes:
            out.append((s, s + n))
            s += n
        return out

    def diagram_lift(self, perm: Sequence[int]) -> np.ndarray:
        """Index table of w -> d~(w) for the generator permutation ``perm``."""
        perm = list(perm)
        out = np.zeros(self.order, dtype=np.int64)
        for lo, hi in self.layer_bounds[1:]:
            par = self.parent[lo:hi]
            gen = self.generator[lo:hi]
            base = self.roots_perm[out[par]]
            rows = np.empty_like(base)
            for j in range(len(perm)):
                sel = gen == j
                if np.any(sel):
                    rows[sel] = self.gen_roots[perm[j]][base[sel]]
            out[lo:hi] = self.lookup(rows)
        return out


def enumerate_weyl(rs: RootSystem, *, allow_e7: bool | None = None) -> WeylGroup:
    """Breadth-first closure of the simple reflections acting on the roots."""
    return WeylGroup(rs, None, allow_e7=allow_e7)


@dataclass(frozen=True)
class AutElement:
    """Element w . phi_d of Aut; inner iff d is the identity diagram symmetry."""

    w: int
    d: int
    vertex_permutation: tuple
    inner: bool

    def __call__(self, u: int) -> int:
        return self.vertex_permutation[u]


class AutGroup:
    """Aut of a Coxeter complex as |W| x |Aut(graph)| vertex permutations."""

    def __init__(self, weyl: WeylGroup, fundamental_indices: dict, conformal):
        rs = weyl.rs
        self.weyl = weyl
        labels = list(rs.labels)
        autos = graph_automorphisms(rs.graph())
        ident = {k: k for k in labels}
        autos.sort(key=lambda m: (m != ident, tuple(m[k] for k in labels)))
        self.diagram_maps = autos
        nv = weyl.verts_perm.shape[1]
        pv = weyl.verts_perm
        reps = np.full(nv, -1, dtype=np.int64)
        rep_label = np.full(nv, -1, dtype=np.int64)
        for k in labels:
            col = pv[:, fundamental_indices[k]]
            vals, first = np.unique(col, return_index=True)
            reps[vals] = first
            rep_label[vals] = labels.index(k)
        if np.any(reps < 0):
            raise RuntimeError("vertex list is not a union of W-orbits of fundamental vertices")
        fund_by_pos = np.array([fundamental_indices[k] for k in labels])
        phis = []
        for d in autos:
            gperm = [labels.index(d[k]) for k in labels]
            lift = weyl.diagram_lift(gperm)
            phi = pv[lift[reps], fund_by_pos[np.array(gperm)][rep_label]]
            self._verify_lift(phi, gperm, conformal, fund_by_pos)
            phis.append(phi.astype(pv.dtype))
        self.phi = np.ascontiguousarray(np.stack(phis))
        self._cache = {}

    def _verify_lift(self, phi, gperm, conformal, fund_by_pos):
        if len(set(phi.tolist())) != len(phi):
            raise RuntimeError("diagram lift is not a permutation of vertices")
        for j, g in enumerate(self.weyl.gen_verts):
            if not np.array_equal(phi[g], self.weyl.gen_verts[gperm[j]][phi]):
                raise RuntimeError("diagram lift does not intertwine the simple reflections")
        chamber = phi[fund_by_pos]
        if not conformal(chamber.tolist()):
            raise RuntimeError("diagram lift does not map the fundamental chamber to a chamber")

    @property
    def order(self) -> int:
        return self.weyl.order * len(self.diagram_maps)

    def __len__(self) -> int:
        return self.order

    @property
    def out_order(self) -> int:
        return len(self.diagram_maps)

    def perm(self, w: int, d: int = 0) -> np.ndarray:
        return self.weyl.verts_perm[w][self.phi[d]]

    def element(self, w: int, d: int = 0) -> AutElement:
        return AutElement(int(w), int(d), tuple(int(x) for x in self.perm(w, d)), d == 0)

    def __iter__(self):
        for d in range(len(self.diagram_maps)):
            for w in range(self.weyl.order):
                yield self.element(w, d)

    def all_perms(self, columns: np.ndarray | None = None) -> np.ndarray:
        """(|Aut|, k) images of the given vertex columns (all vertices by default)."""
        pv = self.weyl.verts_perm
        cols = np.arange(pv.shape[1]) if columns is None else np.asarray(columns)
        return np.concatenate([pv[:, self.phi[d][cols]] for d in range(len(self.diagram_maps))])

    def split_index(self, k: int) -> tuple[int, int]:
        return k % self.weyl.order, k // self.weyl.order

    def label_action(self, d: int) -> dict:
        return dict(self.diagram_maps[d])
