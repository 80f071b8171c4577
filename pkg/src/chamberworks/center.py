"""Stabilizers in Aut, invariant faces, verdicts and conjecture sweeps.

A convex subcomplex is the full subcomplex on its vertex set, so g in Aut
stabilizes K iff g permutes vert(K). A group G fixes a point of |K| iff some
face of K is G-invariant, and that happens iff some G-orbit on vert(K) spans
a face: an invariant face is a union of orbits, and an orbit that spans a
face is an invariant face whose barycenter is fixed.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .complex import CoxeterComplex, Face
from .convexity import NotConvex, Subcomplex, is_convex, is_subbuilding, simplicial_convex_hull
from .geodesy import circumcenter
from .linalg import ANGLE_PI_2, ExactAngle, angle, canonical_ray, norm2, sqrt_fraction, vec

SUBBUILDING = "subbuilding"
FIXED_FACE = "fixed_face"
COUNTEREXAMPLE = "counterexample"


class Unsupported(RuntimeError):
    pass


@dataclass
class Stabilizer:
    """Elements w . phi_d of Aut preserving K, as parallel index arrays."""

    cc: CoxeterComplex
    w: np.ndarray
    d: np.ndarray

    @property
    def order(self) -> int:
        return int(self.w.shape[0])

    def __len__(self) -> int:
        return self.order

    @property
    def inner_order(self) -> int:
        return int(np.count_nonzero(self.d == 0))

    def images(self, columns: Sequence[int]) -> np.ndarray:
        """(order, len(columns)) images of the given vertices."""
        cols = np.asarray(columns, dtype=np.int64)
        aut = self.cc.aut
        out = np.empty((self.order, len(cols)), dtype=np.int64)
        for d in np.unique(self.d):
            sel = self.d == d
            out[sel] = self.cc.weyl.verts_perm[self.w[sel]][:, aut.phi[d][cols]]
        return out

    def perm(self, k: int) -> np.ndarray:
        return self.cc.aut.perm(int(self.w[k]), int(self.d[k]))

    def elements(self):
        aut = self.cc.aut
        for w, d in zip(self.w.tolist(), self.d.tolist()):
            yield aut.element(w, d)


def _label_counts(cc: CoxeterComplex, verts: Iterable[int]) -> Counter:
    return Counter(cc.vertex_labels[v] for v in verts)


def stabilizer(cc: CoxeterComplex, K: Subcomplex) -> Stabilizer:
    """All g in Aut with g(K) = K."""
    if cc.rs.type_label in ("E7", "E8"):
        raise Unsupported(f"Aut of {cc.rs.type_label} is not enumerated")
    aut = cc.aut
    kv = np.array(sorted(K.vertices), dtype=np.int64)
    mask = K.mask
    counts = _label_counts(cc, kv)
    ws, ds = [], []
    for d, dmap in enumerate(aut.diagram_maps):
        # outer classes move labels; K's label multiset must be invariant
        if any(counts[l] != counts[dmap[l]] for l in counts):
            continue
        rows = kernels.rows_into(cc.weyl.verts_perm, aut.phi[d][kv], mask)
        ws.append(rows)
        ds.append(np.full(len(rows), d, dtype=np.int64))
    w = np.concatenate(ws) if ws else np.zeros(0, dtype=np.int64)
    d = np.concatenate(ds) if ds else np.zeros(0, dtype=np.int64)
    st = Stabilizer(cc, w.astype(np.int64), d)
    if not K.full:
        keep = []
        faces = K.faces
        for k in range(st.order):
            p = st.perm(k)
            keep.append(all(tuple(sorted(int(p[v]) for v in f)) in faces for f in faces))
        keep = np.array(keep, dtype=bool)
        st = Stabilizer(cc, st.w[keep], st.d[keep])
    return st


def vertex_orbits(cc: CoxeterComplex, K: Subcomplex, G: Stabilizer) -> list[tuple[int, ...]]:
    kv = sorted(K.vertices)
    if G.order == 0:
        raise ValueError("empty group")
    img = G.images(kv)
    index = {v: i for i, v in enumerate(kv)}
    parent = list(range(len(kv)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(kv)):
        for u in np.unique(img[:, i]).tolist():
            if u not in index:
                raise ValueError("G does not preserve the vertex set of K")
            a, b = find(i), find(index[u])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i, v in enumerate(kv):
        groups.setdefault(find(i), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda o: o[0])


def fixed_face_in(cc: CoxeterComplex, K: Subcomplex, G: Stabilizer) -> Face | None:
    """A maximal G-invariant face of K, or None if no face is invariant."""
    orbits = [o for o in vertex_orbits(cc, K, G) if cc.is_simplex(o)]
    if not orbits:
        return None
    face: list[int] = []
    for o in orbits:
        if cc.is_simplex(face + list(o)) and K.contains_face(face + list(o)):
            face.extend(o)
    return cc.face(face)


def type_normalized(cc: CoxeterComplex, u: int) -> tuple:
    """The positive multiple of vertex u with the norm of its fundamental vertex."""
    f = cc.rs.fundamental_vertices[cc.vertex_labels[u]]
    ray = vec(cc.vertices[u])
    c = sqrt_fraction(Fraction(norm2(f)) / norm2(ray))
    if c is None:
        raise AssertionError("vertex norm is not a rational multiple of its type's norm")
    return tuple(c * a for a in ray)


def orbit_witness(cc: CoxeterComplex, face: Face) -> tuple:
    """Sum of type-normalized vertex rays of an invariant face."""
    out = [Fraction(0)] * cc.rs.ambient_dim
    for u in face.vertices:
        for k, a in enumerate(type_normalized(cc, u)):
            out[k] += a
    return tuple(out)


def check_witness(cc: CoxeterComplex, face: Face, G: Stabilizer, *, matrix_checks: int = 24) -> bool:
    """Every element maps the face onto itself; sampled inner elements fix
    the witness point exactly as matrices."""
    img = G.images(face.vertices)
    target = np.array(sorted(face.vertices))
    if not np.all(np.sort(img, axis=1) == target[None, :]):
        return False
    x = orbit_witness(cc, face)
    inner = np.nonzero(G.d == 0)[0]
    step = max(1, len(inner) // matrix_checks)
    for k in inner[::step][:matrix_checks]:
        if cc.weyl.element(int(G.w[k])).apply(x) != x:
            return False
    return True


def generators_of(cc: CoxeterComplex, K: Subcomplex, G: Stabilizer) -> list[tuple[int, int]]:
    """A generating set of G's action on vert(K), chosen greedily."""
    kv = sorted(K.vertices)
    img = G.images(kv)
    index = {v: i for i, v in enumerate(kv)}
    perms = [tuple(index[int(u)] for u in row) for row in img]
    distinct = {p: k for k, p in enumerate(perms)}
    gens: list[int] = []
    group = {tuple(range(len(kv)))}
    for p, k in sorted(distinct.items(), key=lambda t: t[1]):
        if p in group:
            continue
        gens.append(k)
        frontier = list(group)
        gp = [perms[g] for g in gens]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gp:
                    c = tuple(g[i] for i in a)
                    if c not in group:
                        group.add(c)
                        nxt.append(c)
            frontier = nxt
    return [(int(G.w[k]), int(G.d[k])) for k in gens]


@dataclass
class Verdict:
    kind: str
    stabilizer_order: int
    face: tuple | None = None
    witness: tuple | None = None
    generators: list = field(default_factory=list)
    antipode_failures: list = field(default_factory=list)
    orbits: list = field(default_factory=list)
    subcomplex: dict | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "stabilizer_order": self.stabilizer_order}
        if self.kind == FIXED_FACE:
            out["witness"] = {"face": list(self.face), "point": [str(a) for a in self.witness]}
        elif self.kind == COUNTEREXAMPLE:
            out["witness"] = {
                "generators": [list(g) for g in self.generators],
                "antipode_failures": list(self.antipode_failures),
                "orbits": [list(o) for o in self.orbits],
                "subcomplex": self.subcomplex,
            }
        else:
            out["witness"] = None
        return out


def verdict(cc: CoxeterComplex, K: Subcomplex, *, check_convex: bool = True) -> Verdict:
    if check_convex and not is_convex(cc, K):
        raise NotConvex("verdicts are defined for convex subcomplexes")
    G = stabilizer(cc, K)
    if is_subbuilding(cc, K, check=False):
        return Verdict(SUBBUILDING, G.order)
    f = fixed_face_in(cc, K, G)
    if f is not None:
        if not check_witness(cc, f, G):
            raise AssertionError("invariant face witness is not fixed")
        return Verdict(FIXED_FACE, G.order, f.vertices, tuple(canonical_ray(orbit_witness(cc, f))))
    fails = sorted(v for v in K.vertices if int(cc.antipode_index[v]) not in K.vertices)
    return Verdict(COUNTEREXAMPLE, G.order, generators=generators_of(cc, K, G),
                   antipode_failures=fails, orbits=vertex_orbits(cc, K, G), subcomplex=K.to_json())


def invariant_set_radius_check(cc: CoxeterComplex | None, A: Sequence) -> tuple[object, object]:
    """A point x with rad(A, x) < pi/2 for a set A of diameter <= pi/2.

    Returns (center, radius); the radius is an ExactAngle when the center is
    certified exactly.
    """
    pts = [vec(cc.vertices[a]) if isinstance(a, (int, np.integer)) else vec(a) for a in A]
    if not pts:
        raise ValueError("empty set")
    for p, q in combinations(pts, 2):
        if angle(p, q) > ANGLE_PI_2:
            raise ValueError("diameter exceeds pi/2")
    res = circumcenter(pts)
    if res.center is None:
        raise AssertionError("no center with radius below pi/2 found")
    if isinstance(res.radius, ExactAngle):
        if not res.radius < ANGLE_PI_2:
            raise AssertionError("radius is not below pi/2")
    elif not res.radius < np.pi / 2:
        raise AssertionError("radius is not below pi/2")
    return res.center, res.radius


# --------------------------------------------------------------------------
# sweeps


def threads() -> int:
    try:
        return max(1, int(os.environ.get("CHAMBERWORKS_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class SweepResult:
    complex: str
    mode: str
    seeds: int
    distinct_hulls: int
    counts: dict
    weighted_counts: dict = field(default_factory=dict)
    coverage: int | None = None
    expected_coverage: int | None = None
    counterexamples: list = field(default_factory=list)
    seed: int | None = None
    max_seed_faces: int = 2

    def to_json(self) -> dict:
        return {
            "complex": self.complex,
            "mode": self.mode,
            "max_seed_faces": self.max_seed_faces,
            "seed": self.seed,
            "seeds": self.seeds,
            "distinct_hulls": self.distinct_hulls,
            "counts": dict(sorted(self.counts.items())),
            "weighted_counts": dict(sorted(self.weighted_counts.items())),
            "coverage": self.coverage,
            "expected_coverage": self.expected_coverage,
            "counterexamples": self.counterexamples,
        }

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.counts.get(COUNTEREXAMPLE, 0) == 0


def judge_seeds(cc: CoxeterComplex, seeds: Sequence[Sequence[Sequence[int]]]) -> tuple[list[Verdict], int]:
    """Verdicts of the hulls of the seeds, in seed order, and the number of
    distinct hulls. Work is spread over CHAMBERWORKS_THREADS threads with
    order-preserving maps, so results do not depend on the thread count."""
    n = threads()

    def hull(seed):
        return simplicial_convex_hull(cc, seed).vertices

    def judge(vs):
        K = Subcomplex(cc, vertices=vs)
        K._convex = True
        return verdict(cc, K, check_convex=False)

    if n > 1:
        with ThreadPoolExecutor(n) as ex:
            hulls = list(ex.map(hull, seeds))
    else:
        hulls = [hull(s) for s in seeds]
    unique = list(dict.fromkeys(hulls))
    if n > 1:
        with ThreadPoolExecutor(n) as ex:
            verdicts = list(ex.map(judge, unique))
    else:
        verdicts = [judge(u) for u in unique]
    table = dict(zip(unique, verdicts))
    return [table[h] for h in hulls], len(unique)


def _face_keys(faces: np.ndarray, nv: int) -> np.ndarray:
    keys = np.zeros(faces.shape[:-1], dtype=np.int64)
    for k in range(faces.shape[-1]):
        keys = keys * (nv + 1) + faces[..., k]
    return keys


def face_orbit_reps(cc: CoxeterComplex, stab: Stabilizer) -> list[tuple[tuple[int, ...], int]]:
    """Orbit representatives (smallest member) and orbit sizes of ``stab`` on all faces."""
    out = []
    pv = cc.weyl.verts_perm
    aut = cc.aut
    by_size: dict = {}
    for J, rows in cc.faces_by_type.items():
        by_size.setdefault(len(J), []).append(rows)
    for k in sorted(by_size):
        # outer elements move faces between label types of the same size
        rows = np.concatenate(by_size[k])
        imgs = []
        for d in np.unique(stab.d):
            sel = stab.w[stab.d == d]
            imgs.append(pv[sel][:, aut.phi[d][rows]])
        img = np.sort(np.concatenate(imgs).astype(np.int64), axis=-1)
        canon = _face_keys(img, cc.nvertices).min(axis=0)
        own = _face_keys(rows, cc.nvertices)
        reps, counts = np.unique(canon, return_counts=True)
        pos = {int(key): i for i, key in enumerate(own.tolist())}
        for key, c in zip(reps.tolist(), counts.tolist()):
            out.append((tuple(int(x) for x in rows[pos[key]]), int(c)))
    return sorted(out, key=lambda t: (len(t[0]), t[0]))


def exhaustive_sweep(cc: CoxeterComplex) -> SweepResult:
    """Verdicts for the hulls of all seeds of one or two faces, up to Aut.

    The first face runs over fundamental faces up to diagram symmetry (one
    per Aut-orbit); the second over orbit representatives of the first
    face's stabilizer. Weights are the sizes of the Aut-orbits of the
    ordered pairs; their total must be (number of faces)^2.
    """
    aut = cc.aut
    nfaces = sum(len(r) for r in cc.faces_by_type.values())
    reps_J = []
    seen = set()
    for J in cc.fundamental_subsets():
        orbit = {tuple(sorted(m[l] for l in J)) for m in aut.diagram_maps}
        key = min(orbit)
        if key not in seen:
            seen.add(key)
            reps_J.append(J)
    seeds, weights = [], []
    for J in reps_J:
        sigma = cc.fundamental_face(J)
        st = stabilizer(cc, Subcomplex(cc, [sigma.vertices]))
        orbit_sigma = aut.order // st.order
        for tau, size in face_orbit_reps(cc, st):
            seeds.append([sigma.vertices, tau])
            weights.append(orbit_sigma * size)
    verdicts, distinct = judge_seeds(cc, seeds)
    counts: Counter = Counter()
    weighted: Counter = Counter()
    bad = []
    for s, wgt, v in zip(seeds, weights, verdicts):
        counts[v.kind] += 1
        weighted[v.kind] += wgt
        if v.kind == COUNTEREXAMPLE:
            bad.append({"seed": [list(f) for f in s], "verdict": v.to_json()})
    return SweepResult(cc.type_label, "exhaustive", len(seeds), distinct, dict(counts),
                       dict(weighted), sum(weights), nfaces * nfaces, bad)


def random_face(cc: CoxeterComplex, rng: np.random.Generator) -> tuple[int, ...]:
    labels = list(cc.rs.labels)
    while True:
        pick = rng.integers(0, 2, size=len(labels))
        if pick.any():
            break
    J = [l for l, b in zip(labels, pick) if b]
    w = int(rng.integers(0, cc.weyl.order))
    cols = [cc.fundamental_index[l] for l in J]
    return tuple(sorted(int(x) for x in cc.weyl.verts_perm[w, cols]))


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator, reproducible across platforms."""
    return np.random.Generator(np.random.Philox(seed))


def sampled_sweep(cc: CoxeterComplex, samples: int, seed: int, max_faces: int = 4) -> SweepResult:
    rng = make_rng(seed)
    seeds = []
    for _ in range(samples):
        k = int(rng.integers(1, max_faces + 1))
        seeds.append([random_face(cc, rng) for _ in range(k)])
    verdicts, distinct = judge_seeds(cc, seeds)
    counts: Counter = Counter()
    bad = []
    for s, v in zip(seeds, verdicts):
        counts[v.kind] += 1
        if v.kind == COUNTEREXAMPLE:
            bad.append({"seed": [list(f) for f in s], "verdict": v.to_json()})
    return SweepResult(cc.type_label, "sampled", len(seeds), distinct, dict(counts),
                       dict(counts), None, None, bad, seed, max_faces)
