"""Exact rational linear algebra, spherical angles and conic feasibility.

Points of a sphere are represented by unnormalized rational vectors: two
vectors denote the same point iff one is a positive multiple of the other.
Vertex norms are usually irrational but every squared cosine between two
rational vectors is rational, so angles are stored as (sign, cos^2) pairs and
compared without any floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import acos, gcd, isqrt, sqrt
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction (or int) coordinates

ZERO = Fraction(0)


def vec(coords: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in coords)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def norm2(u: Sequence):
    return dot(u, u)


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def neg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def canonical_ray(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the same open ray as ``v``.

    Signs are kept, so ``canonical_ray(-v) == -canonical_ray(v)``.
    """
    fr = [Fraction(a) for a in v]
    den = 1
    for a in fr:
        den = _lcm(den, a.denominator)
    ints = [int(a * den) for a in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("zero vector has no ray")
    return tuple(a // g for a in ints)


def primitive_line(v: Sequence) -> tuple[int, ...]:
    """Primitive integer normal of the line through ``v``; first nonzero entry positive."""
    r = canonical_ray(v)
    for a in r:
        if a != 0:
            return r if a > 0 else tuple(-b for b in r)
    raise AssertionError


def same_ray(u: Sequence, v: Sequence) -> bool:
    return canonical_ray(u) == canonical_ray(v)


def reflect(v: Sequence, r: Sequence) -> tuple:
    """Reflection of ``v`` in the hyperplane orthogonal to ``r`` (exact)."""
    c = Fraction(2 * dot(v, r), norm2(r))
    return tuple(Fraction(a) - c * b for a, b in zip(v, r))


def reflect_ray(v: Sequence[int], r: Sequence[int]) -> tuple[int, ...]:
    """Reflection of an integer ray, returned as a primitive ray."""
    rr = dot(r, r)
    k = 2 * dot(v, r)
    return canonical_ray(tuple(rr * a - k * b for a, b in zip(v, r)))


# --------------------------------------------------------------------------
# angles


_NAMED = {
    Fraction(1): "0",
    Fraction(3, 4): "pi/6",
    Fraction(1, 2): "pi/4",
    Fraction(1, 4): "pi/3",
    Fraction(0): "pi/2",
    Fraction(-1, 4): "2pi/3",
    Fraction(-1, 2): "3pi/4",
    Fraction(-3, 4): "5pi/6",
    Fraction(-1): "pi",
}


def sqrt_fraction(q: Fraction) -> Fraction | None:
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@total_ordering
@dataclass(frozen=True)
class ExactAngle:
    """A spherical angle in [0, pi] stored as sign of the cosine and cos^2.

    Smaller angles have larger signed cosine; ``0 < pi/3 < pi/2 < pi``.
    """

    cos_sign: int
    cos_squared: Fraction

    def __post_init__(self):
        if self.cos_sign not in (-1, 0, 1):
            raise ValueError("cos_sign must be -1, 0 or 1")
        q = Fraction(self.cos_squared)
        object.__setattr__(self, "cos_squared", q)
        if not 0 <= q <= 1:
            raise ValueError("cos_squared outside [0, 1]")
        if (self.cos_sign == 0) != (q == 0):
            raise ValueError("cos_sign is zero iff cos_squared is zero")

    @classmethod
    def from_cos(cls, c) -> "ExactAngle":
        c = Fraction(c)
        return cls((c > 0) - (c < 0), c * c)

    @classmethod
    def from_signed_cos_squared(cls, s) -> "ExactAngle":
        s = Fraction(s)
        return cls((s > 0) - (s < 0), abs(s))

    @property
    def signed_cos_squared(self) -> Fraction:
        return self.cos_sign * self.cos_squared

    def __lt__(self, other):
        if not isinstance(other, ExactAngle):
            return NotImplemented
        return self.signed_cos_squared > other.signed_cos_squared

    def cos(self) -> float:
        return self.cos_sign * sqrt(self.cos_squared)

    def radians(self) -> float:
        return acos(max(-1.0, min(1.0, self.cos())))

    def __str__(self) -> str:
        s = self.signed_cos_squared
        if s in _NAMED:
            return _NAMED[s]
        root = sqrt_fraction(self.cos_squared)
        sign = "-" if self.cos_sign < 0 else ""
        if root is not None:
            return f"arccos({sign}{root})"
        return f"arccos({sign}sqrt({self.cos_squared}))"

    def __repr__(self) -> str:
        return f"ExactAngle({self})"


ANGLE_0 = ExactAngle(1, Fraction(1))
ANGLE_PI_3 = ExactAngle(1, Fraction(1, 4))
ANGLE_PI_2 = ExactAngle(0, Fraction(0))
ANGLE_2PI_3 = ExactAngle(-1, Fraction(1, 4))
ANGLE_PI = ExactAngle(-1, Fraction(1))


def angle(u: Sequence, v: Sequence) -> ExactAngle:
    """Exact angle between the rays of ``u`` and ``v``."""
    nu, nv = norm2(u), norm2(v)
    if nu == 0 or nv == 0:
        raise ValueError("angle undefined for the zero vector")
    p = dot(u, v)
    return ExactAngle((p > 0) - (p < 0), Fraction(p * p) / (nu * nv))


# --------------------------------------------------------------------------
# elimination


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(a) for a in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence]) -> int:
    return len(row_reduce(vectors)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : <row, x> = 0 for every row}."""
    if ncols is None:
        ncols = len(rows[0])
    red, piv = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, piv):
            x[p] = -r[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Some solution of ``a x = b`` (exact), or None when inconsistent."""
    n = len(a[0])
    aug = [list(r) + [bb] for r, bb in zip(a, b)]
    red, piv = row_reduce(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r, p in zip(red, piv):
        x[p] = r[n]
    return tuple(x)


def project_out(v: Sequence, basis: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Orthogonal projection of ``v`` onto the complement of span(basis)."""
    if not basis:
        return vec(v)
    gram = [[Fraction(dot(p, q)) for q in basis] for p in basis]
    rhs = [Fraction(dot(p, v)) for p in basis]
    c = solve(gram, rhs)
    out = vec(v)
    for ci, p in zip(c, basis):
        out = tuple(o - ci * a for o, a in zip(out, p))
    return out


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [r[n:] for r in red]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[dot(r, c) for c in bt] for r in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(r, v) for r in a)


# --------------------------------------------------------------------------
# exact feasibility by phase-one simplex


def feasible_point(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Return x >= 0 with ``a x = b`` or None, by exact phase-one simplex.

    Pivoting follows Bland's rule (lowest-index entering and leaving
    variables), which excludes cycling.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    for i, (r, bb) in enumerate(zip(a, b)):
        r = [Fraction(x) for x in r]
        bb = Fraction(bb)
        if bb < 0:
            r, bb = [-x for x in r], -bb
        rows.append(r + [Fraction(int(i == j)) for j in range(m)] + [bb])
    if m == 0:
        return tuple([Fraction(0)] * n)
    # columns 0..n-1 original, n..n+m-1 artificial, last rhs
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * (n + m + 1)
    for r in rows:
        for j in range(n):
            cost[j] -= r[j]
        cost[-1] -= r[-1]
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[-1] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded; cannot happen in phase one
            raise AssertionError("unbounded phase-one objective")
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [x / piv for x in rows[i]]
        for k in range(m):
            if k != i and rows[k][enter] != 0:
                f = rows[k][enter]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, rows[i])]
        basis[i] = enter
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][-1]
    return tuple(x)


@dataclass(frozen=True)
class RationalCone:
    """Conic hull of finitely many rational rays."""

    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(vec(g) for g in self.generators))
        if any(is_zero(g) for g in self.generators):
            raise ValueError("zero generator")

    @property
    def dim(self) -> int:
        return len(self.generators[0]) if self.generators else 0

    def is_pointed(self) -> bool:
        """No nonzero v with v and -v both in the cone."""
        if not self.generators:
            return True
        n = self.dim
        a = [[g[i] for g in self.generators] for i in range(n)]
        a.append([Fraction(1)] * len(self.generators))
        b = [Fraction(0)] * n + [Fraction(1)]
        return feasible_point(a, b) is None

    def contains(self, x: Sequence) -> bool:
        if is_zero(x):
            return True
        if not self.generators:
            return False
        a = [[g[i] for g in self.generators] for i in range(len(x))]
        return feasible_point(a, list(x)) is not None


def relint_meets_cone(face_rays: Sequence[Sequence], cone: RationalCone, *,
                      require_pointed: bool = True) -> bool:
    """Does the open cone spanned by ``face_rays`` meet ``cone``?

    Decides whether some sum(l_i * ray_i) with all l_i > 0 is a nonnegative
    combination of the cone generators. Linear independence of the rays
    makes that sum nonzero automatically.
    """
    rays = [vec(r) for r in face_rays]
    if not rays:
        raise ValueError("empty face")
    if rank(rays) != len(rays):
        raise ValueError("face rays are linearly dependent")
    if require_pointed and not cone.is_pointed():
        raise ValueError("cone is not pointed")
    if not cone.generators:
        return False
    n = len(rays[0])
    k = len(rays)
    # l_i = 1 + t_i with t >= 0 (homogeneity lets us demand l_i >= 1)
    a = [[rays[j][i] for j in range(k)] + [-g[i] for g in cone.generators] for i in range(n)]
    b = [-sum(r[i] for r in rays) for i in range(n)]
    return feasible_point(a, b) is not None
