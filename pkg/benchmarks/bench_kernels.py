"""Compare the compiled kernels with the numpy fallback on real complexes.

    python benchmarks/bench_kernels.py [--types f4 e6] [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from chamberworks import _fallback
from chamberworks.center import make_rng, random_face
from chamberworks.complex import build_complex

try:
    from chamberworks import _kernels
except ImportError:
    _kernels = None


def _cases(cc, count: int, seed: int):
    rng = make_rng(seed)
    seeds = []
    for _ in range(count):
        verts = sorted({v for _ in range(2) for v in random_face(cc, rng)})
        seeds.append(np.asarray(verts, dtype=np.int64))
    return seeds


def bench(type_label: str, repeat: int, count: int) -> None:
    cc = build_complex(type_label)
    signs = np.ascontiguousarray(cc.signs, dtype=np.int8)
    seeds = _cases(cc, count, seed=1)
    table = np.ascontiguousarray(cc.weyl.verts_perm.astype(np.int32))
    masks = [_fallback.hull_mask(signs, s) for s in seeds[:8]]
    cols = np.arange(min(3, table.shape[1]), dtype=np.int64)
    impls = {"numpy": _fallback}
    if _kernels is not None:
        impls["cython"] = _kernels
        for s in seeds:
            assert np.array_equal(_kernels.hull_mask(signs, s), _fallback.hull_mask(signs, s))
        for m in masks:
            assert np.array_equal(_kernels.rows_into(table, cols, m), _fallback.rows_into(table, cols, m))
    print(f"{cc.type_label}: {signs.shape[0]} walls, {signs.shape[1]} vertices, |W| = {table.shape[0]}")
    for name, mod in impls.items():
        t_hull = min(timeit.repeat(lambda: [mod.hull_mask(signs, s) for s in seeds],
                                   number=1, repeat=repeat)) / len(seeds)
        t_rows = min(timeit.repeat(lambda: [mod.rows_into(table, cols, m) for m in masks],
                                   number=1, repeat=repeat)) / len(masks)
        print(f"  {name:7s} hull_mask {t_hull * 1e6:10.1f} us   rows_into {t_rows * 1e6:10.1f} us")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--types", nargs="+", default=["b3", "f4", "e6"])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--count", type=int, default=200)
    args = p.parse_args()
    if _kernels is None:
        print("compiled kernels not built; timing the numpy fallback only")
    for t in args.types:
        bench(t, args.repeat, args.count)


if __name__ == "__main__":
    main()
