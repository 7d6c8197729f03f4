"""Timing comparison of the numba and pure numpy kernel paths.

Builds deterministic mid-size instances (real nets, real kernel bases),
warms the jit up, then times each kernel on both implementations and
prints a table with speedups.  Outputs are checked for bitwise parity
before any number is reported.

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --m 10 --s 3 --repeats 7
"""

import argparse
import time

import numpy as np

from vnet.discrepancy import _weight_tables, kernel_basis
from vnet.fields import FieldTower
from vnet.kernels import numpy_impl
from vnet.nets import AlphaVector, vandermonde_net

try:
    from vnet.kernels import _numba as numba_impl
except ImportError:
    numba_impl = None


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _random_alpha(tower, s, rng):
    ext = tower.ext
    n = tower.q**tower.m
    # nonzero first component keeps the kernel shape typical
    encs = [rng.randrange(1, n)] + [rng.randrange(n) for _ in range(s - 1)]
    return AlphaVector(tower, tuple(ext.decode(e) for e in encs))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--m", type=int, default=8, help="weight_terms kernel degree")
    ap.add_argument("--s", type=int, default=3, help="weight_terms dimensions")
    ap.add_argument("--points-m", type=int, default=12, dest="pm")
    ap.add_argument("--points-s", type=int, default=6, dest="ps")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = __import__("random").Random(7)
    q = args.q

    # instance 1: point generation at q^pm points, ps dimensions
    tw_pts = FieldTower.from_q(q, args.pm)
    mats = vandermonde_net(_random_alpha(tw_pts, args.ps, rng)).mats
    field = tw_pts.base
    add_t, mul_t = field.add_table, field.mul_table

    # instance 2: weight enumeration over a real kernel basis
    tw = FieldTower.from_q(q, args.m)
    kb = kernel_basis(_random_alpha(tw, args.s, rng))
    basis = np.ascontiguousarray(kb.basis)
    inv_qpow, sin_inv = _weight_tables(q, args.m)
    kf = kb.field
    n_terms = q**basis.shape[0] - 1

    jobs = [
        (
            f"net_numerators q={q} m={args.pm} s={args.ps} ({q**args.pm} pts)",
            lambda impl: impl.net_numerators(mats, q, add_t, mul_t),
        ),
        (
            f"weight_terms   q={q} m={args.m} s={args.s} ({n_terms} terms)",
            lambda impl: impl.weight_terms(
                basis, q, args.m, args.s,
                kf.add_table, kf.mul_table, kf.sub_table,
                inv_qpow, sin_inv, 1,
            ),
        ),
    ]

    impls = [("numpy", numpy_impl)]
    if numba_impl is not None:
        impls.append(("numba", numba_impl))
        for _, fn in jobs:
            fn(numba_impl)  # jit compile outside the timers
    else:
        print("numba unavailable, timing the numpy path only")

    print(f"{'kernel':<50} " + "".join(f"{name:>12} " for name, _ in impls)
          + ("speedup" if numba_impl is not None else ""))
    for label, fn in jobs:
        outs = [fn(impl) for _, impl in impls]
        for other in outs[1:]:
            assert np.array_equal(outs[0], other), f"parity broken: {label}"
        times = [_best_of(lambda i=impl: fn(i), args.repeats) for _, impl in impls]
        row = f"{label:<50} " + "".join(f"{t * 1e3:>10.2f}ms " for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
