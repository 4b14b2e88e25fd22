"""Compare the numba and numpy row reduction kernels.

Two workloads: random dense matrices over F_p, and the actual hot loop,
``ad e`` on gl(m|n) for the largest sweep instances.  Also times one
end-to-end ``verify_instance`` call under each backend in a subprocess,
since the backend is fixed at import time.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from kwmod import _kernels
from kwmod.fp_linalg import inverse_table
from kwmod.partitions import PartitionPair
from kwmod.superalgebra import AlgebraContext, ad, nilpotent_e


def best_of(fn, A, p, inv, repeat):
    times = []
    for _ in range(repeat):
        work = A.copy()
        t0 = time.perf_counter()
        fn(work, p, inv)
        times.append(time.perf_counter() - t0)
    return min(times)


def ad_matrix(m, n, r, q, p):
    ctx = AlgebraContext(m, n, p)
    e = nilpotent_e(ctx, PartitionPair.of(r, q))
    return ad(e)(np.eye(ctx.dim, dtype=np.int64)).T % p


END_TO_END = """
import time
from kwmod import _kernels
from kwmod.kw import verify_instance
from kwmod.partitions import PartitionPair
from kwmod.superalgebra import AlgebraContext
pp = PartitionPair.of((3, 2), (2, 1))
verify_instance(AlgebraContext(5, 3, 5), pp)  # warm up / compile
t0 = time.perf_counter()
verify_instance(AlgebraContext(5, 3, 5), pp)
print(_kernels.active_backend(), time.perf_counter() - t0)
"""


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        sys.exit("numba is not importable")

    rng = np.random.default_rng(0)
    cases = []
    for size in (32, 64, 128, 256):
        cases.append((f"random {size}x{size} p=7", rng.integers(0, 7, size=(size, size)), 7))
    cases.append(("ad e, gl(4|3) (3,1|2,1)", ad_matrix(4, 3, (3, 1), (2, 1), 5), 5))
    cases.append(("ad e, gl(5|3) (3,2|2,1)", ad_matrix(5, 3, (3, 2), (2, 1), 5), 5))
    cases.append(("ad e, gl(4|4) (4|4)", ad_matrix(4, 4, (4,), (4,), 3), 3))

    # compile once outside the timings
    _kernels.rref_numba(np.eye(2, dtype=np.int64), 3, inverse_table(3))

    print(f"{'workload':32s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    for name, A, p in cases:
        A = np.ascontiguousarray(A, dtype=np.int64)
        inv = inverse_table(p)
        t_np = best_of(_kernels.rref_numpy, A, p, inv, args.repeat)
        t_nb = best_of(_kernels.rref_numba, A, p, inv, args.repeat)
        print(f"{name:32s} {t_np * 1e3:11.2f} {t_nb * 1e3:11.2f} {t_np / t_nb:7.1f}x")

    print("\nverify_instance gl(5|3) (3,2|2,1), p=5:")
    for flag in ("0", "1"):
        env = dict(os.environ, KWMOD_NO_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"  {backend:6s} {float(secs) * 1e3:9.1f} ms")


if __name__ == "__main__":
    main()
