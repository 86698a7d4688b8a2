"""Compare the numba and numpy element-table kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is run on the element table of a few discriminant forms; numba
is warmed up once before timing so compilation is excluded.  Results are
also checked for equality.
"""
import argparse
import time

import numpy as np

from k3fm import accel
from k3fm.lattice import discriminant_form, parse_lattice

FORMS = ["<9998>", "<12>+<-20>+<6>", "U(6)+<-30>", "<4>+<4>+<4>+<-12>"]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(D):
    counts = np.array(D.factors, dtype=np.int64)
    steps = np.ones(D.rank, dtype=np.int64)
    Qn, Bn = D.scaled_tables()
    s = D.scale
    E = accel.backends()["numpy"].grid(counts, steps)
    imgs = E[1:3]
    tgt = np.zeros(imgs.shape[0], dtype=np.int64)
    return {
        "grid": lambda k: k.grid(counts, steps),
        "q_table": lambda k: k.q_table(E, Qn, Bn, s),
        "pair_table": lambda k: k.pair_table(E, E[1], Bn, s),
        "order_table": lambda k: k.order_table(E, counts),
        "match_pairings": lambda k: k.match_pairings(E, imgs, tgt, Bn, s),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    kernels = accel.backends()
    if "numba" not in kernels:
        print("numba not available; nothing to compare")
        return
    print(f"{'form':22} {'|D|':>6} {'kernel':15} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for text in FORMS:
        D, _ = discriminant_form(parse_lattice(text))
        for name, call in cases(D).items():
            ref = call(kernels["numpy"])
            got = call(kernels["numba"])  # warm-up and compile
            assert np.array_equal(ref, got), (text, name)
            t_np = best_of(lambda: call(kernels["numpy"]), args.repeat)
            t_nb = best_of(lambda: call(kernels["numba"]), args.repeat)
            print(f"{text:22} {D.order:6d} {name:15} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} "
                  f"{t_np / t_nb:8.2f}")


if __name__ == "__main__":
    main()
