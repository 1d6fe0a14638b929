"""Compare the compiled and pure-Python Cayley-graph kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--skip-slow]

Each row enumerates one group from scratch with both backends and checks
that the outputs are identical.
"""

import argparse
import time

from coverwreath import kernels
from coverwreath.ff import Field, prime_power
from coverwreath.grp import GroupCtx

CASES = [(2, 13, 1), (2, 25, 2), (3, 4, 3), (3, 5, 1), (3, 4, 1)]
SLOW = {(3, 5, 1), (3, 4, 1)}


def args_for(ctx):
    addt, mult = ctx._tables
    return ([ctx.encode(g) for g in ctx.generators], ctx.encode(ctx.identity), ctx.n, ctx.q,
            addt, mult, list(ctx.scalars), ctx.order + 1)


def best_of(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-slow", action="store_true", help="skip the largest groups")
    opts = ap.parse_args()
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled kernels unavailable; only the Python fallback will run")
    print(f"{'group':>12} {'order':>8} " + " ".join(f"{b:>10}" for b in backends) + "  speedup")
    for n, q, m in CASES:
        if opts.skip_slow and (n, q, m) in SLOW:
            continue
        p, k = prime_power(q)
        ctx = GroupCtx(Field(p, k), n, m)
        args = args_for(ctx)
        times, outs = {}, {}
        for name, (_, bfs) in backends.items():
            times[name], outs[name] = best_of(bfs, args, opts.repeat if name == "cython" else 1)
        assert all(o == outs["python"] for o in outs.values()), "backends disagree"
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        label = f"{'SL' if m == 1 else 'PSL'}{n}({q})"
        print(f"{label:>12} {ctx.order:>8} " + " ".join(f"{times[b]:>9.3f}s" for b in backends)
              + f"  {speedup:6.1f}x")


if __name__ == "__main__":
    main()
