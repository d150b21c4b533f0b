"""Time the numba kernels against the numpy fallback on the same tables.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--json]

Both backends are called directly, so one process covers both. Outputs are
compared for equality before timing.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from regcomplex import _kernels as kern
from regcomplex.catalog import universal_polytope
from regcomplex.permgroup import PermGroup, from_cycles


def _cases():
    # symmetric groups S_6 and S_7, the hypercube group B_4 and H_3
    for n in (6, 7):
        g = PermGroup(n, [from_cycles("(0 1)", n),
                          from_cycles("(" + " ".join(map(str, range(n))) + ")", n)])
        yield f"S{n}", g, PermGroup(n, [from_cycles("(0 1)", n), from_cycles("(1 2)", n)])
    for sym in ((4, 3, 3), (3, 5)):
        sys_ = universal_polytope(sym)
        yield "{" + ",".join(map(str, sym)) + "}", sys_.gamma, sys_.gamma_i(0)


def _args(t):
    return t.elems, t.base, t.pows, t.sorted_keys, t.key_pos


def run(repeat):
    rng = np.random.default_rng(0)
    rows = []
    for name, group, sub in _cases():
        t = group.table
        m = t.order
        a = rng.integers(0, m, 200_000).astype(np.int64)
        b = rng.integers(0, m, 200_000).astype(np.int64)
        look = t.elems[rng.integers(0, m, 50_000)]
        sub_idx = np.ascontiguousarray(np.sort(t.index_of(sub.table.elems)), dtype=np.int64)
        ops = {
            "mul": (lambda f: f(*_args(t), a, b), kern.np_mul,
                    getattr(kern, "nb_mul", None)),
            "lookup": (lambda f: f(*_args(t), look), kern.np_lookup,
                       getattr(kern, "nb_lookup", None)),
            "coset_labels": (lambda f: f(*_args(t), sub_idx), kern.np_coset_labels,
                             getattr(kern, "nb_coset_labels", None)),
        }
        for op, (call, np_f, nb_f) in ops.items():
            row = {"group": name, "order": m, "op": op}
            row["numpy_s"] = min(timeit.repeat(lambda: call(np_f), number=1, repeat=repeat))
            if nb_f is not None:
                ref, got = call(np_f), call(nb_f)  # also triggers compilation
                same = all(np.array_equal(x, y) for x, y in zip(
                    ref if isinstance(ref, tuple) else (ref,),
                    got if isinstance(got, tuple) else (got,)))
                if not same:
                    raise SystemExit(f"backend mismatch: {name} {op}")
                row["numba_s"] = min(timeit.repeat(lambda: call(nb_f), number=1, repeat=repeat))
                row["speedup"] = row["numpy_s"] / row["numba_s"]
            rows.append(row)
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    rows = run(args.repeat)
    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
        return
    print(f"numba available: {kern.HAVE_NUMBA}")
    print(f"{'group':<10}{'order':>7} {'op':<13}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}")
    for r in rows:
        nb = f"{1e3 * r['numba_s']:10.2f}" if "numba_s" in r else f"{'-':>10}"
        sp = f"{r['speedup']:9.1f}" if "speedup" in r else f"{'-':>9}"
        print(f"{r['group']:<10}{r['order']:>7} {r['op']:<13}{1e3 * r['numpy_s']:10.2f}{nb}{sp}")


if __name__ == "__main__":
    main()
