#!/usr/bin/env python3
"""Smoke test for the spr_py extension module.

Builds expect `cargo build -p spr-py` (or --release) to have produced the
cdylib; the module is loaded straight out of the target directory.
"""

import shutil
import sys
import sysconfig
import tempfile
from fractions import Fraction
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libspr_py.so", "libspr_py.dylib", "spr_py.dll")
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p spr-py [--release]")
    stage = Path(tempfile.mkdtemp(prefix="spr_py_"))
    shutil.copy2(built, stage / f"spr_py{suffix}")
    sys.path.insert(0, str(stage))
    import spr_py

    return spr_py


def main():
    spr = load_module()
    checks = 0

    def ok(name, cond):
        nonlocal checks
        if not cond:
            sys.exit(f"FAIL {name}")
        checks += 1
        print(f"ok {name}")

    # instance loading and counting
    c4 = spr.Instance.load("4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\ns 0\nt 2\n")
    ok("c4 distance", c4.st_distance == 2)
    ok("c4 count", c4.count_shortest_paths() == 2)
    ok("c4 enumerate", c4.enumerate_shortest_paths() == [[0, 1, 2], [0, 3, 2]])
    ok("c4 validity", c4.is_st_shortest_path([0, 1, 2]) and not c4.is_st_shortest_path([0, 1, 3]))
    ok("c4 interval", c4.interval(0, 2) == [0, 1, 2, 3])

    # gadget chain closed forms
    chain = spr.gadget_chain(2, 3)
    ok("chain n", chain.n == 9)
    ok("chain d", chain.st_distance == 4)
    ok("chain count", chain.count_shortest_paths() == 9)
    ok("chain 4x4 count", spr.gadget_chain(4, 4).count_shortest_paths() == 256)

    # oracle
    ok("c4 neighbors", spr.k_step_neighbors(c4, [0, 1, 2], 1) == [[0, 3, 2]])
    seq = spr.shortest_reconfig_sequence(c4, [0, 1, 2], [0, 3, 2])
    ok("c4 oracle sequence", seq == [[0, 1, 2], [0, 3, 2]])
    c6 = spr.Instance.from_edges(6, [(i, (i + 1) % 6) for i in range(6)], 0, 3)
    ok("c6 k=1 blocked", spr.shortest_reconfig_sequence(c6, [0, 1, 2, 3], [0, 5, 4, 3], 1) is None)
    ok("c6 k=2 one step", len(spr.shortest_reconfig_sequence(c6, [0, 1, 2, 3], [0, 5, 4, 3], 2)) == 2)
    ok("c6 diameter infinite", spr.reconfig_diameter(c6, 1) is None)
    ok("c4 diameter", spr.reconfig_diameter(c4, 1) == 1)
    ok("c6 shortcut", len(spr.large_k_shortcut(c6, [0, 1, 2, 3], [0, 5, 4, 3], 3)) == 2)

    # hypercube: ones(s^t) = {1,3,4} example and tau optimality
    h = spr.hypercube_instance(5, 0b00101, 0b10011)
    ok("hypercube count", h.count_shortest_paths() == 6)
    paths = h.enumerate_shortest_paths()
    stages = spr.solve_hypercube(5, 0b00101, 0b10011, paths[0], paths[-1])
    ok("hypercube steps = tau", len(stages) - 1 == spr.kendall_tau([1, 3, 4], [4, 3, 1]) == 3)

    # permutation solver against a hand-checkable diagram
    sigma = [1, 3, 0, 5, 2, 6, 4]
    inst = spr.Instance.from_edges(
        7,
        [(i, j) for i in range(7) for j in range(i + 1, 7) if sigma[i] > sigma[j]],
        3,
        4,
    )
    pp = inst.enumerate_shortest_paths()
    verdict, ss = spr.solve_permutation(sigma, inst, pp[0], pp[0])
    ok("permutation trivial", verdict and ss == [pp[0]])

    # weakly modular on a path-of-triangles (chordal)
    tri = spr.Instance.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)], 0, 4)
    stages = spr.solve_weakly_modular(tri, [0, 1, 3, 4], [0, 2, 3, 4])
    ok("weakly modular", stages[0] == [0, 1, 3, 4] and stages[-1] == [0, 2, 3, 4])

    # line-graph reduction grows one-vertex differences to k vertices
    red, p2, q2 = spr.line_reduction(c4, [0, 1, 2], [0, 3, 2], 5)
    ok("line reduction spread", sum(a != b for a, b in zip(p2, q2)) == 5)
    ok("line reduction valid", red.is_st_shortest_path(p2) and red.is_st_shortest_path(q2))

    # graph power correspondence at the instance level
    c10 = spr.Instance.from_edges(10, [(i, (i + 1) % 10) for i in range(10)], 0, 5)
    sq = spr.graph_power(c10, 2)
    mapped = spr.power_map_path(c10, list(range(6)), 2)
    ok("power map", sq.is_st_shortest_path(mapped))

    # subdivision scales distances
    sub = spr.subdivide_uniform(c4, 2)
    ok("subdivision distance", sub.st_distance == 6)

    # cost variants with exact rationals
    unit = [(1, 1)] * 6
    ramp = [(i, 1) for i in range(1, 7)]
    out = spr.min_sum(c6, [0, 1, 2, 3], [0, 5, 4, 3], unit)
    ok("minsum unit", out["objective"] == Fraction(1))
    out = spr.min_max(c6, [0, 1, 2, 3], [0, 5, 4, 3], ramp)
    ok("minmax ramp", out["objective"] == Fraction(2))
    top1 = spr.min_top_l(c6, [0, 1, 2, 3], [0, 5, 4, 3], ramp, 1)
    ok("top-1 = minmax", top1["objective"] == Fraction(2))
    ok("reduc yes", spr.reduc_decide(c4, [0, 1, 2], [0, 3, 2]))
    ok("reduc no", not spr.reduc_decide(c6, [0, 1, 2, 3], [0, 5, 4, 3]))

    print(f"all {checks} smoke checks passed")


if __name__ == "__main__":
    main()
