"""Smoke test for the trielliptic_py extension.

Build and install first:
    pip install maturin
    maturin build --release -m crates/trielliptic-py/Cargo.toml
    pip install target/wheels/trielliptic_py-*.whl
"""

import math
import sys

import trielliptic_py as t


def main() -> int:
    fams = t.maximal_families("negative")
    assert len(fams) == 7, fams
    assert sorted(f["label"] for f in fams) == [f"U{i}" for i in range(1, 8)]

    dims = {r["label"]: r["dim"] for r in t.dimension_table()}
    assert [dims[k] for k in ["alpha", "beta", "gamma", "eta", "delta"]] == [4, 1, 2, 3, 1]

    f = t.BiForm("1 0 3 0\n1 1 0 3\n1 2 0 0\n1 1 1 1\n")
    assert f.euler_holds()
    assert f.classify()["family"] == "N2"
    a = f.analyze(["1", "0", "1", "0", "0"])
    assert "N2" in a["matching_labels"], a

    check = t.verify_family("U4", samples=10, seed=7)
    assert check["passed"] == 10, check["failures"]

    rhos = [t.FiniteQuadraticForm.sigma(n).picard_rank()["rho"] for n in (1, 2, 3)]
    assert rhos == [3, 4, 3], rhos
    s1 = t.FiniteQuadraticForm.sigma(1)
    re, im = s1.gauss_sum(-3)
    assert abs(re) < 1e-9 and abs(im + math.sqrt(27)) < 1e-9
    a8 = t.Lattice.catalog("A8").discriminant_form()
    assert a8.order() == 9 and s1.is_isomorphic(a8.negate())

    m = t.Lattice.catalog("M(D16E8)")
    assert m.rank() == 24 and m.det() == "1" and m.root_system() == "E8+D16"
    assert t.eichler_orbit_check(6)["holds"]

    c = t.census(3)
    assert (c["curves"], c["type_iii"]) == (10, 2)

    assert t.main(["git", "strata-dims", "--no-timing", "--out", "/dev/null"]) == 0
    assert t.main(["no-such-command"]) == 2

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
