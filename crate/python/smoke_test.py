"""Smoke test for the dp2 extension module.

Build and run:
    cargo build -p dp2-python --release
    cp target/release/libdp2.so python/dp2.so
    python3 python/smoke_test.py
"""

import sys

import dp2


def main() -> int:
    for case in ("nonsquare", "square-d"):
        model = dp2.PicardModel(case)
        curves = model.curves()
        assert len(curves) == 56, len(curves)
        assert model.anticanonical() == [-1] * 7 + [3]
        gram = model.gram()
        assert gram == [[-1 if i == j else 0 for j in range(8)] for i in range(7)] + [[0] * 7 + [1]]
        for g in model.generators():
            m = model.galois_matrix(g)
            assert len(m) == 8 and all(len(r) == 8 for r in m)
        inv = model.invariants()
        print(f"{case}: {len(curves)} curves, invariant rank {inv['rank']}, mu {inv['mu']}")
        if case == "square-d":
            assert inv["rank"] == 2 and inv["mu"] == [0] * 6 + [-1, 1]
            assert inv["orbit_index"] == "2"
        else:
            assert inv["rank"] == 1

    report = dp2.Arrangement.example().verify()
    assert report["passed"], report
    assert report["bidegree"] == (8, 4)
    family = dp2.Arrangement.example().family(5).verify()
    assert family["passed"] and family["bidegree"] == (10, 4)
    print(f"example: {report['equation']}")

    bad = dp2.Arrangement.from_config(
        "[arrangement]\nprime = 13\ng = 2\nn = 2\n"
        'a_factors = ["x+4*z", "x-3*z"]\nb_factors = ["y+4*z", "y-3*z"]\n'
        'f = "3*z*(x+y+z)"\n'
    ).verify()
    assert not bad["passed"] and not bad["conditions"]["v"], bad

    r = dp2.residue("x+4*z", "y^2+y*z+z^2", "x+4*z")
    assert not r["trivial"] and r["v_a"] == 1
    assert dp2.residue("x+y", "x+y", "x+y")["trivial"]

    try:
        dp2.PicardModel("bogus")
    except ValueError:
        pass
    else:
        raise AssertionError("bogus case accepted")

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
