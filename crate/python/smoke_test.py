"""Smoke test for the Python bindings.

Build first:  maturin develop -m crates/py/Cargo.toml   (or pip install ./crates/py)
Then run:     python python/smoke_test.py
"""

import wittmaps_py as wm


def main():
    g4 = wm.EnvElement("e1*e3 - e2^2 - e4")
    assert g4.degree() == 4
    e1, e2 = wm.EnvElement("e1"), wm.EnvElement("e2")
    assert str(e1.bracket(e2)) == "e3"
    assert str(e2 * e1) == "e1*e2 - e3"

    phi = wm.Morphism("phi")
    assert phi.eval(g4) == "y^3*z - y^2*z^2"
    assert phi.eval("e1*e5 - 4*e2*e4 + 3*e3^2 + 2*e6") == "0"
    assert wm.Morphism("lambda", "0").eval(g4) == "0"

    k = wm.Morphism("lambda").kernel(6)
    assert k["dimension"] == 4 and k["verified"]
    assert k["excluded"] == ["a", "a - 1"]
    assert [wm.Morphism("lambda", "1").kernel(n)["dimension"] for n in range(1, 7)] == [0, 0, 0, 1, 2, 5]

    assert wm.ad_power("e-1", 3, "e1*e3 - e2^2 - e4") == "12*e-1*e2 - 12*e0*e1 - 12*e1"
    assert wm.straighten("e2*e-1", "witt") == "e-1*e2 - 3*e1"

    s = wm.TwistedAlgebra("S")
    assert s.commutator("x", "y*z") == "2*y^2*z"
    assert s.is_normal("y^3*z - y^2*z^2")

    assert wm.hilbert("B", 8) == [1, 1, 2, 3, 5, 7, 10, 13, 17]
    assert wm.closed_form("Q") is not None

    r = wm.run_claim("claim-A4a")
    assert r["status"] == "pass", r
    assert wm.run_claim("remark-3-10", skip_witt=True)["status"] == "skipped"
    try:
        wm.run_claim("no-such-claim")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown claim accepted")
    try:
        wm.EnvElement("e0")
    except ValueError:
        pass
    else:
        raise AssertionError("e0 accepted in the positive part")

    assert len(wm.claim_ids()) == 28
    assert wm.geometry_report()["psi_f_matches"]
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
