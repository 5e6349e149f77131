"""Smoke test for the knot_slope_py extension module."""

import cmath

import knot_slope_py as ks


def close(a, b, tol):
    return abs(a - b) <= tol


def test_trefoil_slope():
    trefoil = ks.Presentation.bundled("trefoil")
    assert trefoil.generators == ["u", "v"]
    for m in (2.0, 3.0, 1 + 1j):
        family = ks.riley_family(trefoil, m)
        assert len(family) == 1
        assert close(family[0].slope(), -6.0, 1e-8)
        assert family[0].verdict() == "admissible"


def test_abelian_slope_vanishes():
    trefoil = ks.Presentation("gens: u v ; rel: u v u = v u v ; meridian: u ; longitude: v u v^-1 u v u^-3")
    assert abs(ks.abelian(trefoil, 2.0).slope()) <= 1e-10


def test_figure_eight_routes_agree():
    fig8 = ks.Presentation.bundled("figure-eight")
    a = ks.compute_apoly(fig8)
    assert a == ks.Polynomial("L^2*M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + M^4").canonical()
    assert "4" in a.ideal_slopes() and "-4" in a.ideal_slopes()
    m = cmath.rect(1.4, 0.5)
    for rep in ks.riley_family(fig8, m):
        big_m, big_l = rep.boundary()
        s = rep.slope()
        g = a.log_gauss(big_l, big_m)
        assert abs(s - g) <= 1e-6 * abs(s)
        x = m + 1 / m
        assert close(s * s, 4 * (2 * x * x - 5) ** 2 / ((x * x - 5) * (x * x - 1)), 1e-6 * abs(s * s))


def test_conjugation_and_errors():
    trefoil = ks.Presentation.bundled("trefoil")
    rep = ks.riley_family(trefoil, 2.0)[0]
    conj = rep.conjugate([[2, 1], [3, 2]])
    assert close(conj.slope(), rep.slope(), 1e-7)
    try:
        ks.Polynomial("0")
    except ValueError:
        pass
    else:
        raise AssertionError("zero polynomial accepted")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
