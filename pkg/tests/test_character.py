from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratho.character import (
    ConcordanceDatum,
    FlatFormDatum,
    TwistedFlatFormDatum,
    constant_concordance,
    decide_concordance,
    line_datum,
    line_quotient,
    linear_concordance,
    preset_twistorial,
    reverse_concordance,
    twisted_ku_bundle,
    twisted_ku_quotient,
    twisted_linear_concordance,
    verify_concordance,
    verify_flat,
    verify_twisted_flat,
)
from ratho.dgca import DGCA, check_d_squared
from ratho.linfty import brackets_from_ce, ce_from_brackets
from ratho.minimal_model import RelativeExtension, cofiber
from ratho.simplicial_forms import SimplexAlgebra, fiber_integrate
from ratho.twisted_derham import (
    TwistedComplex,
    twisted_cohomology,
    twisted_d,
    twisted_is_exact,
)


def _sphere3():
    return DGCA([("w3", 3)])


def _torus3():
    return DGCA([("x", 1), ("y", 1), ("z", 1)])


def _s4_forms(sign):
    A = DGCA([("G4", 4), ("G7", 7)])
    g = A.gens
    return DGCA(g, d={"G7": sign * g.monomial({"G4": 2})})


def _s4_coeffs():
    A = DGCA([("w4", 4), ("w7", 7)])
    g = A.gens
    return DGCA(g, d={"w7": -g.monomial({"w4": 2})})


def _cofiber_algebra():
    A = DGCA([("f2", 2), ("h3", 3), ("w4", 4), ("w7", 7)])
    g = A.gens
    return DGCA(g, d={
        "h3": g.gen("w4") - g.monomial({"f2": 2}),
        "w7": -g.monomial({"w4": 2}),
    })


def _su2_ce():
    A = DGCA([("th1", 1), ("th2", 1), ("th3", 1)])
    g = A.gens
    return DGCA(g, d={
        "th1": -g.gen("th2") * g.gen("th3"),
        "th2": -g.gen("th3") * g.gen("th1"),
        "th3": -g.gen("th1") * g.gen("th2"),
    })


def _ku_target():
    A = DGCA([("H3", 3), ("F1", 1), ("F3", 3), ("F5", 5)])
    g = A.gens
    return DGCA(g, d={
        "F3": g.gen("H3") * g.gen("F1"),
        "F5": g.gen("H3") * g.gen("F3"),
    })


def _ku_datum(target, images):
    bundle = twisted_ku_bundle(2)
    twist = FlatFormDatum(bundle.base, target, {"h3": target.gen("H3")})
    assignment = dict(images)
    assignment["h3"] = target.gen("H3")
    return TwistedFlatFormDatum(bundle, twist, assignment)


def test_flat_line_closed_form_passes():
    omega = _sphere3()
    F = line_datum(omega, 2, 2 * omega.gen("w3"))
    assert verify_flat(F).passed


def test_flat_line_nonclosed_image_fails():
    A = DGCA([("a1", 1), ("b2", 2)])
    g = A.gens
    omega = DGCA(g, d={"a1": g.gen("b2")})
    F = line_datum(omega, 0, omega.gen("a1"))
    rep = verify_flat(F)
    assert not rep.passed
    assert rep.failures == [("c1", -omega.gen("b2"))]


def test_flat_sphere_valued_passes():
    coeffs = _s4_coeffs()
    omega = _s4_forms(-1)
    F = FlatFormDatum(coeffs, omega, {"w4": omega.gen("G4"),
                                      "w7": omega.gen("G7")})
    assert verify_flat(F).passed


def test_flat_sphere_sign_mismatch_residual():
    coeffs = _s4_coeffs()
    omega = _s4_forms(+1)
    F = FlatFormDatum(coeffs, omega, {"w4": omega.gen("G4"),
                                      "w7": omega.gen("G7")})
    rep = verify_flat(F)
    assert not rep.passed
    assert rep.failures == [("w7", -2 * omega.monomial({"G4": 2}))]


def test_flat_datum_rejects_foreign_morphism():
    omega = _sphere3()
    other = _torus3()
    F = line_datum(omega, 2, omega.gen("w3"))
    with pytest.raises(ValueError):
        FlatFormDatum(line_datum(other, 0, other.gen("x")).coefficients,
                      omega, F.morphism)


def test_maurer_cartan_agrees_with_bracket_reconstruction():
    # the same assignment verifies identically over the CE presentation
    # and over its structure-constant roundtrip
    A = _su2_ce()
    A2 = ce_from_brackets(brackets_from_ce(A))
    omega = _torus3()
    flat = {"th1": omega.gen("x"), "th2": omega.gen("x"),
            "th3": 2 * omega.gen("x")}
    curved = {"th1": omega.gen("x"), "th2": omega.gen("y"),
              "th3": omega.gen("z")}
    for images in (flat, curved):
        r1 = verify_flat(FlatFormDatum(A, omega, images))
        r2 = verify_flat(FlatFormDatum(A2, omega, images))
        assert r1.passed == r2.passed
        assert r1.failures == r2.failures
    assert verify_flat(FlatFormDatum(A, omega, flat)).passed
    rep = verify_flat(FlatFormDatum(A, omega, curved))
    assert [n for n, _ in rep.failures] == ["th1", "th2", "th3"]


def test_twisted_ku_flat_passes():
    omega = _ku_target()
    T = _ku_datum(omega, {"f1": omega.gen("F1"), "f3": omega.gen("F3"),
                          "f5": omega.gen("F5")})
    rep = verify_twisted_flat(T)
    assert rep.sullivan.ok
    assert rep.chain_failures == []
    assert rep.triangle_failures == []
    assert rep.passed


def test_twisted_triangle_violation_names_h3():
    omega = _ku_target()
    bundle = twisted_ku_bundle(2)
    twist = FlatFormDatum(bundle.base, omega, {"h3": omega.gen("H3")})
    T = TwistedFlatFormDatum(bundle, twist, {
        "h3": omega.gen("F3"),
        "f1": omega.gen("F1"), "f3": omega.gen("F3"),
        "f5": omega.gen("F5")})
    rep = verify_twisted_flat(T)
    assert not rep.passed
    assert [n for n, _ in rep.triangle_failures] == ["h3"]


def test_twisted_sullivan_leg_failure():
    base = DGCA([("h3", 3)])
    total = DGCA([("h3", 3), ("p1", 1), ("q1", 1)])
    g = total.gens
    total = DGCA(g, d={"p1": g.gen("p1") * g.gen("q1")})
    bundle = RelativeExtension(base, total)
    omega = _sphere3()
    twist = FlatFormDatum(base, omega, {"h3": omega.gen("w3")})
    T = TwistedFlatFormDatum(bundle, twist, {
        "h3": omega.gen("w3"), "p1": omega.zero(), "q1": omega.zero()})
    rep = verify_twisted_flat(T)
    assert not rep.passed
    assert not rep.sullivan.ok
    assert "p1" in rep.sullivan.cycle
    assert rep.chain_failures == [] and rep.triangle_failures == []


def test_constant_concordance_passes():
    omega = _sphere3()
    F = line_datum(omega, 2, omega.gen("w3"))
    ccd = constant_concordance(F)
    assert ccd.f0 is F and ccd.f1 is F
    assert verify_concordance(ccd).passed


def test_endpoint_mismatch_names_ev1():
    omega = _sphere3()
    f0 = line_datum(omega, 2, omega.gen("w3"))
    f1 = line_datum(omega, 2, 2 * omega.gen("w3"))
    cyl = constant_concordance(f0).cylinder
    ccd = ConcordanceDatum(cyl, f0, f1,
                           {"c3": cyl.inclusion(omega.gen("w3"))})
    rep = verify_concordance(ccd)
    assert not rep.passed
    assert [(w, n) for w, n, _ in rep.endpoint_failures] == [("ev1", "c3")]
    assert rep.endpoint_failures[0][2] == omega.gen("w3")


def test_linear_concordance_with_zero_witness():
    omega = _sphere3()
    F = line_datum(omega, 2, omega.gen("w3"))
    ccd = linear_concordance(F, F, h=omega.zero())
    assert verify_concordance(ccd).passed


def test_linear_concordance_cofiber_witness_extraction():
    omega = _cofiber_algebra()
    f0 = line_datum(omega, 3, omega.monomial({"f2": 2}))
    f1 = line_datum(omega, 3, omega.gen("w4"))
    ccd = linear_concordance(f0, f1)
    assert verify_concordance(ccd).passed
    back = fiber_integrate(ccd.cylinder, ccd.image("c4"))
    assert back == omega.gen("h3")


def test_linear_concordance_refusals():
    omega = _sphere3()
    f0 = line_datum(omega, 2, omega.gen("w3"))
    f1 = line_datum(omega, 2, 2 * omega.gen("w3"))
    with pytest.raises(ValueError, match="no concordance"):
        linear_concordance(f0, f1)
    cof = _cofiber_algebra()
    g0 = line_datum(cof, 3, cof.monomial({"f2": 2}))
    g1 = line_datum(cof, 3, 2 * cof.monomial({"f2": 2}))
    with pytest.raises(ValueError, match="dh"):
        linear_concordance(g0, g1, h=cof.gen("h3"))


def test_reverse_concordance():
    omega = _cofiber_algebra()
    f0 = line_datum(omega, 3, omega.monomial({"f2": 2}))
    f1 = line_datum(omega, 3, omega.gen("w4"))
    ccd = linear_concordance(f0, f1)
    rev = reverse_concordance(ccd)
    assert rev.f0 is f1 and rev.f1 is f0
    assert verify_concordance(rev).passed
    back = reverse_concordance(rev)
    assert back.morphism == ccd.morphism


def test_line_quotient_sphere():
    omega = _sphere3()
    res = line_quotient(omega, 2, range(-2, 3))
    assert res.class_count == 5
    assert res.h_dim == 1
    assert all(len(m) == 1 for m in res.classes.values())
    assert res.concordances == 0
    assert res.refusals == 10


def test_line_quotient_interval_contractible():
    omega = SimplexAlgebra(1).algebra
    res = line_quotient(omega, 0, (-1, 0, 1), polybound=3)
    assert res.class_count == 1
    assert sum(len(m) for m in res.classes.values()) == 27
    assert res.concordances == 26
    assert res.witness_checks == 26
    assert res.h_dim == 0
    # degree-2 slice is empty: the single zero datum is its own class
    res1 = line_quotient(omega, 1, (-1, 0, 1), polybound=2)
    assert res1.class_count == 1
    assert res1.concordances == 0


def test_line_quotient_torus_matches_h1():
    omega = _torus3()
    res = line_quotient(omega, 0, (-1, 0, 1))
    assert res.class_count == 27
    assert res.h_dim == 3
    assert all(len(m) == 1 for m in res.classes.values())
    assert res.concordances == 0
    assert res.refusals == 51


def test_twisted_linear_concordance_torus():
    omega = _torus3()
    H = omega.gen("x") * omega.gen("y") * omega.gen("z")
    zero = omega.zero()
    t0d = _torus_ku(omega, H, omega.gen("x"), zero)
    t1d = _torus_ku(omega, H, omega.gen("x"), H)
    ccd = twisted_linear_concordance(t0d, t1d)
    assert verify_concordance(ccd).passed
    C = TwistedComplex(omega, H)
    back = omega.zero()
    for name in t0d.bundle.new_names:
        back = back + fiber_integrate(ccd.cylinder, ccd.image(name))
    assert twisted_d(C, back) == H
    bad = _torus_ku(omega, H, omega.gen("y"), zero)
    with pytest.raises(ValueError, match="no concordance"):
        twisted_linear_concordance(t0d, bad)


def _torus_ku(omega, H, f1, f3):
    bundle = twisted_ku_bundle(4)
    twist = FlatFormDatum(bundle.base, omega, {"h3": H})
    images = {"h3": H, "f1": f1, "f3": f3}
    for k in (5, 7, 9):
        images["f%d" % k] = omega.zero()
    return TwistedFlatFormDatum(bundle, twist, images)


def test_twisted_ku_quotient_bridges_twisted_cohomology():
    omega = _torus3()
    H = omega.gen("x") * omega.gen("y") * omega.gen("z")
    res = twisted_ku_quotient(omega, H, (0, 1))
    assert res.class_count == 8
    assert all(len(m) == 2 for m in res.classes.values())
    assert res.concordances == 8
    assert res.witness_checks == 8
    assert res.refusals == 28
    # lattice spans of the odd twisted classes hit each class exactly once
    C = res.complex
    odd = [s for s in twisted_cohomology(C) if s.residue == 1][0]
    assert odd.dim == 3
    seen = set()
    for lam in ((a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)):
        combo = omega.zero()
        for l, cls in zip(lam, odd.representatives):
            combo = combo + l * cls.rep
        matches = [i for i, rep in enumerate(res.reps)
                   if twisted_is_exact(C, combo - rep) is not None]
        assert len(matches) == 1
        seen.add(matches[0])
    assert len(seen) == 8


def test_decide_concordance_dispatch():
    omega = _sphere3()
    f0 = line_datum(omega, 2, omega.gen("w3"))
    same = line_datum(omega, 2, omega.gen("w3"))
    other = line_datum(omega, 2, 2 * omega.gen("w3"))
    assert verify_concordance(decide_concordance(f0, same)).passed
    assert decide_concordance(f0, other) is None
    su2 = _su2_ce()
    g0 = FlatFormDatum(su2, omega, {n: omega.zero() for n in
                                    su2.gens.names})
    with pytest.raises(NotImplementedError, match="verification only"):
        decide_concordance(g0, g0)
    t3 = _torus3()
    Ht = t3.gen("x") * t3.gen("y") * t3.gen("z")
    with pytest.raises(ValueError):
        decide_concordance(f0, _torus_ku(t3, Ht, t3.zero(), t3.zero()))


def test_decide_concordance_twisted_route():
    omega = _torus3()
    H = omega.gen("x") * omega.gen("y") * omega.gen("z")
    zero = omega.zero()
    t0d = _torus_ku(omega, H, omega.gen("x"), zero)
    t1d = _torus_ku(omega, H, omega.gen("x"), 2 * H)
    ccd = decide_concordance(t0d, t1d)
    assert ccd is not None and verify_concordance(ccd).passed
    assert decide_concordance(
        t0d, _torus_ku(omega, H, omega.gen("z"), zero)) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(-3, 3))
def test_decide_concordance_cofiber_lattice(a0, b0, a1, b1):
    omega = _cofiber_algebra()
    w4 = omega.gen("w4")
    f2sq = omega.monomial({"f2": 2})
    f0 = line_datum(omega, 3, a0 * w4 + b0 * f2sq)
    f1 = line_datum(omega, 3, a1 * w4 + b1 * f2sq)
    out = decide_concordance(f0, f1)
    # d(h3) = w4 - f2^2 is the only relation in degree 4
    if a1 - a0 == -(b1 - b0):
        assert out is not None
    else:
        assert out is None


def test_preset_twistorial_full_verification():
    P = preset_twistorial()
    assert check_d_squared(P.omega).passed
    rep = verify_twisted_flat(P.datum)
    assert rep.sullivan.ok
    assert rep.chain_failures == [] and rep.triangle_failures == []
    assert rep.passed
    push = verify_twisted_flat(P.pushforward)
    assert push.passed


def test_preset_twistorial_charge_witness():
    P = preset_twistorial()
    assert P.charge_witness() == P.omega.gen("H3")


def test_preset_twistorial_untwisted_shadow():
    # zeroing q and e8 leaves the untwisted system
    P = preset_twistorial()
    ext = RelativeExtension(DGCA([("q", 4), ("e8", 8)]), P.omega)
    shadow = cofiber(ext)
    g = shadow.gens
    assert shadow.d["H3"] == g.gen("G4") - g.monomial({"F2": 2})
    assert shadow.d["G7"] == -Fraction(1, 2) * g.monomial({"G4": 2})


def test_preset_twistorial_concordances():
    P = preset_twistorial()
    ccd = constant_concordance(P.datum)
    assert verify_concordance(ccd).passed
    rev = reverse_concordance(ccd)
    assert verify_concordance(rev).passed
    assert rev.morphism == ccd.morphism
