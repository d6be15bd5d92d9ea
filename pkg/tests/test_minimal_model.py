from fractions import Fraction

import pytest

from ratho.core_algebra import AlgebraMorphism, morphism_by_names
from ratho.dgca import (
    DGCA,
    ChainMapError,
    apply_d,
    cohomology_dims,
    is_chain_map,
    is_quasi_iso,
    tensor,
)
from ratho.linfty import is_minimal, is_sullivan
from ratho.minimal_model import (
    BudgetExceeded,
    MinimalModelResult,
    RelativeExtension,
    cofiber,
    minimal_model,
    verify_relative,
)


def _s4():
    A = DGCA([("w4", 4), ("w7", 7)])
    return DGCA(A.gens, d={"w7": -A.gens.monomial({"w4": 2})})


def _cp3():
    A = DGCA([("x2", 2), ("y7", 7)])
    return DGCA(A.gens, d={"y7": A.gens.monomial({"x2": 4})})


def _twistor_cofiber():
    A = DGCA([("f2", 2), ("h3", 3), ("w4", 4), ("w7", 7)])
    g = A.gens
    return DGCA(g, d={
        "h3": g.gen("w4") - g.monomial({"f2": 2}),
        "w7": -g.monomial({"w4": 2}),
    })


def _sp2_inv():
    return DGCA([("hp1", 4), ("ch8", 8)])


def _twistor():
    A = DGCA([("hp1", 4), ("ch8", 8), ("f2", 2), ("h3", 3), ("w4", 4), ("w7", 7)])
    g = A.gens
    return DGCA(g, d={
        "h3": g.gen("w4") - Fraction(1, 2) * g.gen("hp1") - g.monomial({"f2": 2}),
        "w7": -g.monomial({"w4": 2}) + Fraction(1, 4) * g.monomial({"hp1": 2})
              - g.gen("ch8"),
    })


def _ku1_h3():
    names = [("h3", 3)] + [("f%d" % k, k) for k in (1, 3, 5, 7, 9)]
    A = DGCA(names)
    g = A.gens
    d = {}
    for k in (3, 5, 7, 9):
        d["f%d" % k] = g.gen("h3") * g.gen("f%d" % (k - 2))
    return DGCA(g, d)


def _check_result(res, A, polybound=None):
    ok, offenders = is_minimal(res.model)
    assert ok, offenders
    assert is_sullivan(res.model).ok
    ok, _ = is_chain_map(res.comparison)
    assert ok
    qok, _ = is_quasi_iso(res.comparison, (0, res.bound), polybound=polybound)
    assert qok


def test_sphere_model_is_fixed_point():
    A = _s4()
    res = minimal_model(A, 8)
    assert res.counts == {4: 1, 7: 1}
    _check_result(res, A)
    # invertible linear comparison on generators: an isomorphic presentation
    assert res.comparison.assignment["v4_0"] == A.gen("w4")
    lin = res.comparison.assignment["v7_0"].coefficient(A.gen("w7"))
    assert lin != 0
    assert apply_d(res.model, res.model.gen("v7_0")) == res.model.monomial({"v4_0": 2})


def test_projective_space_counts():
    res = minimal_model(_cp3(), 8)
    assert res.counts == {2: 1, 7: 1}
    _check_result(res, _cp3())


def test_twistor_cofiber_reconstruction():
    A = _twistor_cofiber()
    assert cohomology_dims(A, (0, 8)) == {
        n: (1 if n in (0, 2, 4, 6) else 0) for n in range(9)}
    res = minimal_model(A, 8)
    assert res.counts == {2: 1, 7: 1}
    dv = apply_d(res.model, res.model.gen("v7_0"))
    c = dv.coefficient(res.model.monomial({"v2_0": 4}))
    assert c != 0 and dv == c * res.model.monomial({"v2_0": 4})
    _check_result(res, A)


def test_cylinder_model_collapses_to_base():
    base = DGCA([("w3", 3)])
    A = tensor(base, DGCA([("t0", 0), ("dt0", 1)],
                          d={"t0": DGCA([("t0", 0), ("dt0", 1)]).gens.gen("dt0")}))
    res = minimal_model(A, 4, polybound=3)
    assert res.counts == {3: 1}
    assert res.model.d["v3_0"].is_zero()
    assert res.comparison.assignment["v3_0"] == A.gen("w3")
    _check_result(res, A, polybound=3)


def test_free_two_generator_cohomology():
    A = tensor(DGCA([("c4", 4)]), DGCA([("c8", 8)]))
    for reverse in (False, True):
        res = minimal_model(A, 8, reverse=reverse)
        assert res.counts == {4: 1, 8: 1}


def test_reverse_order_preserves_counts():
    for build in (_s4, _cp3, _twistor_cofiber):
        a = minimal_model(build(), 8)
        b = minimal_model(build(), 8, reverse=True)
        assert a.counts == b.counts


def test_preconditions_rejected():
    circle = DGCA([("x1", 1)])
    with pytest.raises(ValueError):
        minimal_model(circle, 3)
    fat_point = DGCA([("t0", 0), ("dt0", 1)])  # d = 0, so H^0 is big
    with pytest.raises(ValueError):
        minimal_model(fat_point, 2, polybound=2)


def test_budget_cap():
    with pytest.raises(BudgetExceeded):
        minimal_model(_twistor_cofiber(), 8, budget=1)


def test_relative_extension_validation():
    ext = RelativeExtension(_sp2_inv(), _twistor())
    assert ext.new_names == ("f2", "h3", "w4", "w7")
    bad_total = DGCA(list(zip(_twistor().gens.names, _twistor().gens.degrees)))
    broken = DGCA(bad_total.gens,
                  d={"hp1": bad_total.gens.gen("h3") * bad_total.gens.gen("f2")})
    with pytest.raises(ChainMapError):
        RelativeExtension(_sp2_inv(), broken)
    with pytest.raises(ValueError):
        RelativeExtension(DGCA([("absent", 4)]), _twistor())


def test_twistor_relative_legs():
    ext = RelativeExtension(_sp2_inv(), _twistor())
    target = AlgebraMorphism(
        ext.total, ext.total,
        {n: ext.total.gen(n) for n in ext.total.gens.names})
    report = verify_relative(ext, target, 8,
                             base_map=morphism_by_names(ext.base, ext.total))
    assert report.sullivan.ok
    assert report.sullivan.order == ("f2", "w4", "h3", "w7")
    assert report.quasi_ok
    # d(h3) contains the bare new generator w4: strictly not minimal
    assert report.minimal_offenders == ["h3"]
    assert not report.passed


def test_twisted_ku_relative_passes():
    base = DGCA([("h3", 3)])
    ext = RelativeExtension(base, _ku1_h3())
    target = AlgebraMorphism(
        ext.total, ext.total,
        {n: ext.total.gen(n) for n in ext.total.gens.names})
    report = verify_relative(ext, target, 6)
    assert report.sullivan.ok and report.minimal and report.quasi_ok
    assert report.passed


def test_relative_linear_term_offender():
    total = DGCA([("x", 3), ("y", 2)])
    total = DGCA(total.gens, d={"y": total.gens.gen("x")})
    ext = RelativeExtension(DGCA([]), total)
    target = AlgebraMorphism(total, total,
                             {n: total.gen(n) for n in total.gens.names})
    report = verify_relative(ext, target, 4)
    assert not report.minimal and report.minimal_offenders == ["y"]


def test_relative_sullivan_cycle_detected():
    total = DGCA([("th1", 1), ("th2", 1), ("th3", 1)])
    g = total.gens
    total = DGCA(g, d={
        "th1": g.gen("th2") * g.gen("th3"),
        "th2": g.gen("th3") * g.gen("th1"),
        "th3": g.gen("th1") * g.gen("th2"),
    })
    ext = RelativeExtension(DGCA([]), total)
    target = AlgebraMorphism(total, total,
                             {n: total.gen(n) for n in g.names})
    report = verify_relative(ext, target, 3)
    assert not report.sullivan.ok
    assert report.sullivan.cycle == ("th1", "th2", "th3")


def test_triangle_precondition():
    ext = RelativeExtension(_sp2_inv(), _twistor())
    target = AlgebraMorphism(
        ext.total, ext.total,
        {n: ext.total.gen(n) for n in ext.total.gens.names})
    skew = morphism_by_names(
        ext.base, ext.total,
        overrides={"hp1": 2 * ext.total.gen("hp1")})
    with pytest.raises(ChainMapError):
        verify_relative(ext, target, 4, base_map=skew)


def test_cofiber_of_twistor():
    ext = RelativeExtension(_sp2_inv(), _twistor())
    C = cofiber(ext)
    assert C == _twistor_cofiber()


def test_cofiber_of_twisted_ku():
    ext = RelativeExtension(DGCA([("h3", 3)]), _ku1_h3())
    C = cofiber(ext)
    assert C.gens.names == ("f1", "f3", "f5", "f7", "f9")
    assert all(C.d[n].is_zero() for n in C.gens.names)


def test_cofiber_trivial_extension():
    A = _s4()
    ext = RelativeExtension(A, A)
    C = cofiber(ext)
    assert len(C.gens) == 0


def test_cofiber_then_minimal_model_matches_fiber_counts():
    ext = RelativeExtension(_sp2_inv(), _twistor())
    res = minimal_model(cofiber(ext), 8)
    assert res.counts == {2: 1, 7: 1}
