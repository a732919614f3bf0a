import numpy as np
import pytest
from conftest import OA3LST, complex_walsh, even_functions, poly
from hypothesis import given, settings, strategies as st

from pbent.cayley import feasibility_verdict
from pbent.duality import (
    NOT_WEAK,
    REGULAR,
    WEAK_MINUS,
    WEAK_OTHER,
    classify_regularity,
    dual_by_distinguished_index,
    dual_is_consistent,
    verify_dual_structure,
)
from pbent.pfunc import level_sets
from pbent.spectral import Spectrum, is_bent, walsh_transform

GF52 = [
    ("x0^3x1+2x1^4", "2x0^4-x0x1^3"),
    ("-x0x1^3+x1^4", "x0^4+x0^3x1"),
    ("-x0^3x1+x1^4", "x0^4+x0x1^3"),
]


def oracle_dual(f, mu):
    """Floating-point oracle: f*(x) = arg of W(x) / (mu p^(n/2)) in units of 2 pi / p."""
    W = complex_walsh(f) / (mu * f.p ** (f.n / 2))
    assert np.allclose(np.abs(W), 1)
    k = np.rint(np.angle(W) * f.p / (2 * np.pi)).astype(int) % f.p
    return k


def test_gf32(gf32a, gf32b):
    a = classify_regularity(gf32a)
    assert a.kind == REGULAR and a.dual == poly("x0^2-x1^2", 3, 2) and a.W0.as_integer() == 3
    b = classify_regularity(gf32b)
    assert b.kind == WEAK_MINUS and b.dual == poly("-x0^2-x1^2", 3, 2) and b.W0.as_integer() == -3
    assert np.array_equal(a.dual.values, oracle_dual(gf32a, 1))
    assert np.array_equal(b.dual.values, oracle_dual(gf32b, -1))


def test_oa3lst():
    f = poly(OA3LST[0], 3, 4)
    rep = classify_regularity(f)
    assert rep.kind == REGULAR and rep.dual == poly(OA3LST[1], 3, 4)
    assert np.array_equal(rep.dual.values, oracle_dual(f, 1))


def test_preconditions():
    with pytest.raises(ValueError):
        classify_regularity(poly("x0^2", 3, 2))
    with pytest.raises(ValueError):
        classify_regularity(poly("x0^2+x1^2+x2^2", 3, 3))
    with pytest.raises(ValueError):
        dual_by_distinguished_index(poly("-x0^2+2x1^2", 5, 2))
    with pytest.raises(ValueError):
        verify_dual_structure(poly("-x0x1+x1^2", 5, 2))


def test_not_weakly_regular_branch(gf32a):
    # flip the sign of one Walsh value: norms stay p^n, signs become mixed
    W = walsh_transform(gf32a)
    arr = W.array.copy()
    arr[4] = -arr[4]
    rep = classify_regularity(gf32a, Spectrum(3, 2, arr))
    assert rep.kind == NOT_WEAK and rep.dual is None and not rep.weakly_regular


def test_other_unit_branch(gf32a):
    # zeta * W: every value keeps its sign, j(0) becomes 1
    W = walsh_transform(gf32a)
    raw = np.roll(W.raw(), 1, axis=1)
    rep = classify_regularity(gf32a, Spectrum.from_raw(3, 2, raw))
    assert rep.kind == WEAK_OTHER and rep.j0 == 1
    assert rep.dual == classify_regularity(gf32a).dual


@pytest.mark.parametrize("src,dual", GF52)
def test_gf52_duals(src, dual):
    f = poly(src, 5, 2)
    assert classify_regularity(f).dual == poly(dual, 5, 2)
    assert dual_by_distinguished_index(f) == poly(dual, 5, 2)


@pytest.mark.parametrize(
    "src,dual,kind",
    [
        ("-x0^2+2x1^2", "-x0^2+3x1^2", WEAK_MINUS),
        ("-x0x1+x1^2", "x0^2+x0x1", REGULAR),
        ("2x0x1^3+x1^4-x1^2", "x0^2+x0^4+3x0^3x1", REGULAR),
    ],
)
def test_counterexample_duals(src, dual, kind):
    f = poly(src, 5, 2)
    rep = classify_regularity(f)
    assert rep.kind == kind and rep.dual == poly(dual, 5, 2)


def test_structure_gf32(gf32a):
    rep = verify_dual_structure(gf32a)
    assert rep.ok and all(all(v) for v in rep.checks.values())
    assert level_sets(rep.dual).sizes()[1:] == (2, 2, 4)


def test_structure_nlst():
    f = poly("-x0^2-x1^2+x2x3", 3, 4)
    rep = verify_dual_structure(f)
    assert rep.ok and rep.dual == poly("x0^2+x1^2-x2x3", 3, 4)
    assert rep.matches == {1: 2, 2: 1, 3: 3}
    g = poly("x0^2+x1^2+x0x2+2x2x3", 3, 4)
    rep = verify_dual_structure(g)
    assert rep.ok and rep.dual == poly("2x0^2+2x1^2+x0x3+x2x3+2x3^2", 3, 4)


def test_structure_failure_reports_witness(monkeypatch, gf32a):
    import pbent.duality as dmod

    real = dmod.dual_by_distinguished_index
    # corrupt the dual on the pairs +-(0,1) and +-(1,0); it stays even
    def broken(f):
        d = real(f)
        vals = d.values.copy()
        vals[[1, 2, 3, 6]] = vals[[3, 6, 1, 2]]
        return type(d)(d.p, d.n, vals)

    monkeypatch.setattr(dmod, "dual_by_distinguished_index", broken)
    rep = dmod.verify_dual_structure(gf32a)
    assert not rep.ok and rep.witnesses


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (3, 4)]).flatmap(lambda pn: even_functions(*pn)))
def test_random_even_bent(f):
    if not is_bent(f):
        return
    rep = classify_regularity(f)
    if rep.dual is None:
        return
    assert np.array_equal(rep.dual.values, oracle_dual(f, rep.epsilon))
    assert dual_is_consistent(f)
    v = feasibility_verdict(f)
    if v.feasible:
        assert dual_by_distinguished_index(f) == rep.dual
        assert verify_dual_structure(f).ok
        assert rep.kind == (REGULAR if v.N > 0 else WEAK_MINUS)
