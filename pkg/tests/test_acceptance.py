"""Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only."""

import contextlib
import itertools

import numpy as np
import pytest
from conftest import ACCEPTANCE, OA3LST, OA5LST, OA7LST, poly
from test_scheme import CASE1, CASE2

from pbent.cayley import (
    component_graphs,
    feasibility_verdict,
    lst_params,
    spectrum,
    srg_check,
    union_graph,
)
from pbent.construct import (
    RowPartition,
    bent_from_oa,
    bush_construct,
    default_partition,
    nlst_parameter_search,
    validate_oa,
)
from pbent.cyclotomic import CycInt
from pbent.duality import REGULAR, WEAK_MINUS, classify_regularity, verify_dual_structure
from pbent.ff import point_space
from pbent.pfunc import PAryFunction, is_even
from pbent.scheme import (
    amorphic_check,
    amorphic_parameters,
    constants_by_trace,
    imy_matches,
    is_bent_by_constants,
    scheme_check,
)
from pbent.spectral import component_spectra, is_bent, is_bent_by_derivatives, walsh_transform
from pbent.cli import main

GF52 = [
    ("x0^3x1+2x1^4", "2x0^4-x0x1^3"),
    ("-x0x1^3+x1^4", "x0^4+x0^3x1"),
    ("-x0^3x1+x1^4", "x0^4+x0x1^3"),
]
NLST = [
    ("-x0^2-x1^2+x2x3", "x0^2+x1^2-x2x3"),
    ("x0^2+x1^2+x0x2+2x2x3", "2x0^2+2x1^2+x0x3+x2x3+2x3^2"),
]
CORPUS = [(3, 2), (3, 4), (5, 2)]
PER_SIZE = 100


@contextlib.contextmanager
def criterion(num, text):
    try:
        yield
    except BaseException:
        line = f"FAIL criterion {num}: {text}"
        ACCEPTANCE.append(line)
        print(line)
        raise
    line = f"PASS criterion {num}: {text}"
    ACCEPTANCE.append(line)
    print(line)


def params(f):
    return [srg_check(g).params.as_tuple() if srg_check(g).is_srg else srg_check(g).status
            for g in component_graphs(f)]


def random_even(p, n, rng):
    """Uniform even function with f(0) = 0: one value per {x, -x} pair."""
    neg = point_space(p, n).neg
    v = rng.integers(0, p, p**n)
    rep = np.minimum(np.arange(p**n), neg)
    v = v[rep]
    v[0] = 0
    return PAryFunction(p, n, v)


def test_criterion_1_gf32_catalog(gf32a, gf32b):
    with criterion(1, "GF(3)^2 catalog: verdicts, SRG parameters, classes, duals, regularity"):
        assert is_bent(gf32a) and is_bent(gf32b)
        assert params(gf32a) == [(9, 2, 1, 0), (9, 2, 1, 0), (9, 4, 1, 2)]
        assert params(gf32b) == [(9, 4, 1, 2), (9, 4, 1, 2), "empty"]
        assert feasibility_verdict(gf32a).overall == "feasible-LST"
        assert feasibility_verdict(gf32b).overall == "feasible-NLST"
        a, b = classify_regularity(gf32a), classify_regularity(gf32b)
        assert a.kind == REGULAR and a.dual == poly("x0^2-x1^2", 3, 2)
        assert b.kind == WEAK_MINUS and b.dual == poly("-x0^2-x1^2", 3, 2)


def test_criterion_2_structure_constants(gf32a, gf32b):
    with criterion(2, "structure constants of both GF(3)^2 cases, counting and trace; derivative sum is 3"):
        for f, arrays in ((gf32a, CASE1), (gf32b, CASE2)):
            counted = scheme_check(f).constants
            traced = constants_by_trace(f)
            for k, block in arrays.items():
                assert counted.block(k).tolist() == block
                assert traced.block(k).tolist() == block
        c = scheme_check(gf32a).constants
        assert c[2, 0, 1] + c[0, 1, 1] + c[1, 2, 1] + c[2, 3, 1] + c[3, 1, 1] == 3


def test_criterion_3_gf52_catalog():
    with criterion(3, "GF(5)^2 catalog: three amorphic LST functions and the non-amorphic bent example"):
        for src, dual in GF52:
            f = poly(src, 5, 2)
            assert is_bent(f) and amorphic_check(f).is_amorphic
            assert feasibility_verdict(f).overall == "feasible-LST"
            assert params(f) == [(25, 4, 3, 0)] * 4 + [(25, 8, 3, 2)]
            assert classify_regularity(f).dual == poly(dual, 5, 2)
        g = poly("3x0^4+2x0^2+2x0x1", 5, 2)
        assert is_bent(g) and not amorphic_check(g).is_amorphic
        assert [spectrum(h).distinct for h in component_graphs(g)] == [6, 6, 2, 6, 7]


def test_criterion_4_counterexamples():
    with criterion(4, "counterexamples: SRG status of components and of pairwise unions"):
        f = poly("-x0^2+2x1^2", 5, 2)
        assert not any(srg_check(g).is_srg for g in component_graphs(f))
        for pair in ((1, 4), (2, 3)):
            assert srg_check(union_graph(f, *pair)).params.as_tuple() == (25, 12, 5, 6)
        g = poly("-x0x1+x1^2", 5, 2)
        st = [srg_check(h) for h in component_graphs(g)]
        assert not any(s.is_srg for s in st[:4]) and st[4].params.as_tuple() == (25, 8, 3, 2)
        for pair in ((1, 4), (2, 3)):
            assert srg_check(union_graph(g, *pair)).params.as_tuple() == (25, 8, 3, 2)
        h = poly("2x0x1^3+x1^4-x1^2", 5, 2)
        assert not any(srg_check(c).is_srg for c in component_graphs(h))
        for pair in itertools.combinations(range(1, 6), 2):
            assert not srg_check(union_graph(h, *pair)).is_srg


def test_criterion_5_small_oa(capsys, tmp_path):
    with criterion(5, "OA(4,3) text is byte-exact; two row partitions give the GF(3)^2 tables"):
        path = tmp_path / "oa.txt"
        assert main(["oa", "gen", "--p", "3", "--m", "1", "--out", str(path)]) == 0
        want = "3 1 4\n0 0 0 1 1 1 2 2 2\n0 1 2 0 1 2 0 1 2\n0 1 2 1 2 0 2 0 1\n0 1 2 2 0 1 1 2 0\n"
        assert path.read_bytes() == want.encode()
        a = bush_construct(3, 1)
        assert bent_from_oa(a, RowPartition.parse("0|1|2,3", 3)) == poly("-x0^2+x1^2", 3, 2)
        assert bent_from_oa(a, RowPartition.parse("0,1|2,3", 3)) == poly("x0^2+x1^2", 3, 2)
        capsys.readouterr()


def oa_pipeline(p, m):
    a = bush_construct(p, m)
    assert validate_oa(a)
    f = bent_from_oa(a, default_partition(p, m))
    v = feasibility_verdict(f)
    assert is_even(f) and is_bent(f) and v.overall == "feasible-LST"
    assert amorphic_check(f).is_amorphic and classify_regularity(f).kind == REGULAR
    got = params(f)
    assert got == [lst_params(v.N, r) for r in v.r]
    return got


def test_criterion_6_oa_pipeline():
    with criterion(6, "Bush arrays over (3,2), (5,1), (5,2), (7,1) give amorphic regular LST bent functions"):
        assert oa_pipeline(3, 2) == [(81, 24, 9, 6)] * 2 + [(81, 32, 13, 12)]
        assert oa_pipeline(5, 1) == [(25, 4, 3, 0)] * 4 + [(25, 8, 3, 2)]
        assert oa_pipeline(5, 2) == [(625, 120, 35, 20)] * 4 + [(625, 144, 43, 30)]
        assert oa_pipeline(7, 1) == [(49, 6, 5, 0)] * 6 + [(49, 12, 5, 2)]


@pytest.mark.slow
def test_criterion_6_oa_pipeline_7_2():
    with criterion(6, "(slow) Bush array over (7,2) on 2401 vertices"):
        assert oa_pipeline(7, 2) == [(2401, 336, 77, 42)] * 6 + [(2401, 384, 89, 56)]


def test_criterion_7_gf34_polynomials():
    with criterion(7, "GF(3)^4 polynomials: LST example and both NLST examples with duals and structure"):
        f = poly(OA3LST[0], 3, 4)
        assert is_bent(f) and amorphic_check(f).is_amorphic
        assert feasibility_verdict(f).overall == "feasible-LST"
        assert params(f) == [(81, 24, 9, 6)] * 2 + [(81, 32, 13, 12)]
        assert classify_regularity(f).dual == poly(OA3LST[1], 3, 4)
        rep = verify_dual_structure(f)
        assert rep.ok and all(all(v) for v in rep.checks.values())
        for k, (src, dual) in enumerate(NLST):
            g = poly(src, 3, 4)
            assert is_bent(g) and feasibility_verdict(g).overall == "feasible-NLST"
            assert classify_regularity(g).dual == poly(dual, 3, 4)
            rep = verify_dual_structure(g)
            assert rep.ok and all(all(v) for v in rep.checks.values())
            if k == 0:
                assert rep.matches == {1: 2, 2: 1, 3: 3}


@pytest.mark.slow
@pytest.mark.parametrize("pair,p", [(OA5LST, 5), (OA7LST, 7)])
def test_criterion_7_larger_polynomials(pair, p):
    with criterion(7, f"(slow) GF({p})^4 example: LST parameters and printed dual"):
        f = poly(pair[0], p, 4)
        v = feasibility_verdict(f)
        assert v.overall == "feasible-LST"
        assert params(f) == [lst_params(v.N, r) for r in v.r]
        rep = classify_regularity(f)
        assert rep.kind == REGULAR and rep.dual == poly(pair[1], p, 4)


def known_bent():
    yield poly("-x0^2+x1^2", 3, 2)
    yield poly("x0^2+x1^2", 3, 2)
    yield poly(OA3LST[0], 3, 4)
    for src, _ in NLST:
        yield poly(src, 3, 4)
    for src, _ in GF52:
        yield poly(src, 5, 2)
    for src in ("3x0^4+2x0^2+2x0x1", "-x0^2+2x1^2", "-x0x1+x1^2", "2x0x1^3+x1^4-x1^2"):
        yield poly(src, 5, 2)


def test_criterion_8_properties():
    with criterion(8, "properties: Parseval, eigenvalue sum, bent agreement, fast = naive, IMY, NLST search"):
        rng = np.random.default_rng(20240601)
        corpus = [random_even(p, n, rng) for p, n in CORPUS for _ in range(PER_SIZE)]
        corpus += list(known_bent())
        amorphic = 0
        for f in corpus:
            W = walsh_transform(f)
            # (a) Parseval, summed exactly over the cyclotomic basis
            total = W.norm_sq().sum(axis=0)
            assert total[0] == f.p ** (2 * f.n) and not total[1:].any()
            # (b) 1 + sum lambda_i(x) = 0 for x != 0
            lam = component_spectra(f)
            s = sum(l.raw() for l in lam[1:])
            s[:, 0] += 1
            assert all(CycInt.from_raw(f.p, row) == CycInt.integer(f.p, 0) for row in s[1:])
            # (c) Walsh, derivatives and structure constants agree
            bent = bool(is_bent(f, W))
            assert bent == bool(is_bent_by_derivatives(f))
            res = scheme_check(f)
            if res.is_scheme:
                assert is_bent_by_constants(f, res.constants) == bent
            # (d) fast transform equals the direct sum
            assert W == walsh_transform(f, "naive")
            # (e) every amorphic instance has the predicted constants
            if res.is_scheme:
                am = amorphic_check(f)
                if am.is_amorphic:
                    nr = amorphic_parameters(f, am.type)
                    assert nr is not None
                    assert imy_matches(res.constants, *nr)
                    amorphic += 1
                    if bent:
                        v = feasibility_verdict(f)
                        assert nr == (v.N, v.r)
        assert amorphic >= 100
        # (f) no (lambda, mu) fits the NLST profile for (5,1) and (7,1)
        for p in (5, 7):
            assert not any(c.feasible for c in nlst_parameter_search(p, 1))
