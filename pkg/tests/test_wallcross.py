import itertools
import json
import random
from fractions import Fraction

import pytest

from toricsheaves.chern import chern_p2p1
from toricsheaves.laurent import LaurentPoly
from toricsheaves.stability import RayWeights, is_mu_stable
from toricsheaves.toricdata import ParityError, Space, ToricDatum, enumerate_patterns, euler_m0n, u_from_c1
from toricsheaves.wallcross import (
    ChamberReport,
    WallError,
    candidate_strata,
    chamber_scan,
    find_walls,
    grefl_p2p1,
)

D1 = ((0, 1), (0, 1))
D2 = ((1, 1), (0, 2))
F = Fraction


def naive_grefl(c1, c2, tau, vmax):
    """Straight sum over every datum in the box, no pruning."""
    wts = RayWeights.p2p1(tau)
    terms = {}
    for v in itertools.product(range(vmax + 1), repeat=5):
        try:
            u = u_from_c1(Space.P2xP1, c1, v)
        except ParityError:
            continue
        for pat in enumerate_patterns(i for i in range(5) if v[i]):
            d = ToricDatum(Space.P2xP1, u, v, pat)
            if not is_mu_stable(d, wts).stable:
                continue
            ch = chern_p2p1(d)
            if ch.c2 == tuple(c2):
                terms[ch.c3] = terms.get(ch.c3, 0) + euler_m0n(len(pat))
    return LaurentPoly(terms)


@pytest.mark.parametrize(
    "c1c2, tau, expected",
    [
        (D1, 1, {1: 6}),
        (D1, 3, {}),
        (D2, F(1, 2), {0: 6}),
        (D2, 2, {2: 18}),
        (D2, F(1, 6), {}),
        (D2, 4, {}),
    ],
)
def test_grefl_p2p1_examples(c1c2, tau, expected):
    assert grefl_p2p1(*c1c2, tau, vmax=10) == LaurentPoly(expected)


@pytest.mark.parametrize("c1c2", [D1, D2])
@pytest.mark.parametrize("tau", [F(1, 4), F(1, 2), F(3, 2), F(5, 2), 5])
def test_matches_naive_sum(c1c2, tau):
    assert grefl_p2p1(*c1c2, tau, vmax=3) == naive_grefl(*c1c2, tau, 3)


def test_walls():
    assert find_walls(*D1) == [F(2)]
    assert find_walls(*D2) == [F(1, 3), F(1), F(3)]
    assert find_walls(*D1, vmax=0) == []


def test_analytic_wall_is_a_candidate():
    # rays 0, 1, 3 with v = 1: tau < (2 + tau) / 2
    cands = set().union(*(s.wall_candidates() for s in candidate_strata(*D1, 10)))
    assert F(2) in cands


def test_on_wall_raises():
    with pytest.raises(WallError):
        grefl_p2p1(*D1, 2)
    with pytest.raises(WallError):
        chamber_scan(*D1).poly_at(2)
    with pytest.raises(ValueError):
        grefl_p2p1(*D1, 0)


def test_chamber_scans():
    r1 = chamber_scan(*D1)
    assert r1.walls == (F(2),)
    assert r1.chambers == (LaurentPoly({1: 6}), LaurentPoly())
    r2 = chamber_scan(*D2)
    assert r2.walls == (F(1, 3), F(1), F(3))
    assert [str(p) for p in r2.chambers] == ["0", "6", "18*q^2", "0"]
    empty = chamber_scan(*D1, vmax=0)
    assert empty.walls == () and empty.chambers == (LaurentPoly(),)


@pytest.mark.parametrize("c1c2", [D1, D2])
def test_vmax_ten_to_twelve(c1c2):
    a, b = chamber_scan(*c1c2, vmax=10), chamber_scan(*c1c2, vmax=12)
    assert (a.walls, a.chambers) == (b.walls, b.chambers)


@pytest.mark.parametrize("c1c2", [D1, D2])
def test_chamber_interiors(c1c2):
    rng = random.Random(7)
    report = chamber_scan(*c1c2)
    strata = candidate_strata(*c1c2, 10)
    cands = sorted(set().union(*(s.wall_candidates() for s in strata)))
    for (lo, hi), poly in zip(report.intervals, report.chambers):
        top = hi if hi is not None else lo + 10
        for _ in range(3):
            tau = lo + (top - lo) * F(rng.randint(1, 999), 1000)
            assert grefl_p2p1(*c1c2, tau) == poly
    # between consecutive candidate walls no single stratum changes its verdict
    ends = [F(0), *cands, cands[-1] + 10]
    for lo, hi in zip(ends, ends[1:]):
        pts = [lo + (hi - lo) * F(k, 4) for k in (1, 2, 3)]
        for s in strata:
            verdicts = {is_mu_stable(s.datum, RayWeights.p2p1(t)).status for t in pts}
            assert len(verdicts) == 1


def test_report_json():
    data = json.loads(json.dumps(chamber_scan(*D2).to_json()))
    assert data["walls"] == ["1/3", "1", "3"]
    assert data["vmax"] == 10
    assert [c["interval"] for c in data["chambers"]] == [["0", "1/3"], ["1/3", "1"], ["1", "3"], ["3", "inf"]]
    assert LaurentPoly.from_json(data["chambers"][2]["poly"]) == LaurentPoly({2: 18})
    assert "10" in data["verified_for"]


def test_report_invariants():
    with pytest.raises(ValueError):
        ChamberReport((0, 1), (0, 1), (F(2),), (LaurentPoly(),), 10)
    with pytest.raises(ValueError):
        ChamberReport((0, 1), (0, 1), (F(2),), (LaurentPoly(), LaurentPoly()), 10)
    with pytest.raises(ValueError):
        ChamberReport((0, 1), (0, 1), (F(3), F(2)), (LaurentPoly({1: 1}), LaurentPoly(), LaurentPoly({1: 1})), 10)
