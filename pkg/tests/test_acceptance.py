"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import time
from fractions import Fraction

import pytest

from oracles import count_plane_partitions
from toricsheaves.assembly import QSeriesProvider, assemble_torsionfree
from toricsheaves.chern import chern_p3
from toricsheaves.enumeration import cubic_form, d_sets, grefl_p3, hartshorne_audit, lift
from toricsheaves.laurent import BiLaurentPoly, LaurentPoly, Window, macmahon
from toricsheaves.stability import P3Type, RayWeights, classify_p3, is_mu_stable
from toricsheaves.toricdata import Space, ToricDatum, enumerate_patterns
from toricsheaves import wallcross


@pytest.fixture
def criterion(capsys):
    def check(number, title, budget, fn):
        start = time.perf_counter()
        detail = fn()
        elapsed = time.perf_counter() - start
        ok = detail is True and elapsed < budget
        with capsys.disabled():
            why = "" if detail is True else f" [{detail}]"
            print(f"\nACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s, budget {budget}s){why}")
        assert detail is True, detail
        assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"

    return check


def _expect(got, want):
    return True if got == want else f"got {got}, want {want}"


def test_01_small_values(criterion):
    def run():
        got = [str(grefl_p3(-1, c2)) for c2 in (1, 2, 3)]
        return _expect(got, ["4*q", "24*q^4", "-4*q^7 + 36*q^9"])

    criterion(1, "grefl_p3(-1, 1..3)", 1, run)


def test_02_leading_coefficient(criterion):
    def run():
        got = [grefl_p3(-1, c2).coeff(c2 * c2) for c2 in range(1, 9)]
        return _expect(got, [12 * c2 for c2 in range(1, 9)])

    criterion(2, "coefficient of q^(c2^2) is 12 c2", 30, run)


def test_03_hartshorne_audit(criterion):
    def run():
        reports = [hartshorne_audit(c1, 8) for c1 in (-1, 0)]
        bad = [v for r in reports for v in r.violations]
        if bad:
            return "; ".join(bad[:3])
        return _expect(reports[1].attained, [2, 3])

    criterion(3, "Hartshorne audit c1 in {-1, 0}, c2 <= 8", 60, run)


def _scan(c1, c2):
    wallcross._candidate_strata_cached.cache_clear()
    report = wallcross.chamber_scan(c1, c2, vmax=10)
    return list(report.walls), [str(p) for p in report.chambers]


def test_04_first_chamber_diagram(criterion):
    criterion(4, "chambers c1=(0,1) c2=(0,1)", 60,
              lambda: _expect(_scan((0, 1), (0, 1)), ([Fraction(2)], ["6*q", "0"])))


def test_05_second_chamber_diagram(criterion):
    want = ([Fraction(1, 3), Fraction(1), Fraction(3)], ["0", "6", "18*q^2", "0"])
    criterion(5, "chambers c1=(1,1) c2=(0,2)", 300, lambda: _expect(_scan((1, 1), (0, 2)), want))


def test_06_classification_oracle(criterion):
    def run():
        wts = RayWeights.unit()
        cases = 0
        for n in range(5**4):
            v = tuple((n // 5**k) % 5 for k in range(4))
            for pat in enumerate_patterns(i for i in range(4) if v[i]):
                d = ToricDatum(Space.P3, (0,) * 4, v, pat)
                if (classify_p3(d) is not P3Type.NOT_STABLE) != is_mu_stable(d, wts).stable:
                    return f"disagree at v={v} pattern={pat.blocks}"
                cases += 1
        return True if cases > 5**4 else f"only {cases} cases"

    criterion(6, "classify_p3 agrees with is_mu_stable, v_i <= 4", 10, run)


def test_07_unit_assembly(criterion):
    def run():
        window = Window(0, 5, 0, 25)
        got = assemble_torsionfree(-1, QSeriesProvider.unit(), window)
        want = {}
        for c2 in range(1, 6):
            for q, c in grefl_p3(-1, c2).terms.items():
                if 0 <= q <= 25:
                    want[(c2, q)] = c
        return _expect(got, BiLaurentPoly(want, window))

    criterion(7, "unit-provider assembly identity", 30, run)


def test_08_cross_module(criterion):
    def run():
        wts = RayWeights.unit()
        n = 0
        for c1 in (-1, 0):
            for c2 in range(1, 6):
                for which, elements in d_sets(c1, c2).items():
                    for e in elements:
                        d = lift(e, c1)
                        if chern_p3(d).as_tuple() != (c1, c2, cubic_form(which, e.v)):
                            return f"chern mismatch for {e}"
                        if not is_mu_stable(d, wts).stable:
                            return f"not stable: {e}"
                        n += 1
        return True if n else "no elements"

    criterion(8, "lifted D-set elements: Chern classes and stability", 30, run)


def test_09_macmahon(criterion):
    def run():
        series = macmahon(10)
        return _expect([series.coeff(k) for k in range(11)], [count_plane_partitions(k) for k in range(11)])

    criterion(9, "macmahon(10) vs plane-partition count", 10, run)


def test_10_box_doubling(criterion):
    def run():
        for c2 in range(1, 6):
            box = 4 * c2 - 1
            a, b = grefl_p3(-1, c2), grefl_p3(-1, c2, box=2 * box)
            if a != b or a == LaurentPoly():
                return f"c2={c2}: {a} vs {b}"
        return True

    criterion(10, "doubled box leaves grefl_p3(-1, c2 <= 5) unchanged", 60, run)
