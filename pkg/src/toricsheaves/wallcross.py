"""Reflexive generating functions on P^2 x P^1 as the polarization varies.

With ``P = a H + a' H'`` the H'-rays weigh ``tau = a / (2 a')`` relative
to the H-rays. Every block weight and the total weight are affine in
``tau``, so each stratum changes stability at no more than one value of
``tau`` per block, which can be solved for exactly.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .chern import chern_p2p1
from .laurent import LaurentPoly
from .stability import RayWeights, Status, is_mu_stable
from .toricdata import CollisionPattern, Space, ToricDatum, enumerate_patterns, euler_m0n, u_from_c1

H_RAYS, HP_RAYS = Space.P2xP1.ray_classes


class WallError(ArithmeticError):
    """``tau`` lies on a wall: some stratum is strictly semistable there."""


@dataclass(frozen=True)
class Stratum:
    """Stable-for-some-tau fixed-point stratum with matching ``c1, c2``.

    The stratum is ``M_{0,m}`` for ``m`` blocks, contributing
    ``euler * q^c3`` whenever it is stable.
    """

    datum: ToricDatum
    c3: int
    euler: int

    def weight_forms(self) -> tuple[tuple[int, int], list[tuple[int, int]]]:
        """``(const, tau coefficient)`` of the total and of every block weight."""
        v = self.datum.v

        def form(rays):
            return (sum(v[i] for i in rays if i in H_RAYS), sum(v[i] for i in rays if i in HP_RAYS))

        return form(range(5)), [form(b) for b in self.datum.pattern.blocks]

    def wall_candidates(self) -> set[Fraction]:
        (A, B), blocks = self.weight_forms()
        out = set()
        for a, b in blocks:
            # a + b tau = (A + B tau) / 2
            den = 2 * b - B
            if den:
                tau = Fraction(A - 2 * a, den)
                if tau > 0:
                    out.add(tau)
        return out


@lru_cache(maxsize=None)
def _extensions(active: tuple[int, ...]) -> dict[CollisionPattern, list[CollisionPattern]]:
    """Patterns of ``active`` grouped by their restriction to the H-rays."""
    out: dict[CollisionPattern, list[CollisionPattern]] = {}
    for pat in enumerate_patterns(active):
        out.setdefault(pat.restrict(H_RAYS), []).append(pat)
    return out


def _four_a_l(f: int, v, pat: CollisionPattern) -> int:
    s = f * f - sum(v[i] ** 2 for i in H_RAYS)
    for i, j in itertools.combinations(H_RAYS, 2):
        if v[i] and v[j]:
            s += 2 * (1 if pat.block_of(i) != pat.block_of(j) else -1) * v[i] * v[j]
    return s


def _two_a_lp(f: int, fp: int, v, pat: CollisionPattern) -> int:
    s = f * fp
    for i in H_RAYS:
        for j in HP_RAYS:
            if v[i] and v[j]:
                s += (1 if pat.block_of(i) != pat.block_of(j) else -1) * v[i] * v[j]
    return s


def _strata_chunk(c1, c2, vmax: int, firsts: list[int]) -> list[Stratum]:
    f, fp = c1
    vhs = []
    # the L-component of c2 only sees the H-rays, so filter those first
    for vh in itertools.product(firsts, range(vmax + 1), range(vmax + 1)):
        if (f + sum(vh)) % 2:
            continue
        act = [i for i in H_RAYS if vh[i]]
        for pat in enumerate_patterns(act):
            if _four_a_l(f, vh + (0, 0), pat) == 4 * c2[0]:
                vhs.append((vh, pat))
    vhps = [w for w in itertools.product(range(vmax + 1), repeat=2) if (fp + sum(w)) % 2 == 0]
    out = []
    for vh, hpat in vhs:
        for vhp in vhps:
            v = vh + vhp
            active = tuple(i for i in range(5) if v[i])
            u = u_from_c1(Space.P2xP1, c1, v)
            for pat in _extensions(active).get(hpat, ()):
                if len(pat) < 3 or _two_a_lp(f, fp, v, pat) != 2 * c2[1]:
                    continue
                d = ToricDatum(Space.P2xP1, u, v, pat)
                ch = chern_p2p1(d)
                if ch.c1 == tuple(c1) and ch.c2 == tuple(c2):
                    out.append(Stratum(d, ch.c3, euler_m0n(len(pat))))
    return out


@lru_cache(maxsize=32)
def _candidate_strata_cached(c1, c2, vmax: int, workers: int) -> tuple[Stratum, ...]:
    firsts = list(range(vmax + 1))
    if workers > 1:
        chunks = [firsts[i::workers] for i in range(workers) if firsts[i::workers]]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_strata_chunk, *zip(*[(c1, c2, vmax, ch) for ch in chunks])))
        found = [s for part in parts for s in part]
    else:
        found = _strata_chunk(c1, c2, vmax, firsts)
    return tuple(sorted(found, key=lambda s: (s.datum.v, s.datum.pattern.blocks)))


def candidate_strata(c1, c2, vmax: int, workers: int = 1) -> tuple[Stratum, ...]:
    """Strata with ``0 <= v_i <= vmax``, at least three distinct points and
    Chern classes ``c1 = (f, f')``, ``c2 = (a_L, a_L')``."""
    if vmax < 0:
        raise ValueError("vmax must be nonnegative")
    return _candidate_strata_cached(tuple(c1), tuple(c2), vmax, max(1, workers))


def _evaluate(strata, tau: Fraction) -> LaurentPoly:
    wts = RayWeights.p2p1(tau)
    terms: dict[int, int] = {}
    for s in strata:
        verdict = is_mu_stable(s.datum, wts)
        if verdict.status is Status.STRICTLY_SEMISTABLE:
            raise WallError(f"tau = {tau} is a wall: {s.datum.v} is strictly semistable")
        if verdict.stable:
            terms[s.c3] = terms.get(s.c3, 0) + s.euler
    return LaurentPoly(terms)


def grefl_p2p1(c1, c2, tau, vmax: int = 10, workers: int = 1) -> LaurentPoly:
    """Reflexive generating function on P^2 x P^1 at polarization ratio ``tau``,
    summing over toric data with ``v_i <= vmax``."""
    tau = Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    return _evaluate(candidate_strata(c1, c2, vmax, workers), tau)


def _interior_points(walls: list[Fraction]) -> list[Fraction]:
    if not walls:
        return [Fraction(1)]
    pts = [walls[0] / 2]
    pts += [(a + b) / 2 for a, b in zip(walls, walls[1:])]
    pts.append(walls[-1] + 1)
    return pts


def _scan(c1, c2, vmax: int, workers: int):
    strata = candidate_strata(c1, c2, vmax, workers)
    cands = sorted(set().union(*(s.wall_candidates() for s in strata)))
    polys = [_evaluate(strata, t) for t in _interior_points(cands)]
    walls, chambers = [], [polys[0]]
    for w, poly in zip(cands, polys[1:]):
        if poly != chambers[-1]:
            walls.append(w)
            chambers.append(poly)
    return walls, chambers, cands


def find_walls(c1, c2, vmax: int = 10, workers: int = 1) -> list[Fraction]:
    """Values of ``tau`` where the generating function actually jumps."""
    return _scan(c1, c2, vmax, workers)[0]


@dataclass(frozen=True)
class ChamberReport:
    c1: tuple[int, int]
    c2: tuple[int, int]
    walls: tuple[Fraction, ...]
    chambers: tuple[LaurentPoly, ...]
    vmax: int

    def __post_init__(self):
        if len(self.chambers) != len(self.walls) + 1:
            raise ValueError("need exactly one more chamber than walls")
        if any(a >= b for a, b in zip(self.walls, self.walls[1:])):
            raise ValueError("walls must be strictly increasing")
        if any(a == b for a, b in zip(self.chambers, self.chambers[1:])):
            raise ValueError("adjacent chambers must differ")

    @property
    def intervals(self) -> list[tuple[Fraction, Fraction | None]]:
        ends = [Fraction(0), *self.walls, None]
        return list(zip(ends, ends[1:]))

    def poly_at(self, tau) -> LaurentPoly:
        tau = Fraction(tau)
        if tau in self.walls:
            raise WallError(f"tau = {tau} is a wall")
        return self.chambers[sum(1 for w in self.walls if w < tau)]

    def __str__(self) -> str:
        lines = [
            f"c1=({self.c1[0]},{self.c1[1]}) c2=({self.c2[0]},{self.c2[1]}): "
            f"walls {{{', '.join(str(w) for w in self.walls)}}} (verified for v_i <= {self.vmax})"
        ]
        for (lo, hi), poly in zip(self.intervals, self.chambers):
            lines.append(f"  ({lo}, {'inf' if hi is None else hi}): {poly}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "walls": [str(w) for w in self.walls],
            "chambers": [
                {"interval": [str(lo), "inf" if hi is None else str(hi)], "poly": poly.to_json()}
                for (lo, hi), poly in zip(self.intervals, self.chambers)
            ],
            "vmax": self.vmax,
            "verified_for": f"v_i <= {self.vmax}",
        }


def chamber_scan(c1, c2, vmax: int = 10, workers: int = 1) -> ChamberReport:
    walls, chambers, _ = _scan(c1, c2, vmax, workers)
    return ChamberReport(tuple(c1), tuple(c2), tuple(walls), tuple(chambers), vmax)
