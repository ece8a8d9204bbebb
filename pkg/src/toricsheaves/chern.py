"""Chern classes of toric data on P^3 and on P^2 x P^1.

All arithmetic is over ``Fraction`` and the results are checked to be
integers; a fractional Chern class means the inputs are inconsistent.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .toricdata import CollisionPattern, Space, ToricDatum, p_ij, p_ijk


class IntegralityError(ArithmeticError):
    """A Chern class came out non-integral."""


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise IntegralityError(f"{what} = {x} is not an integer")
    return int(x)


@dataclass(frozen=True)
class ChernP3:
    """Coefficients of ``H``, ``H^2``, ``H^3``."""

    c1: int
    c2: int
    c3: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.c1, self.c2, self.c3)

    def to_json(self) -> dict:
        return {"c1": self.c1, "c2": self.c2, "c3": self.c3}


@dataclass(frozen=True)
class ChernP2P1:
    """``c1 = f H + f' H'``, ``c2 = a_L L + a_L' L'``, ``c3 = n pt``."""

    c1: tuple[int, int]
    c2: tuple[int, int]
    c3: int

    def as_tuple(self):
        return (self.c1, self.c2, self.c3)

    def to_json(self) -> dict:
        return {"c1": list(self.c1), "c2": list(self.c2), "c3": self.c3}


def _pij(pattern: CollisionPattern, v, i: int, j: int) -> int:
    # an inactive ray always comes with a factor v = 0
    return p_ij(pattern, i, j) if v[i] and v[j] else 0


def _pijk(pattern: CollisionPattern, v, i: int, j: int, k: int) -> int:
    return p_ijk(pattern, i, j, k) if v[i] and v[j] and v[k] else 0


def chern_p3(d: ToricDatum) -> ChernP3:
    if d.space is not Space.P3:
        raise ValueError("chern_p3 needs a datum on P3")
    u, v, pat = sum(d.u), d.v, d.pattern
    c1 = -(2 * u + sum(v))
    c2 = Fraction(c1 * c1, 4) - Fraction(sum(x * x for x in v), 4)
    for i, j in combinations(range(4), 2):
        c2 += Fraction((2 * _pij(pat, v, i, j) - 1) * v[i] * v[j], 2)
    c3 = 0
    for i, j, k in combinations(range(4), 3):
        if v[i] and v[j] and v[k]:
            w = _pij(pat, v, i, j) + _pij(pat, v, i, k) + _pij(pat, v, j, k) - 2 * _pijk(pat, v, i, j, k)
            c3 += v[i] * v[j] * v[k] * w
    return ChernP3(c1, _integral(c2, "c2"), c3)


def chern_from_ch(ch1: Fraction, ch2: Fraction, ch3: Fraction) -> ChernP3:
    """Rank 2 Newton identities: Chern character to Chern classes."""
    c1 = Fraction(ch1)
    c2 = c1 * c1 / 2 - ch2
    c3 = 2 * ch3 - c1**3 / 3 + c1 * c2
    return ChernP3(_integral(c1, "c1"), _integral(c2, "c2"), _integral(c3, "c3"))


def _split_ch(u: int, vsum: int) -> list[Fraction]:
    # ch(O(-a) + O(-b)) up to degree 3
    a, b = u, u + vsum
    return [
        Fraction(-(a + b)),
        Fraction(a * a + b * b, 2),
        Fraction(-(a**3 + b**3), 6),
    ]


def chern_split_oracle(d: ToricDatum) -> ChernP3:
    """Chern classes when all ``p_i`` coincide and the sheaf splits.

    Then the sheaf is ``L_u + L_{u+v}`` and its Chern character is
    ``exp(-uH) + exp(-(u + sum v)H)``.
    """
    if d.space is not Space.P3:
        raise ValueError("split oracle is for P3")
    if len(d.pattern) > 1:
        raise ValueError("split oracle needs all active rays in one block")
    return chern_from_ch(*_split_ch(sum(d.u), sum(d.v)))


def chern_p3_devissage(d: ToricDatum) -> ChernP3:
    """Independent route to ``chern_p3`` through a toric filtration.

    Starts from the split sheaf ``L_u + L_{u+v}`` and removes, for every
    pair of rays with distinct points, the line sheaves supported on the
    corresponding torus-invariant line, and, for every triple with
    ``p_ijk = 1``, ``v_i v_j v_k`` skyscrapers.
    """
    if d.space is not Space.P3:
        raise ValueError("devissage oracle is for P3")
    u, v, pat = sum(d.u), d.v, d.pattern
    ch1, ch2, ch3 = _split_ch(u, sum(v))
    for i, j in combinations(range(4), 2):
        if not _pij(pat, v, i, j):
            continue
        k, l = (x for x in range(4) if x not in (i, j))
        for a in range(v[i]):
            for b in range(v[j]):
                ch2 -= 1
                ch3 += u + v[k] + v[l] + 1 + a + b
    for i, j, k in combinations(range(4), 3):
        ch3 -= v[i] * v[j] * v[k] * _pijk(pat, v, i, j, k)
    return chern_from_ch(ch1, ch2, ch3)


def chern_p2p1(d: ToricDatum) -> ChernP2P1:
    """Chern classes on P^2 x P^1 with ``H^3 = H'^2 = 0``.

    Pairs of H-rays contribute to ``L = H^2``; mixed pairs (one H-ray, one
    H'-ray) contribute to ``L' = H H'``.
    """
    if d.space is not Space.P2xP1:
        raise ValueError("chern_p2p1 needs a datum on P2xP1")
    hr, hpr = Space.P2xP1.ray_classes
    u, v, pat = d.u, d.v, d.pattern
    f = -(2 * sum(u[i] for i in hr) + sum(v[i] for i in hr))
    fp = -(2 * sum(u[i] for i in hpr) + sum(v[i] for i in hpr))
    # c1^2 = f^2 L + 2 f f' L'
    a_l = Fraction(f * f, 4) - Fraction(sum(v[i] ** 2 for i in hr), 4)
    for i, j in combinations(hr, 2):
        a_l += Fraction((2 * _pij(pat, v, i, j) - 1) * v[i] * v[j], 2)
    a_lp = Fraction(f * fp, 2)
    for i in hr:
        for ip in hpr:
            a_lp += Fraction((2 * _pij(pat, v, i, ip) - 1) * v[i] * v[ip], 2)
    c3 = 0
    for i, j in combinations(hr, 2):
        for ip in hpr:
            if v[i] and v[j] and v[ip]:
                w = _pij(pat, v, i, j) + _pij(pat, v, i, ip) + _pij(pat, v, j, ip) - 2 * _pijk(pat, v, i, j, ip)
                c3 += v[i] * v[j] * v[ip] * w
    return ChernP2P1((f, fp), (_integral(a_l, "c2[L]"), _integral(a_lp, "c2[L']")), c3)


def chern(d: ToricDatum):
    return chern_p3(d) if d.space is Space.P3 else chern_p2p1(d)
