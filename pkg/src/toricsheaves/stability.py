"""Slope stability of toric data.

The equivariant saturated line subbundles of a rank 2 reflexive sheaf
are indexed by points of P^1. The one attached to a point shared by a
block of rays has slope ``sum_{block} w_i v_i - const``, the sheaf
itself ``W/2 - const`` with ``W = sum_i w_i v_i``. So the datum is stable
iff ``W > 0`` and every block weighs strictly less than ``W/2``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .toricdata import CollisionPattern, Space, ToricDatum


class Status(enum.Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"
    DECOMPOSABLE = "Decomposable"


class P3Type(enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    TYPE3 = "Type3"
    NOT_STABLE = "NotStable"


@dataclass(frozen=True)
class RayWeights:
    """Degrees ``P^2 . D_i`` of the toric divisors, up to a common scale."""

    w: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.w)
        if any(x <= 0 for x in w):
            raise ValueError("ray weights must be positive")
        object.__setattr__(self, "w", w)

    @classmethod
    def unit(cls, space: Space = Space.P3) -> "RayWeights":
        return cls((Fraction(1),) * space.ray_count)

    @classmethod
    def p2p1(cls, tau) -> "RayWeights":
        """Weights for ``P = a H + a' H'`` with ``tau = a / (2 a')``."""
        tau = Fraction(tau)
        return cls((Fraction(1),) * 3 + (tau, tau))

    def scaled(self, k) -> "RayWeights":
        return RayWeights(tuple(Fraction(k) * x for x in self.w))


@dataclass(frozen=True)
class StabilityVerdict:
    """``witness`` is the offending block, ``()`` for the generic point."""

    status: Status
    witness: tuple[int, ...] | None = None

    @property
    def stable(self) -> bool:
        return self.status is Status.STABLE


def block_weight(d: ToricDatum, wts: RayWeights, block: Sequence[int]) -> Fraction:
    return sum((wts.w[i] * d.v[i] for i in block), Fraction(0))


def total_weight(d: ToricDatum, wts: RayWeights) -> Fraction:
    return sum((wts.w[i] * x for i, x in enumerate(d.v)), Fraction(0))


def is_mu_stable(d: ToricDatum, wts: RayWeights) -> StabilityVerdict:
    if len(wts.w) != d.space.ray_count:
        raise ValueError("one weight per ray is required")
    total = total_weight(d, wts)
    if total == 0:
        # twist of O + O
        return StabilityVerdict(Status.DECOMPOSABLE, ())
    weights = [(block_weight(d, wts, b), b) for b in d.pattern.blocks]
    heaviest, worst = max(weights, key=lambda t: t[0])
    if 2 * heaviest > total:
        return StabilityVerdict(Status.UNSTABLE, worst)
    if len(d.pattern) <= 2:
        # all flags lie in two lines: a split sheaf with summands of equal slope
        return StabilityVerdict(Status.DECOMPOSABLE, worst)
    if 2 * heaviest < total:
        return StabilityVerdict(Status.STABLE)
    return StabilityVerdict(Status.STRICTLY_SEMISTABLE, worst)


def _distinct(pattern: CollisionPattern, *rays: int) -> bool:
    return len({pattern.block_of(r) for r in rays}) == len(rays)


def classify_p3(d: ToricDatum) -> P3Type:
    """Sort a P^3 datum into the three stable types, literally by the
    defining inequalities and coincidence conditions of each type."""
    if d.space is not Space.P3:
        raise ValueError("classify_p3 needs a datum on P3")
    v, pat = d.v, d.pattern
    rays = range(4)

    if all(x > 0 for x in v):
        if _distinct(pat, *rays) and all(2 * v[i] < sum(v) for i in rays):
            return P3Type.TYPE1
        for i in rays:
            for j in rays:
                if j <= i:
                    continue
                k, l = (x for x in rays if x not in (i, j))
                if (
                    v[i] + v[j] < v[k] + v[l]
                    and v[k] < v[i] + v[j] + v[l]
                    and v[l] < v[i] + v[j] + v[k]
                    and pat.block_of(i) == pat.block_of(j)
                    and _distinct(pat, j, k, l)
                ):
                    return P3Type.TYPE2
        return P3Type.NOT_STABLE

    zeros = [i for i in rays if v[i] == 0]
    if len(zeros) == 1:
        j, k, l = (x for x in rays if x != zeros[0])
        if (
            v[j] < v[k] + v[l]
            and v[k] < v[j] + v[l]
            and v[l] < v[j] + v[k]
            and _distinct(pat, j, k, l)
        ):
            return P3Type.TYPE3
    return P3Type.NOT_STABLE
