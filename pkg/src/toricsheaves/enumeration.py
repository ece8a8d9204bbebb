"""Fixed-point components on P^3 and the reflexive generating function.

Elements of the three sets ``D_1, D_2, D_3`` are the ``v``-vectors of
stable toric data of type 1, 2 and 3 in canonical position (for type 2
the rays 0 and 1 share a point, for type 3 ray 3 has ``v = 0``). Each
set is found by looping over three coordinates and solving the ``c2``
equation, which is quadratic in the remaining one.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .laurent import LaurentPoly
from .toricdata import CollisionPattern, Space, ToricDatum, u_from_c1

MULTIPLICITY = {1: 1, 2: 6, 3: 4}
EULER = {1: -1, 2: 1, 3: 1}
TYPE_NAMES = {1: "Type1", 2: "Type2", 3: "Type3"}


def cubic_form(which: int, v) -> int:
    v1, v2, v3, v4 = v
    if which == 1:
        return sum(a * b * c for a, b, c in combinations(v, 3))
    if which == 2:
        return (v1 + v2) * v3 * v4
    if which == 3:
        return v1 * v2 * v3
    raise ValueError("which must be 1, 2 or 3")


def _q4(v) -> int:
    # 4 * B_1(v)
    return 2 * sum(a * b for a, b in combinations(v, 2)) - sum(a * a for a in v)


def quadratic_form(which: int, v) -> Fraction:
    b = Fraction(_q4(v), 4)
    if which == 2:
        b -= v[0] * v[1]
    elif which not in (1, 3):
        raise ValueError("which must be 1, 2 or 3")
    return b


def second_chern(which: int, c1: int, v) -> Fraction:
    return Fraction(c1 * c1, 4) + quadratic_form(which, v)


@dataclass(frozen=True, order=True)
class DSetElement:
    which: int
    v: tuple[int, int, int, int]

    @property
    def exponent(self) -> int:
        return cubic_form(self.which, self.v)

    @property
    def type_name(self) -> str:
        return TYPE_NAMES[self.which]


def canonical_pattern(which: int) -> CollisionPattern:
    if which == 1:
        return CollisionPattern.singletons(range(4))
    if which == 2:
        return CollisionPattern(((0, 1), (2,), (3,)))
    if which == 3:
        return CollisionPattern.singletons(range(3))
    raise ValueError("which must be 1, 2 or 3")


def lift(element: DSetElement, c1: int) -> ToricDatum:
    """Sliced toric datum realising ``element`` with first Chern class ``c1``."""
    return ToricDatum(Space.P3, u_from_c1(Space.P3, c1, element.v), element.v, canonical_pattern(element.which))


def _roots(b: int, disc: int, lo: int, hi: int) -> list[int]:
    """Integer roots of ``x = b +- sqrt(disc)`` inside ``[lo, hi]``."""
    if disc < 0:
        return []
    r = math.isqrt(disc)
    if r * r != disc:
        return []
    return sorted({x for x in (b - r, b + r) if lo <= x <= hi})


def _chunk_d(which: int, c1: int, c2: int, box: int, firsts: list[int]) -> list[tuple[int, ...]]:
    s = 4 * c2 - c1 * c1
    out = []
    if which == 3:
        for a in firsts:
            for b in range(1, box + 1):
                # -x^2 + 2x(a+b) + 2ab - a^2 - b^2 = s
                for x in _roots(a + b, 4 * a * b - s, 1, box):
                    v = (a, b, x, 0)
                    if (c1 + a + b + x) % 2 == 0 and a < b + x and b < a + x and x < a + b:
                        out.append(v)
        return out
    for a in firsts:
        brange = range(1, box - a + 1) if which == 2 else range(1, box + 1)
        for b in brange:
            for c in range(1, box + 1):
                s3 = a + b + c
                q3 = 2 * (a * b + a * c + b * c) - a * a - b * b - c * c
                target = s + 4 * a * b if which == 2 else s
                # -x^2 + 2 x s3 + q3 = target
                for x in _roots(s3, s3 * s3 + q3 - target, 1, box):
                    v = (a, b, c, x)
                    if (c1 + s3 + x) % 2:
                        continue
                    tot = s3 + x
                    if which == 1:
                        ok = all(2 * y < tot for y in v)
                    else:
                        ok = a + b < c + x and 2 * c < tot and 2 * x < tot
                    if ok:
                        out.append(v)
    return out


def _split(values: list[int], parts: int) -> list[list[int]]:
    return [values[i::parts] for i in range(parts) if values[i::parts]]


def enumerate_D(which: int, c1: int, c2: int, box: int | None = None, workers: int = 1) -> list[DSetElement]:
    """All elements of ``D_which(c1, c2)`` in lexicographic order.

    The default box ``4 c2 - c1^2`` is sufficient: every term of
    ``4 c2 - c1^2 = sum_i v_i (v_j + v_k + v_l - v_i)`` is a positive
    integer, so no ``v_i`` can exceed the left side.
    """
    if which not in (1, 2, 3):
        raise ValueError("which must be 1, 2 or 3")
    if c1 not in (-1, 0):
        raise ValueError("c1 must be normalised to -1 or 0")
    if c2 <= 0:
        return []
    if box is None:
        box = 4 * c2 - c1 * c1
    firsts = list(range(1, box + 1))
    if workers > 1 and len(firsts) > 1:
        chunks = _split(firsts, workers)
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = pool.map(_chunk_d, *zip(*[(which, c1, c2, box, ch) for ch in chunks]))
            found = {v for part in parts for v in part}
    else:
        found = set(_chunk_d(which, c1, c2, box, firsts))
    return [DSetElement(which, v) for v in sorted(found)]


def d_sets(c1: int, c2: int, box: int | None = None, workers: int = 1) -> dict[int, list[DSetElement]]:
    return {w: enumerate_D(w, c1, c2, box, workers) for w in (1, 2, 3)}


def grefl_p3(c1: int, c2: int, box: int | None = None, workers: int = 1) -> LaurentPoly:
    """Generating function of Euler characteristics of stable reflexive
    moduli on P^3 with fixed ``c1 in {-1, 0}`` and ``c2``, summed over ``c3``."""
    terms: dict[int, int] = {}
    for which, elements in d_sets(c1, c2, box, workers).items():
        weight = MULTIPLICITY[which] * EULER[which]
        for e in elements:
            terms[e.exponent] = terms.get(e.exponent, 0) + weight
    return LaurentPoly(terms)


def normalize_c1(c1: int, c2: int, c3: int | None = None) -> tuple[int, int, int, int | None]:
    """Twist by ``O(l)`` so that ``c1`` lands in ``{-1, 0}``.

    Returns ``(l, c1', c2', c3)``; ``c3`` is unchanged by twisting a rank 2 sheaf.
    """
    l = -((c1 + 1) // 2)
    return l, c1 + 2 * l, c2 + c1 * l + l * l, c3


@dataclass(frozen=True)
class CensusEntry:
    type: str
    v: tuple[int, int, int, int]
    multiplicity: int
    euler: int

    def to_json(self) -> dict:
        return {"type": self.type, "v": list(self.v), "multiplicity": self.multiplicity, "euler": self.euler}


def fixed_locus_census(c1: int, c2: int, c3: int, workers: int = 1) -> list[CensusEntry]:
    """Fixed-locus components with the given Chern classes, one entry per ``v``.

    ``multiplicity`` counts the coincidence patterns (6 pairs for type 2,
    4 vanishing rays for type 3) and ``euler`` is the Euler characteristic
    of each component.
    """
    out = []
    for which, elements in d_sets(c1, c2, workers=workers).items():
        for e in elements:
            if e.exponent == c3:
                out.append(CensusEntry(e.type_name, e.v, MULTIPLICITY[which], EULER[which]))
    return out


def c3_upper_bound(c1: int, c2: int) -> int:
    if c1 == -1:
        return c2 * c2
    if c1 == 0:
        return c2 * c2 - c2 + 2
    raise ValueError("c1 must be normalised to -1 or 0")


def extremal_case(c1: int, e: DSetElement) -> str | None:
    """Which listed extremal configuration ``e`` is, if any."""
    v1, v2, v3, v4 = e.v
    if c1 == -1:
        if e.which == 2 and v1 >= 1 and v2 >= 1 and sorted((v3, v4)) == sorted((1, v1 + v2)):
            return "a"
        if e.which == 3:
            for j in range(3):
                k, l = (x for x in range(3) if x != j)
                if e.v[j] == 1 and e.v[k] == e.v[l] >= 1:
                    return "b"
        return None
    if c1 == 0:
        if e.which == 1 and e.v == (1, 1, 1, 1):
            return "a"
        if e.which == 2 and e.v == (1, 1, 2, 2):
            return "b"
        if e.which == 3 and e.v == (2, 2, 2, 0):
            return "c"
        return None
    raise ValueError("c1 must be normalised to -1 or 0")


@dataclass
class AuditReport:
    c1: int
    c2_max: int
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    extremal: list[tuple[int, DSetElement, str]] = field(default_factory=list)
    attained: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        lines = [
            f"audit c1={self.c1} c2<={self.c2_max}: {self.checked} elements checked, "
            f"{len(self.extremal)} extremal, bound attained at c2 in {self.attained}"
        ]
        lines += [f"VIOLATION {v}" for v in self.violations]
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "c1": self.c1,
            "c2_max": self.c2_max,
            "checked": self.checked,
            "pass": self.ok,
            "violations": self.violations,
            "attained": self.attained,
            "extremal": [
                {"c2": c2, "type": e.type_name, "v": list(e.v), "case": case} for c2, e, case in self.extremal
            ],
        }


def hartshorne_audit(c1: int, c2_max: int, workers: int = 1) -> AuditReport:
    """Check parity, the ``c3`` bounds and the extremal classification on
    every enumerated element with ``c2 <= c2_max``."""
    if c1 not in (-1, 0):
        raise ValueError("c1 must be normalised to -1 or 0")
    if c2_max < 1:
        raise ValueError("c2_max must be at least 1")
    rep = AuditReport(c1, c2_max)
    # c2 > 0: search c2 <= 0 directly, bypassing the early return of enumerate_D
    for c2 in (-2, -1, 0):
        for which in (1, 2, 3):
            if _chunk_d(which, c1, c2, 12, list(range(1, 13))):
                rep.violations.append(f"c2={c2}: nonempty D_{which} with c2 <= 0")
    for c2 in range(1, c2_max + 1):
        bound = c3_upper_bound(c1, c2)
        hit = False
        for which, elements in d_sets(c1, c2, workers=workers).items():
            for e in elements:
                rep.checked += 1
                c3 = e.exponent
                tag = f"c2={c2} {e.type_name} v={e.v} c3={c3}"
                if second_chern(which, c1, e.v) != c2:
                    rep.violations.append(f"{tag}: c2 equation fails")
                if (c3 - c1 * c2) % 2:
                    rep.violations.append(f"{tag}: parity c3 = c1 c2 mod 2 fails")
                if not 0 <= c3 <= bound:
                    rep.violations.append(f"{tag}: outside [0, {bound}]")
                case = extremal_case(c1, e)
                if c3 == bound:
                    hit = True
                    rep.extremal.append((c2, e, case or "?"))
                    if case is None:
                        rep.violations.append(f"{tag}: extremal but matches no listed case")
                elif case is not None:
                    rep.violations.append(f"{tag}: matches case ({case}) but is not extremal")
        if hit:
            rep.attained.append(c2)
    if c1 == -1:
        missing = [c for c in range(1, c2_max + 1) if c not in rep.attained]
        if missing:
            rep.violations.append(f"bound c2^2 not attained for c2 in {missing}")
    else:
        expected = [c for c in (2, 3) if c <= c2_max]
        if rep.attained != expected:
            rep.violations.append(f"bound c2^2-c2+2 attained at {rep.attained}, expected {expected}")
    return rep


def iter_elements(c1: int, c2s: Iterable[int]):
    for c2 in c2s:
        for elements in d_sets(c1, c2).values():
            for e in elements:
                yield c2, e
