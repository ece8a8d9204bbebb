"""Toric data ``(u, v, p)`` of equivariant rank 2 reflexive sheaves.

The points ``p_i`` in P^1 are only ever recorded through which of them
coincide (a set partition of the rays with ``v_i > 0``). Rays are
0-indexed: ``0..3`` on P^3, and ``0, 1, 2`` (H-rays) then ``3, 4``
(H'-rays) on P^2 x P^1.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class ParityError(ValueError):
    """No equivariant lift has the requested first Chern class."""


class Space(enum.Enum):
    P3 = "P3"
    P2xP1 = "P2xP1"

    @property
    def ray_count(self) -> int:
        return 4 if self is Space.P3 else 5

    @property
    def ray_classes(self) -> tuple[tuple[int, ...], ...]:
        """Rays grouped by divisor class (H, then H' on P^2 x P^1)."""
        if self is Space.P3:
            return ((0, 1, 2, 3),)
        return ((0, 1, 2), (3, 4))

    @classmethod
    def parse(cls, text: str) -> "Space":
        key = text.strip().lower().replace("x", "").replace("_", "")
        if key == "p3":
            return cls.P3
        if key in ("p2p1",):
            return cls.P2xP1
        raise ValueError(f"unknown space {text!r}")


@dataclass(frozen=True)
class CollisionPattern:
    """Set partition of the active rays; one block per distinct point."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1))
        if any(not b for b in blocks):
            raise ValueError("empty block in collision pattern")
        flat = [r for b in blocks for r in b]
        if len(flat) != len(set(flat)):
            raise ValueError("collision pattern blocks overlap")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_label", {r: i for i, b in enumerate(blocks) for r in b})

    @classmethod
    def singletons(cls, rays: Iterable[int]) -> "CollisionPattern":
        return cls(tuple((r,) for r in rays))

    @classmethod
    def one_block(cls, rays: Iterable[int]) -> "CollisionPattern":
        rays = tuple(rays)
        return cls((rays,) if rays else ())

    @property
    def rays(self) -> frozenset[int]:
        return frozenset(self._label)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, ray: int) -> int:
        try:
            return self._label[ray]
        except KeyError:
            raise ValueError(f"ray {ray} is not active in this pattern") from None

    def restrict(self, rays: Iterable[int]) -> "CollisionPattern":
        keep = set(rays)
        return CollisionPattern(tuple(t for t in (tuple(r for r in b if r in keep) for b in self.blocks) if t))

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def p_ij(pattern: CollisionPattern, i: int, j: int) -> int:
    """``1 - dim(p_i cap p_j)``: 0 when the two points coincide."""
    if i == j:
        raise ValueError("p_ij needs two distinct rays")
    return 0 if pattern.block_of(i) == pattern.block_of(j) else 1


def p_ijk(pattern: CollisionPattern, i: int, j: int, k: int) -> int:
    if len({i, j, k}) != 3:
        raise ValueError("p_ijk needs three distinct rays")
    bi, bj, bk = pattern.block_of(i), pattern.block_of(j), pattern.block_of(k)
    return 0 if bi == bj == bk else 1


@dataclass(frozen=True)
class ToricDatum:
    space: Space
    u: tuple[int, ...]
    v: tuple[int, ...]
    pattern: CollisionPattern

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        n = self.space.ray_count
        if len(self.u) != n or len(self.v) != n:
            raise ValueError(f"{self.space.value} needs {n} entries in u and v")
        if any(x < 0 for x in self.v):
            raise ValueError("v must be nonnegative")
        if self.pattern.rays != self.active_rays:
            raise ValueError("collision pattern must cover exactly the rays with v > 0")

    @property
    def active_rays(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.v) if x > 0)

    def to_json(self) -> dict:
        return {
            "space": self.space.value,
            "u": list(self.u),
            "v": list(self.v),
            "pattern": self.pattern.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ToricDatum":
        return cls(
            Space(data["space"]),
            tuple(data["u"]),
            tuple(data["v"]),
            CollisionPattern(tuple(tuple(b) for b in data["pattern"])),
        )


def u_from_c1(space: Space, c1, v: Sequence[int]) -> tuple[int, ...]:
    """Sliced ``u`` with the requested ``c1``.

    All ``u_i`` vanish except on the last ray of each divisor class, which
    absorbs ``-(c1 + sum v)/2`` for that class. ``c1`` is an int on P^3 and
    a pair ``(f, f')`` on P^2 x P^1.
    """
    classes = space.ray_classes
    c1s = (c1,) if space is Space.P3 else tuple(c1)
    if len(c1s) != len(classes):
        raise ValueError(f"c1 for {space.value} needs {len(classes)} component(s)")
    u = [0] * space.ray_count
    for c, rays in zip(c1s, classes):
        total = c + sum(v[i] for i in rays)
        if total % 2:
            raise ParityError(f"c1 + sum(v) = {total} is odd on rays {rays}")
        u[rays[-1]] = -total // 2
    return tuple(u)


def euler_m0n(m: int) -> int:
    """Euler characteristic of ``m`` distinct labelled points on P^1 mod PGL(2).

    This is ``M_{0,m}``, with ``e = (-1)^(m-3) (m-3)!``.
    """
    if m < 3:
        raise ValueError("fewer than three points is not a rigid configuration")
    return (-1) ** (m - 3) * math.factorial(m - 3)


def _set_partitions(items: tuple[int, ...]):
    # restricted growth strings give lexicographic order of membership vectors
    n = len(items)
    if n == 0:
        yield ()
        return

    def rec(pos: int, labels: list[int], top: int):
        if pos == n:
            blocks: list[list[int]] = [[] for _ in range(top)]
            for item, lab in zip(items, labels):
                blocks[lab].append(item)
            yield tuple(tuple(b) for b in blocks)
            return
        for lab in range(top + 1):
            labels.append(lab)
            yield from rec(pos + 1, labels, max(top, lab + 1))
            labels.pop()

    yield from rec(0, [], 0)


@lru_cache(maxsize=None)
def _patterns_cached(rays: tuple[int, ...]) -> tuple[CollisionPattern, ...]:
    return tuple(CollisionPattern(b) for b in _set_partitions(rays))


def enumerate_patterns(active_rays: Iterable[int]) -> list[CollisionPattern]:
    """All set partitions of ``active_rays`` in canonical order."""
    return list(_patterns_cached(tuple(sorted(active_rays))))
