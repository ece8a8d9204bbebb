"""Sparse exact Laurent polynomials in ``q`` and in ``(p, q)``.

Coefficients are Python ints, so nothing ever wraps around. Zero
coefficients are never stored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


def _pruned(items: Iterable[tuple]) -> dict:
    out: dict = {}
    for key, c in items:
        out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


def _monomial(coeff: int, first: bool, factors: list[str]) -> str:
    mag = abs(coeff)
    if not factors:
        body = str(mag)
    elif mag == 1:
        body = "*".join(factors)
    else:
        body = "*".join([str(mag)] + factors)
    if first:
        return ("-" if coeff < 0 else "") + body
    return (" - " if coeff < 0 else " + ") + body


def _power(var: str, e: int) -> list[str]:
    if e == 0:
        return []
    if e == 1:
        return [var]
    return [f"{var}^{e}"]


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial ``sum c_e q^e`` stored as ``{e: c}``."""

    terms: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", _pruned(self.terms.items()))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return poly_add(self, other)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return poly_add(self, -other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: other * c for e, c in self.terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, exponent: int) -> int:
        return self.terms.get(exponent, 0)

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def degree(self) -> int | None:
        return max(self.terms) if self.terms else None

    def valuation(self) -> int | None:
        return min(self.terms) if self.terms else None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [
            _monomial(self.terms[e], i == 0, _power("q", e))
            for i, e in enumerate(sorted(self.terms))
        ]
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> dict:
        return {"terms": [{"p": 0, "q": e, "c": str(self.terms[e])} for e in sorted(self.terms)]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        out = {}
        for t in data["terms"]:
            if int(t.get("p", 0)) != 0:
                raise ValueError("univariate polynomial has a nonzero p-exponent")
            out[int(t["q"])] = out.get(int(t["q"]), 0) + int(t["c"])
        return cls(out)


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(_pruned(list(a.terms.items()) + list(b.terms.items())))


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out: dict[int, int] = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return LaurentPoly(out)


@dataclass(frozen=True)
class Window:
    """Inclusive exponent box for truncated bivariate series.

    ``None`` for a bound means that side is unbounded.
    """

    p_min: int | None = None
    p_max: int | None = None
    q_min: int | None = None
    q_max: int | None = None

    def contains(self, p: int, q: int) -> bool:
        return (
            (self.p_min is None or p >= self.p_min)
            and (self.p_max is None or p <= self.p_max)
            and (self.q_min is None or q >= self.q_min)
            and (self.q_max is None or q <= self.q_max)
        )

    def is_empty(self) -> bool:
        return (
            self.p_min is not None and self.p_max is not None and self.p_min > self.p_max
        ) or (
            self.q_min is not None and self.q_max is not None and self.q_min > self.q_max
        )

    def is_finite(self) -> bool:
        return None not in (self.p_min, self.p_max, self.q_min, self.q_max)

    def to_json(self) -> dict:
        return {"p_min": self.p_min, "p_max": self.p_max, "q_min": self.q_min, "q_max": self.q_max}


UNBOUNDED = Window()


@dataclass(frozen=True)
class BiLaurentPoly:
    """Truncated Laurent series in ``p`` and ``q``: ``{(p_exp, q_exp): c}``.

    Every stored term lies inside ``window``; terms outside are unknown,
    not zero.
    """

    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)
    window: Window = UNBOUNDED

    def __post_init__(self):
        terms = _pruned(self.terms.items())
        bad = [k for k in terms if not self.window.contains(*k)]
        if bad:
            raise ValueError(f"terms {sorted(bad)[:3]} lie outside window {self.window}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def monomial(cls, p: int, q: int, coeff: int = 1, window: Window = UNBOUNDED) -> "BiLaurentPoly":
        return cls({(p, q): coeff} if window.contains(p, q) else {}, window)

    @classmethod
    def from_univariate(cls, poly: LaurentPoly, p: int = 0, window: Window = UNBOUNDED) -> "BiLaurentPoly":
        return cls({(p, e): c for e, c in poly.terms.items() if window.contains(p, e)}, window)

    def truncate(self, window: Window) -> "BiLaurentPoly":
        return BiLaurentPoly({k: c for k, c in self.terms.items() if window.contains(*k)}, window)

    def __add__(self, other: "BiLaurentPoly") -> "BiLaurentPoly":
        if self.window != other.window:
            raise ValueError("cannot add series truncated to different windows")
        return BiLaurentPoly(_pruned(list(self.terms.items()) + list(other.terms.items())), self.window)

    def __neg__(self) -> "BiLaurentPoly":
        return BiLaurentPoly({k: -c for k, c in self.terms.items()}, self.window)

    def scale(self, k: int) -> "BiLaurentPoly":
        return BiLaurentPoly({key: k * c for key, c in self.terms.items()}, self.window)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiLaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def coeff(self, p: int, q: int) -> int:
        return self.terms.get((p, q), 0)

    def p_slice(self, p: int) -> LaurentPoly:
        """Coefficient of ``p^p`` as a polynomial in ``q``."""
        return LaurentPoly({q: c for (pe, q), c in self.terms.items() if pe == p})

    def sorted_keys(self) -> list[tuple[int, int]]:
        return sorted(self.terms, key=lambda k: (k[1], k[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (pe, qe) in enumerate(self.sorted_keys()):
            parts.append(_monomial(self.terms[(pe, qe)], i == 0, _power("p", pe) + _power("q", qe)))
        return "".join(parts)

    def __repr__(self) -> str:
        return f"BiLaurentPoly({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "terms": [{"p": pe, "q": qe, "c": str(self.terms[(pe, qe)])} for pe, qe in self.sorted_keys()]
        }

    @classmethod
    def from_json(cls, data: dict, window: Window = UNBOUNDED) -> "BiLaurentPoly":
        out: dict[tuple[int, int], int] = {}
        for t in data["terms"]:
            key = (int(t["p"]), int(t["q"]))
            out[key] = out.get(key, 0) + int(t["c"])
        return cls(out, window)


def bilaurent_mul(a: BiLaurentPoly, b: BiLaurentPoly, window: Window) -> BiLaurentPoly:
    """Product of ``a`` and ``b`` truncated to ``window``.

    The operands must already be complete on everything that can reach
    ``window``; no attempt is made to check that.
    """
    out: dict[tuple[int, int], int] = {}
    for (p1, q1), c1 in a.terms.items():
        for (p2, q2), c2 in b.terms.items():
            key = (p1 + p2, q1 + q2)
            if window.contains(*key):
                out[key] = out.get(key, 0) + c1 * c2
    return BiLaurentPoly(out, window)


def macmahon(n: int) -> LaurentPoly:
    """Degrees ``0..n`` of ``M(q) = prod_{k>0} (1 - q^k)^(-k)``.

    Uses ``m * a_m = sum_{k=1}^m sigma_2(k) a_{m-k}``, which follows from
    taking the logarithmic derivative of the product.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    sigma2 = [0] * (n + 1)
    for d in range(1, n + 1):
        for m in range(d, n + 1, d):
            sigma2[m] += d * d
    a = [1] + [0] * n
    for m in range(1, n + 1):
        total = sum(sigma2[k] * a[m - k] for k in range(1, m + 1))
        a[m], rem = divmod(total, m)
        assert rem == 0
    return LaurentPoly(dict(enumerate(a)))
