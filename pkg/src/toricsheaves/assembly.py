"""Torsion free generating function assembled over reflexive hulls.

Each fixed reflexive hull of type ``Y`` with vector ``v`` contributes its
Quot-scheme series ``Q_{Y,v}(p, q)`` shifted by ``p^{c2} q^{C_Y(v)}``. The
Quot series themselves are external data, supplied by a provider.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .chern import IntegralityError
from .enumeration import EULER, MULTIPLICITY, d_sets, second_chern
from .laurent import BiLaurentPoly, Window, bilaurent_mul

SHIFT_CONVENTION = "GK-section4"


class QSeriesError(ValueError):
    """Malformed, duplicate or missing Quot-series data."""


@dataclass(frozen=True)
class QSeriesEntry:
    series: BiLaurentPoly
    p_min: int


@dataclass(frozen=True)
class QSeriesProvider:
    """Lookup ``(type, v) -> Q_{type,v}(p, q)``.

    The key deliberately omits the coincidence pattern: the Euler
    characteristics of the Quot schemes do not depend on it.
    """

    entries: Mapping[tuple[int, tuple[int, ...]], QSeriesEntry] = field(default_factory=dict)
    default_unit: bool = False

    @classmethod
    def unit(cls) -> "QSeriesProvider":
        return cls({}, default_unit=True)

    @property
    def min_p_exponent(self) -> int:
        """Lowest ``p``-power any lookup can return."""
        if self.default_unit or not self.entries:
            return 0
        return min(e.p_min for e in self.entries.values())

    def lookup(self, which: int, v) -> BiLaurentPoly:
        if self.default_unit:
            return BiLaurentPoly({(0, 0): 1})
        try:
            return self.entries[(which, tuple(v))].series
        except KeyError:
            raise QSeriesError(f"no Quot series for type {which}, v={tuple(v)}") from None


def _parse_entry(raw: dict) -> tuple[tuple[int, tuple[int, ...]], QSeriesEntry]:
    try:
        which = int(raw["type"])
        v = tuple(int(x) for x in raw["v"])
        window = Window(int(raw["p_min"]), int(raw["p_max"]), int(raw["q_min"]), int(raw["q_max"]))
        terms = raw["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise QSeriesError(f"malformed entry: {exc}") from exc
    if which not in (1, 2, 3) or len(v) != 4 or any(x < 0 for x in v):
        raise QSeriesError(f"bad key type={which} v={v}")
    if window.p_min < 0:
        raise QSeriesError("p_min must be nonnegative")
    if window.is_empty():
        raise QSeriesError(f"empty window in entry {which} {v}")
    try:
        series = BiLaurentPoly.from_json({"terms": terms}, window)
    except (KeyError, TypeError, ValueError) as exc:
        raise QSeriesError(f"entry {which} {v}: {exc}") from exc
    return (which, v), QSeriesEntry(series, window.p_min)


def parse_qseries(data: dict) -> QSeriesProvider:
    if not isinstance(data, dict):
        raise QSeriesError("Q-series file must hold a JSON object")
    if data.get("shift_convention") != SHIFT_CONVENTION:
        raise QSeriesError(f"shift_convention must be {SHIFT_CONVENTION!r}")
    entries: dict = {}
    for raw in data.get("entries", []):
        key, entry = _parse_entry(raw)
        if key in entries:
            raise QSeriesError(f"duplicate entry for type {key[0]}, v={key[1]}")
        entries[key] = entry
    return QSeriesProvider(entries)


def load_qseries(path) -> QSeriesProvider:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise QSeriesError(f"{path}: not valid JSON ({exc})") from exc
    return parse_qseries(data)


def dump_qseries(provider: QSeriesProvider) -> dict:
    out = []
    for (which, v), entry in sorted(provider.entries.items()):
        w = entry.series.window
        out.append(
            {
                "type": which,
                "v": list(v),
                "p_min": w.p_min,
                "p_max": w.p_max,
                "q_min": w.q_min,
                "q_max": w.q_max,
                "terms": entry.series.to_json()["terms"],
            }
        )
    return {"shift_convention": SHIFT_CONVENTION, "entries": out}


def assemble_torsionfree(c1: int, provider: QSeriesProvider, window: Window, workers: int = 1) -> BiLaurentPoly:
    """``G_{c1}(p, q)`` truncated to ``window``.

    Only reflexive hulls whose ``c2`` can still reach ``window`` are
    visited: a term has ``p``-degree at least ``c2 + provider.min_p_exponent``.
    """
    if c1 not in (-1, 0):
        raise ValueError("c1 must be normalised to -1 or 0")
    if not window.is_finite():
        raise ValueError("assembly needs a finite window")
    total = BiLaurentPoly({}, window)
    if window.is_empty():
        return total
    for c2 in range(1, window.p_max - provider.min_p_exponent + 1):
        for which, elements in d_sets(c1, c2, workers=workers).items():
            sign = EULER[which] * MULTIPLICITY[which]
            for e in elements:
                p_exp = second_chern(which, c1, e.v)
                if p_exp.denominator != 1:
                    raise IntegralityError(f"p-exponent {p_exp} for {e} is not an integer")
                shift = BiLaurentPoly({(int(p_exp), e.exponent): sign})
                total = total + bilaurent_mul(provider.lookup(which, e.v), shift, window)
    return total
