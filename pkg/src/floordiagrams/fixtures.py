"""Loader for the golden reference tables shipped with the package."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .laurent import LaurentPoly
from .polygon import HPolygon

SURFACES = ("QH", "Sigma2")


@dataclass(frozen=True)
class ReferenceRow:
    surface: str
    a: int
    b: int
    genus: int
    pairs: int
    value: LaurentPoly

    def polygon(self) -> HPolygon:
        if self.surface == "QH":
            return HPolygon.rectangle(self.a, self.b)
        return HPolygon.sigma2_trapezoid(self.a, self.b)

    def label(self) -> str:
        shape = "rect" if self.surface == "QH" else "sigma2"
        return f"{shape}:{self.a},{self.b} g={self.genus} s={self.pairs}"


def _load(path: str | None = None) -> dict:
    if path is not None:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    ref = resources.files("floordiagrams").joinpath("data/appendix_tables.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def reference_rows(path: str | None = None) -> tuple[ReferenceRow, ...]:
    """All golden rows, optionally from an alternative fixture file."""
    data = _load(path)
    rows = []
    for raw in data["rows"]:
        if raw["surface"] not in SURFACES:
            raise ValueError(f"unknown surface {raw['surface']!r}")
        rows.append(
            ReferenceRow(
                surface=raw["surface"],
                a=int(raw["a"]),
                b=int(raw["b"]),
                genus=int(raw["genus"]),
                pairs=int(raw["pairs"]),
                value=LaurentPoly.from_json_dict(raw["coeffs"]),
            )
        )
    return tuple(rows)


def reference_value(surface: str, a: int, b: int, genus: int, pairs: int = 0,
                    path: str | None = None) -> LaurentPoly:
    for row in reference_rows(path):
        if (row.surface, row.a, row.b, row.genus, row.pairs) == (
            surface, a, b, genus, pairs,
        ):
            return row.value
    raise KeyError(f"no reference row for {surface} ({a},{b}) g={genus} s={pairs}")
