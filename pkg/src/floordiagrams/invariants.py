"""Invariant tables keyed by (polygon, genus, conjugate pair count).

The pair count s refines genus-0 values: s = 0 is the plain refined count,
and each extra pair is removed through the blow-up recursion

    value(polygon, s) = value(polygon, s-1) - 2 * value(corner_cut(polygon), s-1).

Cutting a corner of depth 2 models the class d - 2E after blowing up a toric
fixed point.  When no corner admits the cut there are two cases.  If the
polygon has no interior lattice points the class d - 2E has negative
arithmetic genus, so it carries no curves and the correction term vanishes.
Otherwise the class is nonempty but none of its curves are reachable by a
toric-fixed-point cut (every candidate corner either lacks room or sits on a
divisor of negative self-intersection, where the fixed point is not a generic
point of the surface); the recursion is stuck and we raise rather than return
a wrong value.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .floordiag import refined_invariant as _direct_invariant
from .laurent import LaurentPoly
from .polygon import DEGENERATE, HPolygon, is_degenerate

ENGINE_VERSION = "0.1.0"
CACHE_ENV_VAR = "FLOORDIAGRAMS_CACHE"


class InvariantError(ValueError):
    pass


def _stuck_error(polygon) -> InvariantError:
    """Error for a nonempty class d - 2E that no corner cut reaches."""
    if polygon.has_room_for_cut():
        detail = (
            "every corner with room for a depth-2 cut touches a divisor of "
            "negative self-intersection"
        )
    else:
        detail = "no corner has room for a depth-2 cut"
    return InvariantError(
        f"pair recursion is stuck on {polygon!r}: the class d - 2E is "
        f"nonempty but {detail}"
    )


def max_pairs(polygon) -> int:
    """Largest admissible pair count: half the genus-0 point count."""
    if is_degenerate(polygon):
        return 0
    return polygon.point_count(0) // 2


@dataclass(frozen=True)
class InvariantKey:
    """Canonical table key; polygon part is the canonical vertex tuple or "degenerate"."""

    polygon: tuple | str
    genus: int
    pairs: int

    @classmethod
    def make(cls, polygon, genus: int, pairs: int) -> "InvariantKey":
        if genus < 0 or pairs < 0:
            raise InvariantError("genus and pairs must be >= 0")
        if pairs > 0 and genus != 0:
            raise InvariantError("conjugate pairs only refine genus 0")
        if is_degenerate(polygon):
            return cls("degenerate", genus, pairs)
        if pairs > max_pairs(polygon):
            raise InvariantError(
                f"pairs = {pairs} exceeds half the point count of {polygon!r}"
            )
        return cls(polygon.canonical_key(), genus, pairs)


@dataclass(frozen=True)
class InvariantRecord:
    value: LaurentPoly
    extrapolated: bool


class InvariantTable:
    """Memoized store of refined invariants with an optional JSONL cache.

    Each record carries an extrapolated flag: True when some recursion step
    was taken at a polygon whose toric surface is not a smooth del Pezzo of
    degree >= 7, i.e. beyond the range where the blow-up recursion is backed
    by direct diagram counts.
    """

    def __init__(self, cache_path: str | None = None, verify_cache: bool = False):
        self._records: dict[InvariantKey, InvariantRecord] = {}
        self._cache_path = cache_path or os.environ.get(CACHE_ENV_VAR)
        self._verify_cache = verify_cache
        self._stale_cache_lines = 0
        if self._cache_path and os.path.exists(self._cache_path):
            self._load_cache()

    # -- public API --------------------------------------------------------

    def refined_invariant(self, polygon, genus: int) -> LaurentPoly:
        return self.record(polygon, genus, 0).value

    def refined_descendant(self, polygon, pairs: int) -> LaurentPoly:
        return self.record(polygon, 0, pairs).value

    def gw_value(self, polygon, genus: int) -> int:
        """Count of complex curves: the refined value at q = 1."""
        return self.refined_invariant(polygon, genus).evaluate(1)

    def welschinger_value(self, polygon, pairs: int) -> int:
        """Signed real count with the given conjugate pairs: value at q = -1."""
        return self.refined_descendant(polygon, pairs).evaluate(-1)

    def record(self, polygon, genus: int, pairs: int) -> InvariantRecord:
        key = InvariantKey.make(polygon, genus, pairs)
        try:
            return self._records[key]
        except KeyError:
            pass
        rec = self._compute(polygon, genus, pairs)
        self._records[key] = rec
        self._append_cache(key, rec)
        return rec

    def items(self):
        return tuple(self._records.items())

    # -- computation ---------------------------------------------------------

    def _compute(self, polygon, genus: int, pairs: int) -> InvariantRecord:
        if is_degenerate(polygon):
            return InvariantRecord(LaurentPoly.zero(), False)
        if pairs == 0:
            return InvariantRecord(_direct_invariant(polygon, genus), False)
        sub_full = self.record(polygon, 0, pairs - 1)
        step_extrapolated = not polygon.has_small_del_pezzo_fan()
        corners = polygon.admissible_cut_corners()
        if corners:
            cut = polygon.corner_cut(corners[0])
            sub_cut = self.record(cut, 0, pairs - 1)
            value = sub_full.value - 2 * sub_cut.value
            extrapolated = (
                step_extrapolated or sub_full.extrapolated or sub_cut.extrapolated
            )
        elif polygon.interior_lattice_count() == 0:
            # no interior points: d - 2E has negative arithmetic genus, so the
            # correction term is an empty count
            value = sub_full.value
            extrapolated = step_extrapolated or sub_full.extrapolated
        else:
            raise _stuck_error(polygon)
        return InvariantRecord(value, extrapolated)

    def descendant_value_set(self, polygon, pairs: int) -> tuple[LaurentPoly, ...]:
        """Every value reachable by varying the cut corner at every step.

        The recursion claims corner independence, so this should always be a
        single value; the sweep is what the independence test runs.
        """
        memo: dict[tuple, tuple[LaurentPoly, ...]] = {}

        def sweep(poly, s) -> tuple[LaurentPoly, ...]:
            if is_degenerate(poly):
                return (LaurentPoly.zero(),)
            key = (poly.canonical_key(), s)
            try:
                return memo[key]
            except KeyError:
                pass
            if s == 0:
                out = (self.refined_invariant(poly, 0),)
            else:
                base = sweep(poly, s - 1)
                corners = poly.admissible_cut_corners()
                if not corners:
                    if poly.interior_lattice_count() > 0:
                        raise _stuck_error(poly)
                    out = base
                else:
                    values = set()
                    for corner in corners:
                        for v_full in base:
                            for v_cut in sweep(poly.corner_cut(corner), s - 1):
                                values.add(v_full - 2 * v_cut)
                    out = tuple(sorted(values, key=lambda p: p.items_doubled()))
            memo[key] = out
            return out

        return sweep(polygon, pairs)

    def recursion_trace(self, polygon, pairs: int) -> dict:
        """Full unfolding of the recursion, for mismatch and blockage reports."""
        if is_degenerate(polygon):
            return {"polygon": "degenerate", "pairs": pairs, "value": {}}
        node = {
            "polygon": [list(v) for v in polygon.vertices],
            "pairs": pairs,
        }
        try:
            rec = self.record(polygon, 0, pairs)
        except InvariantError as err:
            node["error"] = str(err)
        else:
            node["value"] = rec.value.to_json_dict()
            node["extrapolated"] = rec.extrapolated
        if pairs > 0:
            corners = polygon.admissible_cut_corners()
            if corners:
                node["corner"] = list(corners[0])
                node["children"] = [
                    self.recursion_trace(polygon, pairs - 1),
                    self.recursion_trace(polygon.corner_cut(corners[0]), pairs - 1),
                ]
            else:
                node["corner"] = None
                node["children"] = [self.recursion_trace(polygon, pairs - 1)]
        return node

    # -- cache ---------------------------------------------------------------

    def _load_cache(self):
        loaded: dict[InvariantKey, InvariantRecord] = {}
        with open(self._cache_path, encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                entry = json.loads(line)
                if entry.get("engine") != ENGINE_VERSION:
                    self._stale_cache_lines += 1
                    continue
                if entry["polygon"] == "degenerate":
                    key_poly = "degenerate"
                else:
                    key_poly = tuple(tuple(v) for v in entry["polygon"])
                key = InvariantKey(key_poly, entry["genus"], entry["pairs"])
                rec = InvariantRecord(
                    LaurentPoly.from_json_dict(entry["coeffs"]),
                    bool(entry["extrapolated"]),
                )
                if key in loaded and loaded[key].value != rec.value:
                    raise InvariantError(f"conflicting cache entries for {key}")
                loaded[key] = rec
        if self._verify_cache:
            scratch = InvariantTable()
            for key, rec in loaded.items():
                if key.polygon == "degenerate":
                    continue
                fresh = scratch.record(HPolygon(key.polygon), key.genus, key.pairs)
                if fresh.value != rec.value:
                    raise InvariantError(
                        f"cache verification failed for {key}: "
                        f"{rec.value.to_json_dict()} cached, "
                        f"{fresh.value.to_json_dict()} recomputed"
                    )
        self._records.update(loaded)

    def _append_cache(self, key: InvariantKey, rec: InvariantRecord):
        if not self._cache_path:
            return
        entry = {
            "engine": ENGINE_VERSION,
            "polygon": "degenerate"
            if key.polygon == "degenerate"
            else [list(v) for v in key.polygon],
            "genus": key.genus,
            "pairs": key.pairs,
            "coeffs": rec.value.to_json_dict(),
            "extrapolated": rec.extrapolated,
        }
        with open(self._cache_path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps(entry) + "\n")

    def cache_stats(self) -> dict:
        return {
            "path": self._cache_path,
            "records": len(self._records),
            "stale_lines": self._stale_cache_lines,
        }
