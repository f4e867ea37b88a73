"""Atlas entries, JSONL persistence, and batch tuple enumeration.

One JSON object per line, keys sorted, no timestamps: files are
byte-identical across runs and worker counts. Wall-time is serialized as 0
unless real timings are explicitly requested, since the schema carries an
`ms` field but reproducibility wins.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .classifier import CensusRecord
from .families import FamilyVerdict
from .words import is_admissible

ATLAS_SCHEMA_VERSION = 1

FAMILIES = ("gamma", "lambda", "census")


@dataclass(frozen=True)
class AtlasEntry:
    schlafli: tuple[int, ...]
    family: str
    group_order: int
    flag_count: int
    tight: bool
    orientable: bool
    string_c_group: bool
    claims: dict[str, bool]
    ms: int = 0
    source: str | None = None

    def to_json_line(self) -> str:
        obj = {
            "schema_version": ATLAS_SCHEMA_VERSION,
            "tuple": list(self.schlafli),
            "family": self.family,
            "group_order": self.group_order,
            "flag_count": self.flag_count,
            "tight": self.tight,
            "orientable": self.orientable,
            "string_c_group": self.string_c_group,
            "claims": self.claims,
            "ms": self.ms,
        }
        if self.source is not None:
            obj["source"] = self.source
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class AtlasFormatError(ValueError):
    pass


def entry_from_json_line(line: str) -> AtlasEntry:
    """Parse and re-validate one serialized entry."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise AtlasFormatError(f"bad JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise AtlasFormatError("entry is not an object")
    if obj.get("schema_version") != ATLAS_SCHEMA_VERSION:
        raise AtlasFormatError(f"unsupported schema_version {obj.get('schema_version')}")
    required = {
        "tuple": list,
        "family": str,
        "group_order": int,
        "flag_count": int,
        "tight": bool,
        "orientable": bool,
        "string_c_group": bool,
        "claims": dict,
        "ms": int,
    }
    for key, kind in required.items():
        if key not in obj:
            raise AtlasFormatError(f"missing key {key!r}")
        if not isinstance(obj[key], kind) or isinstance(obj[key], bool) != (kind is bool):
            raise AtlasFormatError(f"key {key!r} is not a {kind.__name__}")
    if obj["family"] not in FAMILIES:
        raise AtlasFormatError(f"unknown family {obj['family']!r}")
    entries = obj["tuple"]
    if not all(isinstance(p, int) and p >= 2 for p in entries):
        raise AtlasFormatError(f"bad tuple {entries}")
    claims = obj["claims"]
    if not all(isinstance(v, bool) for v in claims.values()):
        raise AtlasFormatError("claims must be boolean")
    if all(claims.values()) and obj["flag_count"] != obj["group_order"]:
        raise AtlasFormatError("verified entry with flag_count != group_order")
    return AtlasEntry(
        schlafli=tuple(entries),
        family=obj["family"],
        group_order=obj["group_order"],
        flag_count=obj["flag_count"],
        tight=obj["tight"],
        orientable=obj["orientable"],
        string_c_group=obj["string_c_group"],
        claims=dict(claims),
        ms=obj["ms"],
        source=obj.get("source"),
    )


def load_atlas(path: str) -> list[AtlasEntry]:
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                entries.append(entry_from_json_line(line))
            except AtlasFormatError as exc:
                raise AtlasFormatError(f"{path}:{no}: {exc}") from None
    return entries


def entry_from_verdict(verdict: FamilyVerdict, ms: int = 0) -> AtlasEntry:
    return AtlasEntry(
        schlafli=verdict.schlafli,
        family=verdict.family,
        group_order=verdict.group_order,
        flag_count=verdict.flag_count,
        tight=verdict.tight,
        orientable=verdict.profile.orientable,
        string_c_group=verdict.profile.is_string_c_group,
        claims=dict(verdict.claims),
        ms=ms,
    )


def entry_from_census_record(record: CensusRecord, ms: int = 0) -> AtlasEntry:
    claims = {
        "order": record.order == 2 * record.schlafli[0] * record.schlafli[1],
        "type": record.profile.schlafli == record.schlafli,
        "string_c_group": record.profile.is_string_c_group,
        "tight": record.tight,
        "polytope": record.polytope_ok,
        "flags_equal_order": True,
    }
    if record.isomorphic_to_gamma is not None:
        claims["isomorphic_to_gamma"] = record.isomorphic_to_gamma
    if record.isomorphic_to_lambda is not None:
        claims["isomorphic_to_lambda"] = record.isomorphic_to_lambda
    return AtlasEntry(
        schlafli=record.schlafli,
        family="census",
        group_order=record.order,
        flag_count=record.order,
        tight=record.tight,
        orientable=record.orientable,
        string_c_group=record.profile.is_string_c_group,
        claims=claims,
        ms=ms,
        source="census",
    )


def admissible_tuples(max_flags: int, max_rank: int) -> list[tuple[int, ...]]:
    """Admissible tuples with 2*product <= max_flags and rank <= max_rank.

    Tuple lengths run from 2 to max_rank - 1 (polytope rank = length + 1),
    entries are >= 2, and the result is in ascending lexicographic order.
    """
    bound = max_flags // 2
    found: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], product: int, length: int) -> None:
        if len(prefix) == length:
            if is_admissible(prefix):
                found.append(prefix)
            return
        p = 2
        while product * p <= bound:
            extend(prefix + (p,), product * p, length)
            p += 1

    for length in range(2, max_rank):
        extend((), 1, length)
    found.sort()
    return found


def write_jsonl_atomic(path: str, lines: Sequence[str]) -> None:
    """Write via a temp file and rename; partial output never survives."""
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_batch(tasks: Sequence, worker: Callable, jobs: int = 1) -> list:
    """Run one task per tuple; results come back in task order regardless of
    scheduling, so output is identical for any worker count."""
    if jobs <= 1:
        return [worker(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))
