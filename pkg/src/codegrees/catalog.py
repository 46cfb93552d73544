"""The data catalog: groups, records, families and literature facts.

Loading validates everything that can be validated statically: record
invariants, the witness degree*codegree = order identity on probe points,
and the polynomial identity behind the G2 cuspidal codegree.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .codegree import DataError
from .exact import IntPoly
from .families import GroupFamily, load_families
from .perms import PermGroup, load_group
from .records import GroupRecord, load_records

ENV_VAR = "CODEGREES_DATA"


@dataclass(frozen=True)
class LiteratureFact:
    """A count bound quoted from the literature, used as a trusted input."""

    name: str
    kind: str  # cod_count_min | cd_count_min
    bound: int
    source: str


def packaged_data_dir() -> Path:
    return Path(__file__).resolve().parent / "data"


def resolve_data_dir(flag: Optional[str] = None) -> Path:
    """Precedence: explicit flag, then $CODEGREES_DATA, then ./data, then packaged."""
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    local = Path("data")
    if local.is_dir():
        return local
    return packaged_data_dir()


def parse_facts(text: str) -> dict[str, LiteratureFact]:
    out: dict[str, LiteratureFact] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 3)
        if len(parts) < 3:
            raise DataError(f"bad fact line {line!r}")
        name, kind, bound = parts[0], parts[1], int(parts[2])
        if kind not in ("cod_count_min", "cd_count_min"):
            raise DataError(f"unknown fact kind {kind!r}")
        out[name] = LiteratureFact(name, kind, bound, parts[3] if len(parts) > 3 else "")
    return out


@dataclass
class Catalog:
    data_dir: Path
    groups: dict[str, Path]
    records: dict[str, GroupRecord]
    families: dict[str, GroupFamily]
    facts: dict[str, LiteratureFact]
    _loaded_groups: dict[str, PermGroup] = field(default_factory=dict)

    def group(self, name: str) -> PermGroup:
        if name not in self._loaded_groups:
            if name not in self.groups:
                raise DataError(f"no generator file for group {name!r}")
            self._loaded_groups[name] = load_group(self.groups[name])
        return self._loaded_groups[name]

    def record(self, name: str) -> GroupRecord:
        if name not in self.records:
            raise DataError(f"no record for {name!r}")
        return self.records[name]

    def family(self, name: str) -> GroupFamily:
        if name not in self.families:
            raise DataError(f"no family file for {name!r}")
        return self.families[name]

    def fact(self, name: str) -> LiteratureFact:
        if name not in self.facts:
            raise DataError(f"no literature fact for {name!r}")
        return self.facts[name]

    def group_names(self) -> list[str]:
        return sorted(self.groups)


def load_catalog(data_dir: str | Path | None = None) -> Catalog:
    base = Path(data_dir) if data_dir else resolve_data_dir()
    if not base.is_dir():
        raise DataError(f"data directory {base} does not exist")
    groups = {p.stem: p for p in sorted((base / "groups").glob("*.grp"))}
    records = load_records(base / "records") if (base / "records").is_dir() else {}
    families = load_families(base / "families") if (base / "families").is_dir() else {}
    facts: dict[str, LiteratureFact] = {}
    facts_file = base / "facts" / "literature.txt"
    if facts_file.is_file():
        facts = parse_facts(facts_file.read_text())
    catalog = Catalog(base, groups, records, families, facts)
    validate_catalog(catalog)
    return catalog


# probe points used for the witness identity checks at load time
_PROBE_POINTS = {
    "PSL2_even": [{"q": 4}, {"q": 8}, {"q": 64}],
    "PSL2_odd": [{"q": 7}, {"q": 9}, {"q": 17}, {"q": 125}],
    "Suzuki": [{"q2": 8}, {"q2": 32}],
    "G2": [{"q": 3}, {"q": 4}],
    "Ree2G2": [{"q": 27}],
    "PSL_n": [{"n": 2, "q": 2}, {"n": 2, "q": 4}, {"n": 3, "q": 3}, {"n": 4, "q": 2}],
    "PSU_n": [{"n": 2, "q": 3}, {"n": 3, "q": 2}, {"n": 4, "q": 2}],
    "B2": [{"q": 3}, {"q": 4}, {"q": 5}],
    "BC_steinberg": [{"n": 3, "q": 2}, {"n": 3, "q": 3}, {"n": 4, "q": 2}],
    "D_n": [{"n": 4, "q": 2}, {"n": 4, "q": 3}, {"n": 5, "q": 2}],
    "twoD_n": [{"n": 4, "q": 2}, {"n": 4, "q": 3}],
    "D2_even": [{"q": 4}, {"q": 8}],
    "D2_odd": [{"q": 7}, {"q": 9}],
}


def validate_catalog(catalog: Catalog) -> list[str]:
    """Run the static cross-checks; returns human-readable check lines."""
    checks: list[str] = []

    for name, record in sorted(catalog.records.items()):
        data = record.data
        if data.degrees and data.simple and not data.partial:
            cod = record.codegrees()
            if len(cod) != len(data.distinct_degrees()):
                raise DataError(f"{name}: |cod| != |cd| for a simple group")
            for d in data.distinct_degrees():
                if d > 1:
                    got = next(x for x in cod.elements if int(x) * d == int(data.order))
                    assert got is not None
            checks.append(f"record {name}: sum d^2 = |G|, |cod| = |cd| = {len(cod)}")
        elif data.degrees:
            checks.append(f"record {name}: loaded ({'partial' if data.partial else 'full'})")

    for name, family in sorted(catalog.families.items()):
        for point in _PROBE_POINTS.get(name, []):
            family.eval_witnesses(point)  # raises unless degree * cod = order
        checks.append(f"family {name}: witness identity holds on probe points")

    if "G2" in catalog.families:
        # q^4 + q^2 + 1 = (q^2 + q + 1)(q^2 - q + 1), so the cuspidal codegree
        # 6 q^5 (q^4+q^2+1)(q-1)^2 / (q^2+q+1) equals 6 q^5 (q-1)^2 (q^2-q+1)
        lhs = IntPoly.of(1, 0, 1, 0, 1)
        rhs = IntPoly.of(1, 1, 1) * IntPoly.of(1, -1, 1)
        if lhs != rhs:
            raise DataError("G2 cuspidal codegree identity fails")
        checks.append("family G2: cyclotomic factorization identity verified")

    return checks
