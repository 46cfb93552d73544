"""Fixed-group degree records: file format, validation and the catalog.

A record file is line-oriented `key: value` text.  Non-partial records
carry the full degree multiset and are validated by sum d^2 = |G| at
load; partial records carry the distinct degrees only.  Count-fact files
record literature lower bounds for groups whose tables are not embedded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .codegree import CodegreeSet, DataError, DegreeData, cod_simple
from .exact import FactoredInt, format_factored, parse_factored


@dataclass(frozen=True)
class GroupRecord:
    """DegreeData plus the extra facts the proof checks consume."""

    data: DegreeData
    sporadic: bool = False
    alternating: bool = False
    multiplier: Optional[int] = None
    cd_count: Optional[int] = None
    cd_count_min: Optional[int] = None
    note: str = ""

    @property
    def name(self) -> str:
        return self.data.name

    def distinct_count(self) -> int:
        if self.data.degrees:
            return len(self.data.distinct_degrees())
        if self.cd_count is not None:
            return self.cd_count
        raise DataError(f"{self.name}: no degree data and no count")

    def codegrees(self) -> CodegreeSet:
        return cod_simple(self.data)


def _parse_bool(text: str) -> bool:
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise DataError(f"bad boolean {text!r}")


def parse_record(text: str, name_hint: str = "") -> GroupRecord:
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise DataError(f"bad record line {line!r}")
        k, v = line.split(":", 1)
        fields[k.strip()] = v.strip()

    name = fields.get("name", name_hint)
    degrees: tuple[int, ...] = ()
    if fields.get("degrees"):
        degrees = tuple(int(t) for t in fields["degrees"].split())
    data = DegreeData(
        name=name,
        order=parse_factored(fields["order"]),
        degrees=degrees,
        simple=_parse_bool(fields.get("simple", "false")),
        partial=_parse_bool(fields.get("partial", "false")),
        provenance=fields.get("provenance", ""),
    )
    record = GroupRecord(
        data=data,
        sporadic=_parse_bool(fields.get("sporadic", "false")),
        alternating=_parse_bool(fields.get("alternating", "false")),
        multiplier=int(fields["multiplier"]) if "multiplier" in fields else None,
        cd_count=int(fields["cd_count"]) if "cd_count" in fields else None,
        cd_count_min=int(fields["cd_count_min"]) if "cd_count_min" in fields else None,
        note=fields.get("note", ""),
    )
    _validate(record)
    return record


def _validate(record: GroupRecord) -> None:
    data = record.data
    if data.degrees and record.cd_count is not None:
        if record.cd_count != len(data.distinct_degrees()):
            raise DataError(
                f"{record.name}: cd_count {record.cd_count} != "
                f"{len(data.distinct_degrees())} distinct degrees"
            )
    if not data.degrees and record.cd_count is None and record.cd_count_min is None:
        raise DataError(f"{record.name}: record carries no usable degree information")


def format_record(record: GroupRecord) -> str:
    data = record.data
    lines = [
        f"name: {data.name}",
        f"order: {format_factored(data.order)}",
        f"simple: {str(data.simple).lower()}",
        f"partial: {str(data.partial).lower()}",
    ]
    if record.sporadic:
        lines.append("sporadic: true")
    if record.alternating:
        lines.append("alternating: true")
    if record.multiplier is not None:
        lines.append(f"multiplier: {record.multiplier}")
    if record.cd_count is not None:
        lines.append(f"cd_count: {record.cd_count}")
    if record.cd_count_min is not None:
        lines.append(f"cd_count_min: {record.cd_count_min}")
    if data.provenance:
        lines.append(f"provenance: {data.provenance}")
    if record.note:
        lines.append(f"note: {record.note}")
    if data.degrees:
        lines.append("degrees: " + " ".join(str(d) for d in data.degrees))
    return "\n".join(lines) + "\n"


def load_record(path: str | Path) -> GroupRecord:
    path = Path(path)
    try:
        return parse_record(path.read_text(), name_hint=path.stem)
    except DataError as exc:
        raise DataError(f"{path.name}: {exc}") from exc


def load_records(directory: str | Path) -> dict[str, GroupRecord]:
    """Load and validate every .rec file in a directory, indexed by name."""
    directory = Path(directory)
    out: dict[str, GroupRecord] = {}
    for path in sorted(directory.glob("*.rec")):
        record = load_record(path)
        if record.name in out:
            raise DataError(f"duplicate record name {record.name}")
        out[record.name] = record
    return out
