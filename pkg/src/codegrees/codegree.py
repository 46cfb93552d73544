"""Codegree sets and the quotient/restriction property harness.

cod(chi) = |G : ker(chi)| / chi(1).  For a nonabelian simple group every
nontrivial irreducible is faithful, so cod(chi) = |G| / chi(1) and the
whole set is determined by the order and the degree set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cyclotomic import accumulate_product, context
from .dixon import CharTable, dixon_table, kernel_order
from .exact import ExactnessError, FactoredInt, factorize, format_factored
from .perms import (
    PermGroup,
    normal_subgroups_small,
    quotient_group,
    subgroup_from_classes,
)


class DataError(ValueError):
    """Embedded degree data violates one of its invariants."""


@dataclass(frozen=True)
class CodegreeSet:
    """A finite set of codegrees, sorted ascending by value."""

    elements: tuple[FactoredInt, ...]
    source: str = "data"  # oracle | data | formula

    def __post_init__(self):
        values = [int(x) for x in self.elements]
        if values != sorted(set(values)):
            raise ValueError("codegree elements must be sorted and distinct")
        if 1 not in values:
            raise ValueError("every codegree set contains 1")

    @staticmethod
    def of(items: Iterable[FactoredInt], source: str = "data") -> "CodegreeSet":
        uniq = {int(x): x for x in items}
        return CodegreeSet(tuple(uniq[v] for v in sorted(uniq)), source)

    def values(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.elements)

    def __contains__(self, item: FactoredInt | int) -> bool:
        v = int(item)
        return v in self.values()

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def max(self) -> FactoredInt:
        return self.elements[-1]

    def __str__(self) -> str:
        return "{" + ", ".join(format_factored(x) for x in self.elements) + "}"


@dataclass(frozen=True)
class DegreeData:
    """Character degree data for one fixed group.

    degrees is the full multiset when partial is False (then sum d^2 = |G|
    is enforced); a partial record carries the distinct degrees only.
    """

    name: str
    order: FactoredInt
    degrees: tuple[int, ...]
    simple: bool
    partial: bool = False
    provenance: str = ""

    def __post_init__(self):
        if self.degrees:
            if 1 not in self.degrees:
                raise DataError(f"{self.name}: degree list lacks the trivial degree")
            if any(d < 1 for d in self.degrees):
                raise DataError(f"{self.name}: nonpositive degree")
            if not self.partial:
                total = sum(d * d for d in self.degrees)
                if total != int(self.order):
                    raise DataError(
                        f"{self.name}: sum of squared degrees {total} != order {int(self.order)}"
                    )

    def distinct_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.degrees)))


def cod_from_table(table: CharTable) -> CodegreeSet:
    """Codegree set straight from an exact character table."""
    out = []
    for i, row in enumerate(table.rows):
        ker = kernel_order(table, i)
        quotient = table.order.div_exact(ker)
        try:
            out.append(quotient.div_exact(factorize(row.degree)))
        except ExactnessError as exc:
            raise DataError(f"{table.group_name}: corrupt table row {i}: {exc}") from exc
    return CodegreeSet.of(out, source="oracle")


def cod_simple(data: DegreeData) -> CodegreeSet:
    """cod(G) = {1} | {|G|/d} for a nonabelian simple group's degree data."""
    if not data.simple:
        raise DataError(f"{data.name}: cod_simple needs the simple flag")
    if not data.degrees:
        raise DataError(f"{data.name}: no degree list")
    out = [factorize(1)]
    for d in data.distinct_degrees():
        if d == 1:
            continue
        try:
            out.append(data.order.div_exact(factorize(d)))
        except ExactnessError as exc:
            raise DataError(f"{data.name}: degree {d} does not divide the order") from exc
    return CodegreeSet.of(out, source="data")


def subset_check(a: CodegreeSet, b: CodegreeSet) -> Optional[FactoredInt]:
    """None if a is contained in b, else the smallest element of a \\ b."""
    bv = set(b.values())
    for x in a.elements:  # ascending
        if int(x) not in bv:
            return x
    return None


# ---------------------------------------------------------------------------
# quotient / restriction properties


@dataclass
class PropertyReport:
    group: str
    quotient_checks: int = 0
    restriction_checks: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _codegree_of_row(table: CharTable, row: int) -> FactoredInt:
    ker = kernel_order(table, row)
    return table.order.div_exact(ker).div_exact(factorize(table.rows[row].degree))


def _restriction_inner(table_g: CharTable, row, table_m: CharTable, mrow) -> int:
    """<chi|_M, phi> computed exactly over the subgroup's classes."""
    cd_m = table_m.classes
    group_m = cd_m.group
    cd_g = table_g.classes
    e = cd_g.exponent
    ctx = context(e)
    acc = [0] * e
    for j in range(cd_m.count):
        rep = cd_m.representatives[j]
        g_class = cd_g.class_of_perm(rep)
        chi = table_g.rows[row].values[g_class]
        phi = table_m.rows[mrow].values[j].conjugate()
        accumulate_product(acc, e, chi, phi, cd_m.sizes[j])
    red = ctx.reduce_dense(acc)
    total = red[0]
    if any(red[1:]):
        raise DataError("restriction inner product is not rational")
    if total % group_m.order:
        raise DataError("restriction inner product is not integral")
    return total // group_m.order


def prop24_suite(group: PermGroup, seed: int = 0) -> PropertyReport:
    """Check the two codegree properties on every normal subgroup of `group`.

    (i)  cod(G/N) is a subset of cod(G);
    (ii) for every normal M, chi in Irr(G) and constituent phi of chi|_M,
         cod(phi) divides cod(chi).
    """
    report = PropertyReport(group=group.name)
    table = dixon_table(group, seed=seed)
    cod_g = cod_from_table(table)
    normals = normal_subgroups_small(group)
    cd = group.classes()

    for classes in normals:
        size = sum(cd.sizes[i] for i in classes)
        if size == group.order:
            continue
        quotient = quotient_group(group, classes)
        table_q = dixon_table(quotient, seed=seed)
        cod_q = cod_from_table(table_q)
        witness = subset_check(cod_q, cod_g)
        report.quotient_checks += 1
        if witness is not None:
            report.violations.append(
                f"cod(G/N) not in cod(G) for |N|={size}: witness {witness}"
            )

        if size == 1:
            continue
        subgroup = subgroup_from_classes(group, classes)
        table_m = dixon_table(subgroup, seed=seed)
        for mrow in range(len(table_m.rows)):
            cod_phi = _codegree_of_row(table_m, mrow)
            for grow in range(len(table.rows)):
                inner = _restriction_inner(table, grow, table_m, mrow)
                if inner == 0:
                    continue
                report.restriction_checks += 1
                cod_chi = _codegree_of_row(table, grow)
                if not cod_chi.divisible_by(cod_phi):
                    report.violations.append(
                        f"cod(phi) does not divide cod(chi): |M|={size}, "
                        f"phi degree {table_m.rows[mrow].degree}, "
                        f"chi degree {table.rows[grow].degree}"
                    )
    return report
