"""Concrete finite groups as permutation groups.

Element enumeration is breadth-first over the generators; element ids are
enumeration order, so everything downstream is deterministic for a fixed
generator file.  Groups here are desk scale (order <= 10**6).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .exact import FactoredInt, factorize

ENUMERATION_CAP = 10**6
NORMAL_SEARCH_ORDER_CAP = 10**4
NORMAL_SEARCH_CLASS_CAP = 20

Perm = tuple[int, ...]


class EnumerationError(RuntimeError):
    """Group closure exceeded the enumeration cap."""


class NotASubgroupError(ValueError):
    """A union of classes was not multiplicatively closed."""


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))

def compose(a: Perm, b: Perm) -> Perm:
    """a then b, acting on points on the right: (a*b)(x) = b(a(x))."""
    return tuple(b[i] for i in a)

def inverse_perm(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)

def perm_order(a: Perm) -> int:
    n = len(a)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        order = math.lcm(order, length)
    return order


def cycle_notation(a: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(a)):
        if i in seen or a[i] == i:
            seen.add(i)
            continue
        cyc = [i]
        j = a[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = a[j]
        seen.add(i)
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) if out else "()"


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 0-based cycle notation like '(0 1 2)(3 4)'."""
    images = list(range(degree))
    for cyc in re.findall(r"\(([^()]*)\)", text):
        pts = [int(t) for t in re.split(r"[,\s]+", cyc.strip()) if t]
        if not pts:
            continue
        if len(set(pts)) != len(pts) or max(pts) >= degree:
            raise ValueError(f"bad cycle {cyc!r} for degree {degree}")
        for k, p in enumerate(pts):
            images[p] = pts[(k + 1) % len(pts)]
    if sorted(images) != list(range(degree)):
        raise ValueError(f"cycles {text!r} do not define a permutation")
    return tuple(images)


@dataclass
class PermGroup:
    """A permutation group given by generators on {0..degree-1}."""

    name: str
    degree: int
    generators: list[Perm]
    expected_order: int | None = None
    provenance: str = ""
    _elements: list[Perm] | None = field(default=None, repr=False)
    _index: dict[Perm, int] | None = field(default=None, repr=False)
    _classes: "ClassData | None" = field(default=None, repr=False)

    def __post_init__(self):
        ident = identity_perm(self.degree)
        self.generators = [g for g in self.generators if g != ident]
        for g in self.generators:
            if sorted(g) != list(range(self.degree)):
                raise ValueError(f"{self.name}: generator is not a permutation")

    # -- enumeration ------------------------------------------------------

    def elements(self) -> list[Perm]:
        """All elements in BFS order (id 0 is the identity)."""
        if self._elements is None:
            ident = identity_perm(self.degree)
            elts = [ident]
            index = {ident: 0}
            frontier = [ident]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in self.generators:
                        y = compose(x, g)
                        if y not in index:
                            index[y] = len(elts)
                            elts.append(y)
                            nxt.append(y)
                            if len(elts) > ENUMERATION_CAP:
                                raise EnumerationError(
                                    f"{self.name}: closure exceeds {ENUMERATION_CAP}"
                                )
                frontier = nxt
            self._elements = elts
            self._index = index
            if self.expected_order is not None and len(elts) != self.expected_order:
                raise ValueError(
                    f"{self.name}: enumerated order {len(elts)} != expected "
                    f"{self.expected_order}"
                )
        return self._elements

    def element_index(self) -> dict[Perm, int]:
        self.elements()
        assert self._index is not None
        return self._index

    @property
    def order(self) -> int:
        return len(self.elements())

    def order_factored(self) -> FactoredInt:
        return factorize(self.order)

    def exponent(self) -> int:
        e = 1
        for rep in self.classes().representatives:
            e = math.lcm(e, perm_order(rep))
        return e

    # -- conjugacy classes -------------------------------------------------

    def classes(self) -> "ClassData":
        if self._classes is None:
            self._classes = conjugacy_classes(self)
        return self._classes


@dataclass
class ClassData:
    """Conjugacy class tables for an enumerated permutation group."""

    group: PermGroup
    representatives: list[Perm]
    sizes: list[int]
    class_of: list[int]  # element id -> class index
    members: list[list[int]]  # class index -> element ids
    inverse_class: list[int]
    power_maps: dict[int, list[int]]  # prime -> class index map
    exponent: int

    @property
    def count(self) -> int:
        return len(self.representatives)

    def class_of_perm(self, x: Perm) -> int:
        return self.class_of[self.group.element_index()[x]]

    def power_class(self, j: int, k: int) -> int:
        """Class of rep(j)**k."""
        rep = self.representatives[j]
        out = identity_perm(self.group.degree)
        base = rep
        k %= perm_order(rep)
        while k:
            if k & 1:
                out = compose(out, base)
            base = compose(base, base)
            k >>= 1
        return self.class_of_perm(out)


def conjugacy_classes(group: PermGroup) -> ClassData:
    elts = group.elements()
    index = group.element_index()
    n = len(elts)
    inverses = [index[inverse_perm(x)] for x in elts]
    gen_invs = [inverse_perm(g) for g in group.generators]

    class_of = [-1] * n
    reps: list[Perm] = []
    sizes: list[int] = []
    members: list[list[int]] = []
    for start in range(n):
        if class_of[start] != -1:
            continue
        cls = len(reps)
        orbit = [start]
        class_of[start] = cls
        k = 0
        while k < len(orbit):
            x = elts[orbit[k]]
            k += 1
            for g, gi in zip(group.generators, gen_invs):
                y = compose(gi, compose(x, g))
                yi = index[y]
                if class_of[yi] == -1:
                    class_of[yi] = cls
                    orbit.append(yi)
        reps.append(elts[start])
        sizes.append(len(orbit))
        members.append(orbit)
    assert sum(sizes) == n

    inverse_class = [class_of[inverses[index[r]]] for r in reps]
    exponent = 1
    for r in reps:
        exponent = math.lcm(exponent, perm_order(r))

    power_maps: dict[int, list[int]] = {}
    cd = ClassData(
        group=group,
        representatives=reps,
        sizes=sizes,
        class_of=class_of,
        members=members,
        inverse_class=inverse_class,
        power_maps=power_maps,
        exponent=exponent,
    )
    for p, _ in factorize(exponent).factors:
        power_maps[p] = [cd.power_class(j, p) for j in range(len(reps))]
    return cd


def class_mult_coeff(cd: ClassData, i: int, j: int, k: int) -> int:
    """Number of pairs (x in K_i, y in K_j) with x*y = z for a fixed z in K_k."""
    group = cd.group
    elts = group.elements()
    index = group.element_index()
    z = cd.representatives[k]
    count = 0
    for xi in cd.members[i]:
        y = compose(inverse_perm(elts[xi]), z)
        if cd.class_of[index[y]] == j:
            count += 1
    return count


def class_matrix(cd: ClassData, i: int) -> list[list[int]]:
    """Matrix B_i with (B_i)[j][k] = a_{ijk}, computed in one sweep per k."""
    group = cd.group
    elts = group.elements()
    index = group.element_index()
    r = cd.count
    mat = [[0] * r for _ in range(r)]
    inv_members = [inverse_perm(elts[xi]) for xi in cd.members[i]]
    for k in range(r):
        z = cd.representatives[k]
        col = [0] * r
        for xinv in inv_members:
            col[cd.class_of[index[compose(xinv, z)]]] += 1
        for j in range(r):
            mat[j][k] = col[j]
    return mat


# ---------------------------------------------------------------------------
# subgroups from class unions


def _closed_class_union(cd: ClassData, class_set: frozenset[int]) -> bool:
    prods = _class_products(cd)
    return all(prods[i][j] <= class_set for i in class_set for j in class_set)


def _class_products(cd: ClassData) -> list[list[frozenset[int]]]:
    cache = getattr(cd, "_products", None)
    if cache is not None:
        return cache
    group = cd.group
    elts = group.elements()
    index = group.element_index()
    r = cd.count
    prods: list[list[frozenset[int]]] = [[frozenset()] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            hit: set[int] = set()
            rep_j = cd.representatives[j]
            for xi in cd.members[i]:
                hit.add(cd.class_of[index[compose(elts[xi], rep_j)]])
            prods[i][j] = frozenset(hit)
    cd._products = prods  # type: ignore[attr-defined]
    return prods


def normal_subgroups_small(group: PermGroup) -> list[frozenset[int]]:
    """All normal subgroups as sets of class indices, by exhaustive search.

    Exhaustive over unions of conjugacy classes containing the identity;
    capped at order 10**4 and 20 classes.
    """
    if group.order > NORMAL_SEARCH_ORDER_CAP:
        raise EnumerationError(f"{group.name}: order {group.order} above normal-subgroup cap")
    cd = group.classes()
    if cd.count > NORMAL_SEARCH_CLASS_CAP:
        raise EnumerationError(f"{group.name}: {cd.count} classes above normal-subgroup cap")
    prods = _class_products(cd)
    others = [i for i in range(cd.count) if i != 0]
    found: list[frozenset[int]] = []

    def closure_ok(chosen: frozenset[int]) -> bool:
        return all(prods[i][j] <= chosen for i in chosen for j in chosen)

    for mask in range(1 << len(others)):
        chosen = frozenset({0} | {others[b] for b in range(len(others)) if mask >> b & 1})
        size = sum(cd.sizes[i] for i in chosen)
        if group.order % size:
            continue
        if closure_ok(chosen):
            found.append(chosen)
    found.sort(key=lambda s: (sum(cd.sizes[i] for i in s), sorted(s)))
    return found


def subgroup_from_classes(group: PermGroup, class_set: frozenset[int], name: str | None = None) -> PermGroup:
    """The subgroup whose elements are the given classes, as its own PermGroup."""
    cd = group.classes()
    elts = group.elements()
    member_ids = sorted(i for c in class_set for i in cd.members[c])
    members = {elts[i] for i in member_ids}
    if not _closed_class_union(cd, class_set):
        raise NotASubgroupError(f"{group.name}: classes {sorted(class_set)} not closed")
    # greedy small generating set
    gens: list[Perm] = []
    ident = identity_perm(group.degree)
    span = {ident}
    for i in member_ids:
        x = elts[i]
        if x in span:
            continue
        gens.append(x)
        span = {ident}
        queue = [ident]
        while queue:
            cur = queue.pop()
            for g in gens:
                y = compose(cur, g)
                if y not in span:
                    span.add(y)
                    queue.append(y)
        if len(span) == len(members):
            break
    sub = PermGroup(
        name=name or f"{group.name}-sub{len(members)}",
        degree=group.degree,
        generators=gens,
        expected_order=len(members),
    )
    return sub


def quotient_group(group: PermGroup, normal_classes: frozenset[int], name: str | None = None) -> PermGroup:
    """G acting on the right cosets of the class-union subgroup N."""
    cd = group.classes()
    if not _closed_class_union(cd, normal_classes):
        raise NotASubgroupError(
            f"{group.name}: classes {sorted(normal_classes)} are not a subgroup"
        )
    elts = group.elements()
    index = group.element_index()
    n_ids = [i for c in normal_classes for i in cd.members[c]]
    n_elts = [elts[i] for i in n_ids]
    coset_of = [-1] * len(elts)
    coset_count = 0
    for i in range(len(elts)):
        if coset_of[i] != -1:
            continue
        for nx in n_elts:
            coset_of[index[compose(nx, elts[i])]] = coset_count
        coset_count += 1
    assert coset_count * len(n_elts) == len(elts)
    # transversal element for each coset (first one seen = smallest id)
    transversal = [None] * coset_count
    for i, c in enumerate(coset_of):
        if transversal[c] is None:
            transversal[c] = elts[i]
    images = []
    for g in group.generators:
        images.append(tuple(coset_of[index[compose(t, g)]] for t in transversal))
    return PermGroup(
        name=name or f"{group.name}/N{len(n_elts)}",
        degree=coset_count,
        generators=images,
        expected_order=coset_count,
    )


# ---------------------------------------------------------------------------
# generator data files


def parse_group_file(text: str, name_hint: str = "") -> PermGroup:
    fields: dict[str, str] = {}
    gens: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("generator:"):
            gens.append(line.split(":", 1)[1].strip())
            continue
        if ":" in line:
            k, v = line.split(":", 1)
            fields[k.strip()] = v.strip()
    degree = int(fields["degree"])
    return PermGroup(
        name=fields.get("name", name_hint),
        degree=degree,
        generators=[parse_cycles(g, degree) for g in gens],
        expected_order=int(fields["expected_order"]) if "expected_order" in fields else None,
        provenance=fields.get("provenance", ""),
    )


def load_group(path: str | Path) -> PermGroup:
    path = Path(path)
    return parse_group_file(path.read_text(), name_hint=path.stem)


def format_group_file(group: PermGroup) -> str:
    lines = [
        f"name: {group.name}",
        f"degree: {group.degree}",
    ]
    if group.expected_order is not None:
        lines.append(f"expected_order: {group.expected_order}")
    if group.provenance:
        lines.append(f"provenance: {group.provenance}")
    for g in group.generators:
        lines.append(f"generator: {cycle_notation(g)}")
    return "\n".join(lines) + "\n"
