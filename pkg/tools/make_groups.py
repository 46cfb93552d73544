#!/usr/bin/env python3
"""Construct the shipped permutation realizations and write .grp files.

Each group is built from first principles (matrix actions on projective
points, quadric points or unital points; regular representations for the
small nonpermutation groups) and its order is verified by full enumeration
before anything is written.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from codegrees.perms import PermGroup, format_group_file, parse_cycles

OUT = Path(__file__).resolve().parents[1] / "src" / "codegrees" / "data" / "groups"


# ---------------------------------------------------------------------------
# finite field helpers (tiny, explicit tables)


class GF:
    """F_{p^k} as polynomials over F_p modulo a fixed irreducible."""

    def __init__(self, p: int, k: int, modulus: list[int]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus  # monic, ascending, degree k
        self.elements = list(range(self.q))

    def to_poly(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_poly(self, cs: list[int]) -> int:
        v = 0
        for c in reversed(cs):
            v = v * self.p + (c % self.p)
        return v

    def add(self, a: int, b: int) -> int:
        pa, pb = self.to_poly(a), self.to_poly(b)
        return self.from_poly([(x + y) % self.p for x, y in zip(pa, pb)])

    def neg(self, a: int) -> int:
        return self.from_poly([(-x) % self.p for x in self.to_poly(a)])

    def mul(self, a: int, b: int) -> int:
        pa, pb = self.to_poly(a), self.to_poly(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(pa):
            if x:
                for j, y in enumerate(pb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.k):
                    prod[i - self.k + j] = (prod[i - self.k + j] - c * self.modulus[j]) % self.p
        return self.from_poly(prod[: self.k])

    def pow(self, a: int, n: int) -> int:
        out = 1
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError
        return self.pow(a, self.q - 2)


GF4 = GF(2, 2, [1, 1, 1])  # x^2 + x + 1
GF8 = GF(2, 3, [1, 1, 0, 1])  # x^3 + x + 1
GF9 = GF(3, 2, [1, 0, 1])  # x^2 + 1


def gf_prime(p: int) -> GF:
    return GF(p, 1, [0, 1])


# ---------------------------------------------------------------------------
# matrix actions


def mat_mul(F: GF, A, B):
    n = len(A)
    return [
        [
            _dot(F, [A[i][t] for t in range(n)], [B[t][j] for t in range(n)])
            for j in range(n)
        ]
        for i in range(n)
    ]


def _dot(F: GF, xs, ys):
    s = 0
    for x, y in zip(xs, ys):
        s = F.add(s, F.mul(x, y))
    return s


def vec_mat(F: GF, v, A):
    n = len(v)
    return tuple(_dot(F, v, [A[t][j] for t in range(n)]) for j in range(n))


def projective_points(F: GF, dim: int) -> list[tuple[int, ...]]:
    """Canonical representatives (first nonzero coordinate 1) of 1-spaces."""
    pts = []
    seen = set()
    for code in range(1, F.q**dim):
        v = []
        c = code
        for _ in range(dim):
            v.append(c % F.q)
            c //= F.q
        v = tuple(v)
        lead = next(x for x in v if x)
        inv = F.inv(lead)
        canon = tuple(F.mul(inv, x) for x in v)
        if canon not in seen:
            seen.add(canon)
            pts.append(canon)
    return pts


def action_on_points(F: GF, mats, points) -> list[tuple[int, ...]]:
    index = {pt: i for i, pt in enumerate(points)}
    perms = []
    for A in mats:
        images = []
        for pt in points:
            w = vec_mat(F, pt, A)
            lead = next(x for x in w if x)
            w = tuple(F.mul(F.inv(lead), x) for x in w)
            images.append(index[w])
        perms.append(tuple(images))
    return perms


# ---------------------------------------------------------------------------
# the individual constructions


def build_psl_3(F: GF, name: str, expected: int, provenance: str) -> PermGroup:
    """SL(3, q) acting on the projective plane PG(2, q)."""
    mats = [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]]
    if F.q > F.p:
        # a transvection with a primitive-element entry, else we stay in SL(3, p)
        omega = 2  # the polynomial x in our encoding
        mats.append([[1, omega, 0], [0, 1, 0], [0, 0, 1]])
    pts = projective_points(F, 3)
    perms = action_on_points(F, mats, pts)
    return PermGroup(name, len(pts), perms, expected_order=expected, provenance=provenance)


def build_psl2_moebius(F: GF, gens, name: str, expected: int, provenance: str) -> PermGroup:
    """Subgroup of PGL(2, q) on the projective line, via Moebius maps.

    Points are 0..q-1 for the field elements and q for infinity; gens are
    2x2 matrices [[a, b], [c, d]] acting by x -> (a*x + b) / (c*x + d).
    """
    q = F.q
    infinity = q
    perms = []
    for a, b, c, d in gens:
        images = []
        for x in range(q + 1):
            if x == infinity:
                num_, den_ = a, c
            else:
                num_ = F.add(F.mul(a, x), b)
                den_ = F.add(F.mul(c, x), d)
            images.append(infinity if den_ == 0 else F.mul(num_, F.inv(den_)))
        perms.append(tuple(images))
    return PermGroup(name, q + 1, perms, expected_order=expected, provenance=provenance)


def build_u3_3() -> PermGroup:
    """SU(3, 3) on the 28 isotropic points of the Hermitian unital in PG(2, 9).

    F_9 = F_3[i]/(i^2 + 1); the form is H(x, y) = x1*yb3 + x2*yb2 + x3*yb1
    with the bar denoting the Frobenius cube map.
    """
    F = GF9

    def bar(a: int) -> int:
        return F.pow(a, 3)

    def herm(x, y) -> int:
        return F.add(F.add(F.mul(x[0], bar(y[2])), F.mul(x[1], bar(y[1]))), F.mul(x[2], bar(y[0])))

    def is_unitary(A) -> bool:
        cols = [[A[i][j] for i in range(3)] for j in range(3)]
        # H(Ax, Ay) = H(x, y) for basis vectors <=> A J Abar^T = J with J antidiagonal
        for i in range(3):
            for j in range(3):
                want = 1 if i + j == 2 else 0
                got = herm(A[i], A[j])
                if got != want:
                    return False
        return True

    def det(A) -> int:
        s = 0
        for (i, j, k), sign in (
            ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
            ((0, 2, 1), -1), ((1, 0, 2), -1), ((2, 1, 0), -1),
        ):
            term = F.mul(F.mul(A[0][i], A[1][j]), A[2][k])
            s = F.add(s, term if sign > 0 else F.neg(term))
        return s

    gens = []
    # upper unitriangular root elements
    for a in range(9):
        for b in range(9):
            for c in range(9):
                A = [[1, a, b], [0, 1, c], [0, 0, 1]]
                if is_unitary(A) and det(A) == 1 and (a or b or c):
                    gens.append(A)
        if len(gens) > 4:
            break
    # a torus element and the Weyl reflection
    for t in range(2, 9):
        tb = bar(t)
        t3 = F.inv(tb)
        mid = F.inv(F.mul(t, t3))
        A = [[t, 0, 0], [0, mid, 0], [0, 0, t3]]
        if is_unitary(A) and det(A) == 1:
            gens.append(A)
            break
    W = [[0, 0, 1], [0, F.neg(1), 0], [1, 0, 0]]
    if is_unitary(W) and det(W) == 1:
        gens.append(W)

    pts = [pt for pt in projective_points(F, 3) if herm(pt, pt) == 0]
    assert len(pts) == 28, len(pts)
    perms = action_on_points(F, gens, pts)
    group = PermGroup(
        "U3_3", 28, perms, expected_order=6048,
        provenance="SU(3,3) on the 28 isotropic points of the Hermitian unital over F9",
    )
    return group


def build_u4_2() -> PermGroup:
    """O6-(2)' on the 27 singular points of an elliptic quadric on F_2^6.

    Q(x) = x1 x2 + x3 x4 + x5^2 + x5 x6 + x6^2 (minus type); orthogonal
    transvections generate O6-(2) and products of two transvections
    generate the simple index-2 subgroup, isomorphic to U4(2).
    """

    def Q(v: int) -> int:
        x = [(v >> i) & 1 for i in range(6)]
        # x^2 = x over F_2
        return (x[0] & x[1]) ^ (x[2] & x[3]) ^ x[4] ^ (x[4] & x[5]) ^ x[5]

    def B(u: int, v: int) -> int:
        return Q(u ^ v) ^ Q(u) ^ Q(v)

    singular = [v for v in range(1, 64) if Q(v) == 0]
    nonsingular = [v for v in range(1, 64) if Q(v) == 1]
    assert len(singular) == 27, len(singular)

    def transvection(v: int):
        return [x ^ (v if B(x, v) else 0) for x in range(64)]

    tv = [transvection(v) for v in nonsingular]
    index = {pt: i for i, pt in enumerate(singular)}

    def to_perm(table) -> tuple[int, ...]:
        return tuple(index[table[pt]] for pt in singular)

    # products of two transvections generate the even (simple) subgroup
    pair_products = [to_perm([tv[j][tv[0][x]] for x in range(64)]) for j in range(1, len(tv))]
    whole = PermGroup("U4_2_span", 27, pair_products, expected_order=None)
    assert whole.order == 25920, whole.order

    import random

    rng = random.Random(2)
    elements = whole.elements()
    provenance = "index-2 subgroup of O6-(2) on the 27 singular points of an elliptic quadric"
    while True:
        a, b = rng.sample(elements[1:], 2)
        trial = PermGroup("U4_2", 27, [a, b], expected_order=None)
        if trial.order == 25920:
            trial.provenance = provenance
            trial.expected_order = 25920
            return trial


def build_regular(name: str, table: list[list[int]], gens: list[int], provenance: str) -> PermGroup:
    n = len(table)
    perms = [tuple(table[g][x] for x in range(n)) for g in gens]
    return PermGroup(name, n, perms, expected_order=n, provenance=provenance)


def quaternion_group() -> PermGroup:
    # elements 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = {s: n for n, s in enumerate(names)}

    def q_mul(a: str, b: str) -> str:
        sign = 1
        for s in (a, b):
            if s.startswith("-"):
                sign = -sign
        ua, ub = a.lstrip("-"), b.lstrip("-")
        basic = {
            ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
            ("i", "1"): "i", ("j", "1"): "j", ("k", "1"): "k",
            ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
        }
        out = basic[(ua, ub)]
        if out.startswith("-"):
            sign = -sign
            out = out[1:]
        return out if sign > 0 else "-" + out

    table = [[idx[q_mul(names[a], names[b])] for b in range(8)] for a in range(8)]
    # left regular action: g sends x to g*x
    perms_gens = [idx["i"], idx["j"]]
    perms = [tuple(table[g][x] for x in range(8)) for g in perms_gens]
    return PermGroup("Q8", 8, perms, expected_order=8, provenance="left regular representation of the quaternion group")


def sl23_group() -> PermGroup:
    """SL(2, 3) on the eight nonzero vectors of F_3^2."""
    vv = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    idx = {v: i for i, v in enumerate(vv)}

    def act(mat):
        a, b, c, d = mat
        return tuple(idx[((x * a + y * c) % 3, (x * b + y * d) % 3)] for x, y in vv)

    gens = [act((1, 1, 0, 1)), act((0, -1, 1, 0))]
    return PermGroup("SL2_3", 8, gens, expected_order=24, provenance="SL(2,3) on the nonzero vectors of F3^2")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    groups: list[PermGroup] = []

    groups.append(PermGroup("trivial", 1, [], expected_order=1, provenance="trivial group"))
    groups.append(PermGroup("C2", 2, [parse_cycles("(0 1)", 2)], expected_order=2, provenance="cyclic"))
    groups.append(PermGroup("C3", 3, [parse_cycles("(0 1 2)", 3)], expected_order=3, provenance="cyclic"))
    groups.append(PermGroup("C6", 6, [parse_cycles("(0 1 2 3 4 5)", 6)], expected_order=6, provenance="cyclic"))
    groups.append(PermGroup("V4", 4, [parse_cycles("(0 1)(2 3)", 4), parse_cycles("(0 2)(1 3)", 4)], expected_order=4, provenance="Klein four-group"))
    groups.append(PermGroup("S3", 3, [parse_cycles("(0 1 2)", 3), parse_cycles("(0 1)", 3)], expected_order=6, provenance="symmetric group"))
    groups.append(PermGroup("A4", 4, [parse_cycles("(0 1 2)", 4), parse_cycles("(0 1)(2 3)", 4)], expected_order=12, provenance="alternating group"))
    groups.append(PermGroup("S4", 4, [parse_cycles("(0 1 2 3)", 4), parse_cycles("(0 1)", 4)], expected_order=24, provenance="symmetric group"))
    groups.append(PermGroup("D8", 4, [parse_cycles("(0 1 2 3)", 4), parse_cycles("(1 3)", 4)], expected_order=8, provenance="dihedral group of order 8 (square symmetries)"))
    groups.append(quaternion_group())
    groups.append(sl23_group())
    groups.append(PermGroup("A5", 5, [parse_cycles("(0 1 2 3 4)", 5), parse_cycles("(0 1 2)", 5)], expected_order=60, provenance="alternating group on 5 points"))
    groups.append(PermGroup("A6", 6, [parse_cycles("(0 1 2 3 4)", 6), parse_cycles("(3 4 5)", 6)], expected_order=360, provenance="alternating group on 6 points"))

    groups.append(build_psl_3(gf_prime(2), "L2_7", 168, "SL(3,2) on the 7 points of the Fano plane; isomorphic to PSL(2,7)"))
    groups.append(build_psl2_moebius(GF8, [(1, 1, 0, 1), (GF8.mul(2, 1), 0, 0, 1), (0, 1, 1, 0)], "L2_8", 504, "PSL(2,8) on the projective line over F8"))

    F17 = gf_prime(17)
    groups.append(build_psl2_moebius(F17, [(1, 1, 0, 1), (0, 16, 1, 0)], "L2_17", 2448, "PSL(2,17) on the projective line over F17"))

    groups.append(build_psl_3(gf_prime(3), "L3_3", 5616, "SL(3,3) on the 13 points of PG(2,3)"))
    groups.append(build_psl_3(GF4, "L3_4", 20160, "SL(3,4) acting on the 21 points of PG(2,4); image is PSL(3,4)"))

    groups.append(PermGroup(
        "M11", 11,
        [parse_cycles("(0 1 2 3 4 5 6 7 8 9 10)", 11), parse_cycles("(2 6 10 7)(3 9 4 5)", 11)],
        expected_order=7920, provenance="Mathieu group on 11 points, standard generator pair",
    ))

    groups.append(build_u3_3())
    groups.append(build_u4_2())

    for g in groups:
        n = g.order  # enumerate + verify expected_order
        cls = g.classes().count
        path = OUT / f"{g.name}.grp"
        path.write_text(format_group_file(g))
        print(f"{g.name:8s} order {n:7d}  classes {cls:3d}  -> {path.name}")


if __name__ == "__main__":
    main()
