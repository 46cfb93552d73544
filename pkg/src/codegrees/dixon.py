"""Exact character tables by the Dixon-Schneider method.

Class matrices are simultaneously diagonalized over a prime field F_p with
p = 1 (mod exp(G)) and p > 2*sqrt(|G|).  Degrees come from the eigenvector
norm relation sum_j w(K_j) w(K_j*) / |K_j| = |G| / d^2, and values are
lifted to root-of-unity multiplicity vectors by discrete Fourier inversion
over each element order.  Orthogonality is re-verified with exact
cyclotomic arithmetic before a table is returned.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .cyclotomic import CyclotomicValue, accumulate_product, context
from .exact import FactoredInt, factorize, is_prime
from .perms import ClassData, PermGroup, class_matrix, perm_order

MAX_CLASSES = 30
MAX_PRIME = 2**31
MAX_SPLIT_ATTEMPTS = 100


class OracleError(RuntimeError):
    """The table computation failed (retry with another seed)."""


@dataclass(frozen=True)
class CharRow:
    degree: int
    values: tuple[CyclotomicValue, ...]
    kernel_classes: frozenset[int]


@dataclass
class CharTable:
    """Exact irreducible character table of a concrete finite group."""

    group_name: str
    order: FactoredInt
    classes: ClassData
    rows: list[CharRow]
    prime: int

    @property
    def degrees(self) -> list[int]:
        return [r.degree for r in self.rows]

    def kernel_order(self, row: int) -> FactoredInt:
        return kernel_order(self, row)


@dataclass
class TableReport:
    ok: bool
    failures: list[str]


# ---------------------------------------------------------------------------
# F_p helpers


def find_dixon_prime(exponent: int, order: int) -> int:
    """Smallest prime p = 1 (mod exponent) with p > 2*sqrt(order)."""
    lower = 2 * math.isqrt(order) + 1
    p = exponent + 1
    while p <= lower or not is_prime(p):
        p += exponent
        if p > MAX_PRIME:
            raise OracleError(f"no Dixon prime below 2^31 for exponent {exponent}")
    return p


def _nullspace_mod(matrix: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the kernel of `matrix` over F_p (row-reduction, exact)."""
    rows = [row[:] for row in matrix]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-rows[i][fc]) % p
        basis.append(vec)
    return basis


def _matvec(mat: list[list[int]], vec: list[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, vec)) % p for row in mat]


def _restrict(mat: list[list[int]], basis: list[list[int]], p: int) -> list[list[int]]:
    """Matrix of `mat` on the span of `basis`, which it must preserve."""
    images = [_matvec(mat, v, p) for v in basis]
    # solve each image in terms of the basis
    k = len(basis)
    n = len(basis[0])
    aug = [[basis[j][i] for j in range(k)] + [im[i] for im in images] for i in range(n)]
    # gaussian elimination on the n x (k + k) system
    r = 0
    pivots = []
    for c in range(k):
        pivot = next((i for i in range(r, n) if aug[i][c] % p), None)
        if pivot is None:
            raise OracleError("basis not independent")
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if any(x % p for x in aug[i][k:]):
            raise OracleError("subspace not invariant")
    # column-major: restricted[i][j] = coefficient of basis i in image of basis j
    return [[aug[i][k + j] % p for j in range(len(images))] for i in range(r)]


def _char_poly_roots(mat: list[list[int]], p: int) -> list[int]:
    """Eigenvalues in F_p of a small matrix over F_p.

    Faddeev-LeVerrier over the integers (exact; needs p > dimension, which
    holds since p > 2*sqrt(|G|) >= 2*sqrt(#classes^2)), then a Horner scan
    of the p candidate roots.
    """
    n = len(mat)
    if n >= p:
        raise OracleError("matrix dimension exceeds the field size")
    m = [[x % p for x in row] for row in mat]
    coeffs = [1] + [0] * n  # char poly x^n + c1 x^(n-1) + ... (descending)
    work = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        if k == 1:
            work = [row[:] for row in m]
        else:
            for i in range(n):
                work[i][i] += coeffs[k - 1]
            work = [
                [sum(m[i][t] * work[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
        trace = sum(work[i][i] for i in range(n))
        assert trace % k == 0
        coeffs[k] = -trace // k
    coeffs = [c % p for c in coeffs]
    roots = []
    for x in range(p):
        acc = 0
        for c in coeffs:
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def _split_space(
    basis: list[list[int]], mat: list[list[int]], p: int
) -> list[list[list[int]]]:
    """Split a common invariant subspace by the eigenvalues of `mat` on it."""
    restricted = _restrict(mat, basis, p)
    k = len(restricted)
    roots = _char_poly_roots(restricted, p)
    if len(roots) <= 1:
        return [basis]
    spaces: list[list[list[int]]] = []
    for lam in roots:
        shifted = [
            [(restricted[i][j] - (lam if i == j else 0)) % p for j in range(k)]
            for i in range(k)
        ]
        vecs = []
        for coeffs in _nullspace_mod(shifted, p):
            vec = [0] * len(basis[0])
            for c, bvec in zip(coeffs, basis):
                if c:
                    for t in range(len(vec)):
                        vec[t] = (vec[t] + c * bvec[t]) % p
            vecs.append(vec)
        if vecs:
            spaces.append(vecs)
    if sum(len(s) for s in spaces) != k:
        raise OracleError("eigenspace dimensions do not fill the subspace")
    return spaces


def _sqrt_mod(t: int, p: int) -> int | None:
    """A square root of t modulo an odd prime p, or None."""
    t %= p
    if t == 0:
        return 0
    if pow(t, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(t, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, u, r = s, pow(z, q, p), pow(t, q, p), pow(t, (q + 1) // 2, p)
    while u != 1:
        i, tmp = 0, u
        while tmp != 1:
            tmp = tmp * tmp % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        r = r * b % p
        u = u * c % p
    return r


# ---------------------------------------------------------------------------
# the oracle


def dixon_table(group: PermGroup, seed: int = 0) -> CharTable:
    """Compute the exact character table; verifies orthogonality before returning."""
    cd = group.classes()
    r = cd.count
    if r > MAX_CLASSES:
        raise OracleError(f"{group.name}: {r} classes exceeds the cap of {MAX_CLASSES}")
    n = group.order
    e = cd.exponent
    p = find_dixon_prime(e, n)

    eigvecs = _common_eigenvectors(cd, p, seed)
    rows = [_lift_row(cd, vec, p, e) for vec in eigvecs]
    # canonical order: trivial character first, then by (degree, values)
    rows.sort(key=_row_sort_key)
    table = CharTable(
        group_name=group.name,
        order=group.order_factored(),
        classes=cd,
        rows=rows,
        prime=p,
    )
    report = verify_table(table)
    if not report.ok:
        raise OracleError(f"{group.name}: table failed verification: {report.failures[0]}")
    return table


def _row_sort_key(row: CharRow):
    flat = tuple((v.order,) + v.mults for v in row.values)
    # the trivial character (all multiplicity at exponent 0) sorts first
    triviality = 0 if all(v.mults[0] == v.total for v in row.values) else 1
    return (row.degree, triviality if row.degree == 1 else 1, flat)


def _common_eigenvectors(cd: ClassData, p: int, seed: int) -> list[list[int]]:
    r = cd.count
    full = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    spaces = [full]

    matrices: dict[int, list[list[int]]] = {}

    def get_matrix(i: int) -> list[list[int]]:
        if i not in matrices:
            matrices[i] = class_matrix(cd, i)
        return matrices[i]

    for i in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        mat = get_matrix(i)
        spaces = [sub for s in spaces for sub in (_split_space(s, mat, p) if len(s) > 1 else [s])]

    if not all(len(s) == 1 for s in spaces):
        rng = random.Random(seed)
        for _ in range(MAX_SPLIT_ATTEMPTS):
            if all(len(s) == 1 for s in spaces):
                break
            coeffs = [rng.randrange(p) for _ in range(r)]
            mat = [[sum(c * get_matrix(i)[j][k] for i, c in enumerate(coeffs) if c) % p
                    for k in range(r)] for j in range(r)]
            spaces = [sub for s in spaces for sub in (_split_space(s, mat, p) if len(s) > 1 else [s])]
        else:
            raise OracleError("eigenspace splitting stalled; retry with a new seed")

    if len(spaces) != r:
        raise OracleError("wrong number of one-dimensional eigenspaces")
    vecs = []
    for s in spaces:
        vec = s[0]
        if vec[0] % p == 0:
            raise OracleError("eigenvector with vanishing identity coordinate")
        inv = pow(vec[0], -1, p)
        vecs.append([x * inv % p for x in vec])
    return vecs


def _lift_row(cd: ClassData, omega: list[int], p: int, e: int) -> CharRow:
    group_order = cd.group.order
    r = cd.count
    # degree from the norm relation
    s = 0
    for j in range(r):
        s += omega[j] * omega[cd.inverse_class[j]] * pow(cd.sizes[j], -1, p)
    s %= p
    if s == 0:
        raise OracleError("degenerate eigenvector norm")
    d_sq = group_order * pow(s, -1, p) % p
    d = _sqrt_mod(d_sq, p)
    if d is None:
        raise OracleError("degree squared is not a quadratic residue")
    if d > p - d:
        d = p - d
    if d * d > group_order:
        raise OracleError("lifted degree out of range")

    # character values mod p
    c = [d * omega[j] % p * pow(cd.sizes[j], -1, p) % p for j in range(r)]

    z = _primitive_root_of_unity(p, e)
    values = []
    for j in range(r):
        m = perm_order(cd.representatives[j])
        zm = pow(z, e // m, p)
        zm_inv = pow(zm, -1, p)
        c_pow = [c[cd.power_class(j, l)] for l in range(m)]
        inv_m = pow(m, -1, p)
        mults = []
        for k in range(m):
            acc = 0
            for l in range(m):
                acc += c_pow[l] * pow(zm_inv, k * l % m, p)
            mk = acc % p * inv_m % p
            if mk > p // 2:
                raise OracleError("multiplicity lift out of range")
            mults.append(mk)
        if sum(mults) != d:
            raise OracleError("multiplicities do not sum to the degree")
        values.append(CyclotomicValue(m, tuple(mults)))

    kernel = frozenset(
        j for j, v in enumerate(values) if v.mults[0] == d and v.total == d
    )
    return CharRow(degree=d, values=tuple(values), kernel_classes=kernel)


def _primitive_root_of_unity(p: int, e: int) -> int:
    """An element of exact order e in F_p^* (requires e | p-1)."""
    if (p - 1) % e:
        raise OracleError("prime does not support the required root of unity")
    factors = [q for q, _ in factorize(e).factors]
    g = 2
    while True:
        z = pow(g, (p - 1) // e, p)
        if all(pow(z, e // q, p) != 1 for q in factors):
            return z
        g += 1


# ---------------------------------------------------------------------------
# verification and kernels


def kernel_order(table: CharTable, row: int) -> FactoredInt:
    cd = table.classes
    size = sum(cd.sizes[j] for j in table.rows[row].kernel_classes)
    out = factorize(size)
    if not table.order.divisible_by(out):
        raise OracleError("kernel size does not divide the group order")
    return out


def verify_table(table: CharTable) -> TableReport:
    """Exact checks: degree sum, first and second orthogonality, integrality."""
    failures: list[str] = []
    cd = table.classes
    n = int(table.order)
    r = cd.count

    if len(table.rows) != r:
        failures.append(f"row count {len(table.rows)} != class count {r}")
        return TableReport(False, failures)

    if sum(row.degree**2 for row in table.rows) != n:
        failures.append("sum of squared degrees differs from the group order")

    first = table.rows[0]
    if not (first.degree == 1 and all(v.mults[0] == 1 and v.total == 1 for v in first.values)):
        failures.append("first row is not the trivial character")

    for row in table.rows:
        for v in row.values:
            if v.total != row.degree:
                failures.append("multiplicities do not sum to the degree")
                break

    e = cd.exponent
    ctx = context(e)
    # first orthogonality: sum_j |K_j| chi(g_j) conj(psi(g_j)) = delta * |G|
    for a in range(len(table.rows)):
        for b in range(a, len(table.rows)):
            acc = [0] * e
            for j in range(r):
                accumulate_product(
                    acc, e, table.rows[a].values[j],
                    table.rows[b].values[j].conjugate(), cd.sizes[j],
                )
            want = n if a == b else 0
            if not ctx.equals_integer(acc, want):
                failures.append(f"first orthogonality fails at rows ({a}, {b})")
    # second orthogonality: sum_rows chi(g_i) conj(chi(g_j)) = delta * |C(g_i)|
    for i in range(r):
        for j in range(i, r):
            acc = [0] * e
            for row in table.rows:
                accumulate_product(acc, e, row.values[i], row.values[j].conjugate(), 1)
            want = n // cd.sizes[i] if i == j else 0
            if not ctx.equals_integer(acc, want):
                failures.append(f"second orthogonality fails at classes ({i}, {j})")

    return TableReport(not failures, failures)
