"""Exact character degree multisets of GL(n, q).

Irreducible characters of GL(n, q) are parametrized by assignments of
partitions to monic irreducible polynomials other than X, with total
weight n; the degree of the character attached to {(f_i, lambda_i)} is

    prod_{k=1..n} (q^k - 1) * prod_i q_i^{n(lambda_i)} / prod_{cells}(q_i^{h} - 1)

with q_i = q^{deg f_i}, n(lambda) = sum (row - 1) * part and h the hook
lengths.  Only orbit counts per polynomial degree matter for the degree
multiset, so everything reduces to small combinatorics that is verified
via sum d^2 = |GL(n, q)|.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .partitions import conjugate_partition, hook_lengths, partitions_of


def gl_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for k in range(1, n + 1):
        out *= q**k - 1
    return out


def _mobius(n: int) -> int:
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def irreducible_poly_count(d: int, q: int) -> int:
    """Monic irreducibles of degree d over F_q, excluding X for d = 1."""
    total = sum(_mobius(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    count = total // d
    return count - 1 if d == 1 else count


def _partition_stats(shape: tuple[int, ...]) -> tuple[int, list[int]]:
    n_lambda = sum(i * part for i, part in enumerate(shape))
    return n_lambda, hook_lengths(shape)


def _degree_factor(q_d: int, shape: tuple[int, ...]) -> tuple[int, int]:
    """(numerator power of q_d, denominator product) for one assignment part."""
    n_lambda, hooks = _partition_stats(shape)
    den = 1
    for h in hooks:
        den *= q_d**h - 1
    return q_d**n_lambda, den


def gl_degree_multiset(n: int, q: int) -> list[int]:
    """All character degrees of GL(n, q), with multiplicity, sorted."""
    psi = 1
    for k in range(1, n + 1):
        psi *= q**k - 1

    # available (degree d, partition lambda) building blocks
    blocks: list[tuple[int, tuple[int, ...], int, int]] = []
    for d in range(1, n + 1):
        q_d = q**d
        for m in range(1, n // d + 1):
            for shape in partitions_of(m):
                num, den = _degree_factor(q_d, shape)
                blocks.append((d, shape, num, den))

    poly_counts = {d: irreducible_poly_count(d, q) for d in range(1, n + 1)}

    degrees: list[int] = []

    def choose(i: int, remaining: int, num: int, den: int, ways: int, used: dict[int, int]):
        if remaining == 0:
            total = psi * num
            if total % den:
                raise ArithmeticError("inexact degree in GL character formula")
            degrees.extend([total // den] * ways)
            return
        if i == len(blocks):
            return
        d, shape, bnum, bden = blocks[i]
        weight = d * sum(shape)
        # skip this block entirely
        choose(i + 1, remaining, num, den, ways, used)
        # use it k >= 1 times on k distinct polynomials of degree d
        k = 1
        cur_num, cur_den = num, den
        while weight * k <= remaining:
            cur_num *= bnum
            cur_den *= bden
            already = used.get(d, 0)
            avail = poly_counts[d] - already
            if avail < k:
                break
            used[d] = already + k
            choose(i + 1, remaining - weight * k, cur_num, cur_den,
                   ways * math.comb(avail, k), used)
            used[d] = already
            k += 1

    choose(0, n, 1, 1, 1, {})
    degrees.sort()
    total_sq = sum(d * d for d in degrees)
    if total_sq != gl_order(n, q):
        raise ArithmeticError(
            f"GL({n},{q}) degree multiset fails sum d^2 = |G| "
            f"({total_sq} != {gl_order(n, q)})"
        )
    return degrees


@lru_cache(maxsize=None)
def gl_class_count(n: int, q: int) -> int:
    """Number of conjugacy classes (= number of irreducibles)."""
    return len(gl_degree_multiset(n, q))
