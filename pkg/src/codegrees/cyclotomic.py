"""Exact arithmetic with sums of roots of unity.

Character values are stored as multiplicity vectors over the e-th roots
of unity where e is the order of the group element.  Sums of products of
such values are verified against rational integers by reducing the
exponent vector modulo the cyclotomic polynomial Phi_e with exact
integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exact import IntPoly


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> IntPoly:
    """Phi_e as an IntPoly, via x^e - 1 = prod_{d | e} Phi_d."""
    if e < 1:
        raise ValueError("order must be positive")
    num = IntPoly.of(*([-1] + [0] * (e - 1) + [1]))  # x^e - 1
    for d in range(1, e):
        if e % d == 0:
            num = _poly_div_exact(num, cyclotomic_polynomial(d))
    return num


def _poly_div_exact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact polynomial division over the integers (monic-safe for our use)."""
    ra = list(a.coeffs)
    rb = b.coeffs
    out = [0] * (len(ra) - len(rb) + 1)
    for i in range(len(out) - 1, -1, -1):
        c, rem = divmod(ra[i + len(rb) - 1], rb[-1])
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[i] = c
        for j, bc in enumerate(rb):
            ra[i + j] -= c * bc
    if any(ra[: len(rb) - 1]):
        raise ArithmeticError("nonzero polynomial remainder")
    return IntPoly.of(*out)


class CycloContext:
    """Reduction of integer combinations of e-th roots of unity mod Phi_e."""

    def __init__(self, e: int):
        self.e = e
        phi = cyclotomic_polynomial(e)
        self.dim = phi.degree
        rows = []
        cur = [0] * self.dim
        if self.dim:
            cur[0] = 1
        for _ in range(e):
            rows.append(list(cur))
            # multiply by x and reduce by the monic Phi_e
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                for j in range(self.dim):
                    nxt[j] -= lead * phi.coeffs[j]
            cur = nxt
        self._rows = rows
        self._np_rows = np.array(rows, dtype=np.int64)
        self._row_mag = max((max(abs(c) for c in r) for r in rows if r), default=0)

    def reduce_dense(self, vec) -> tuple[int, ...]:
        """Canonical coordinates of sum_t vec[t] * zeta_e^t."""
        arr = np.asarray(vec, dtype=np.int64)
        if arr.shape != (self.e,):
            raise ValueError("expected a dense exponent vector of length e")
        # int64 stays exact as long as this product bound holds
        mag = int(np.abs(arr).max(initial=0))
        if mag and self._row_mag and mag * self._row_mag * self.e >= 2**62:
            total = [0] * self.dim
            for t, c in enumerate(vec):
                if c:
                    row = self._rows[t]
                    for j in range(self.dim):
                        total[j] += c * row[j]
            return tuple(total)
        return tuple(int(x) for x in arr @ self._np_rows)

    def equals_integer(self, vec, n: int) -> bool:
        red = self.reduce_dense(vec)
        if not red:
            return n == 0
        return red[0] == n and all(c == 0 for c in red[1:])


@lru_cache(maxsize=None)
def context(e: int) -> CycloContext:
    return CycloContext(e)


@dataclass(frozen=True)
class CyclotomicValue:
    """chi(g) = sum_k mults[k] * zeta_order^k with nonnegative multiplicities."""

    order: int
    mults: tuple[int, ...]

    def __post_init__(self):
        if len(self.mults) != self.order:
            raise ValueError("need one multiplicity per power of the root")
        if any(m < 0 for m in self.mults):
            raise ValueError("multiplicities must be nonnegative")

    @staticmethod
    def integer(n: int, order: int = 1) -> "CyclotomicValue":
        mults = [0] * order
        mults[0] = n
        return CyclotomicValue(order, tuple(mults))

    @property
    def total(self) -> int:
        return sum(self.mults)

    def conjugate(self) -> "CyclotomicValue":
        e = self.order
        return CyclotomicValue(e, tuple(self.mults[(-k) % e] for k in range(e)))

    def is_real(self) -> bool:
        e = self.order
        return all(self.mults[k] == self.mults[(e - k) % e] for k in range(e))

    def is_integer(self, n: int) -> bool:
        vec = [0] * self.order
        for k, m in enumerate(self.mults):
            vec[k] += m
        return context(self.order).equals_integer(vec, n)

    def complex_value(self) -> complex:
        e = self.order
        return sum(m * np.exp(2j * np.pi * k / e) for k, m in enumerate(self.mults))


def accumulate_product(
    acc: list[int], e: int, a: CyclotomicValue, b: CyclotomicValue, weight: int
) -> None:
    """acc += weight * a * b, in the dense exponent basis of zeta_e.

    Both orders must divide e.
    """
    if e % a.order or e % b.order:
        raise ValueError("value orders must divide the ambient order")
    sa, sb = e // a.order, e // b.order
    for i, ma in enumerate(a.mults):
        if not ma:
            continue
        ia = i * sa
        w = weight * ma
        for j, mb in enumerate(b.mults):
            if not mb:
                continue
            acc[(ia + j * sb) % e] += w * mb
