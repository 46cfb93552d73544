"""Parametric group families: expression language, admissibility, evaluation.

Family definition files carry order and witness codegree formulas as
factored expressions over the family parameters.  Evaluation is exact:
additive atoms become integers, products and quotients are combined as
factored integers, and any inexact quotient raises (that always means a
transcription bug in the data, never a rounding concern).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, Optional

from .codegree import DataError
from .exact import (
    ExactnessError,
    FactoredInt,
    IntPoly,
    ONE,
    factorize,
    is_prime_power,
)


class FamilyError(DataError):
    """Bad family data or inadmissible parameters."""


# ---------------------------------------------------------------------------
# expression language


@dataclass(frozen=True)
class Expr:
    op: str  # num sym add sub mul div pow gcd sqrt prod
    args: tuple = ()

    def __str__(self) -> str:
        return unparse(self)


def _num(v: int) -> Expr:
    return Expr("num", (v,))


def unparse(e: Expr) -> str:
    if e.op == "num":
        return str(e.args[0])
    if e.op == "sym":
        return e.args[0]
    if e.op in ("add", "sub", "mul", "div", "pow"):
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}[e.op]
        return f"({unparse(e.args[0])} {sym} {unparse(e.args[1])})"
    if e.op == "gcd":
        return f"gcd({unparse(e.args[0])}, {unparse(e.args[1])})"
    if e.op == "sqrt":
        return f"sqrt({unparse(e.args[0])})"
    if e.op == "prod":
        var, lo, hi, body = e.args
        return f"prod({var}, {unparse(lo)}, {unparse(hi)}, {unparse(body)})"
    raise ValueError(e.op)


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[()+\-*/^,])")


def tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise FamilyError(f"bad token at {text[pos:]!r}")
            break
        out.append("^" if m.group(1) == "**" else m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expect: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise FamilyError(f"expected {expect!r}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek() is not None:
            raise FamilyError(f"trailing tokens {self.tokens[self.pos:]}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            e = Expr("add" if op == "+" else "sub", (e, rhs))
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            e = Expr("mul" if op == "*" else "div", (e, rhs))
        return e

    def factor(self) -> Expr:
        tok = self.peek()
        if tok == "-":
            self.take()
            return Expr("sub", (_num(0), self.factor()))
        e = self.atom()
        if self.peek() == "^":
            self.take()
            return Expr("pow", (e, self.factor()))
        return e

    def atom(self) -> Expr:
        tok = self.take()
        if tok == "(":
            e = self.expr()
            self.take(")")
            return e
        if tok.isdigit():
            return _num(int(tok))
        if tok == "gcd":
            self.take("(")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(")")
            return Expr("gcd", (a, b))
        if tok == "sqrt":
            self.take("(")
            a = self.expr()
            self.take(")")
            return Expr("sqrt", (a,))
        if tok == "prod":
            self.take("(")
            var = self.take()
            self.take(",")
            lo = self.expr()
            self.take(",")
            hi = self.expr()
            self.take(",")
            body = self.expr()
            self.take(")")
            return Expr("prod", (var, lo, hi, body))
        if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
            return Expr("sym", (tok,))
        raise FamilyError(f"unexpected token {tok!r}")


def parse_expr(text: str) -> Expr:
    return _Parser(tokenize(text)).parse()


def eval_int(e: Expr, env: Mapping[str, int]) -> int:
    """Plain integer evaluation; division must be exact."""
    if e.op == "num":
        return e.args[0]
    if e.op == "sym":
        name = e.args[0]
        if name not in env:
            raise FamilyError(f"symbol {name!r} not assigned")
        return env[name]
    if e.op == "add":
        return eval_int(e.args[0], env) + eval_int(e.args[1], env)
    if e.op == "sub":
        return eval_int(e.args[0], env) - eval_int(e.args[1], env)
    if e.op == "mul":
        return eval_int(e.args[0], env) * eval_int(e.args[1], env)
    if e.op == "div":
        a, b = eval_int(e.args[0], env), eval_int(e.args[1], env)
        if b == 0 or a % b:
            raise ExactnessError(f"inexact division {a}/{b} in {e}")
        return a // b
    if e.op == "pow":
        return eval_int(e.args[0], env) ** eval_int(e.args[1], env)
    if e.op == "gcd":
        return math.gcd(eval_int(e.args[0], env), eval_int(e.args[1], env))
    if e.op == "sqrt":
        v = eval_int(e.args[0], env)
        r = math.isqrt(v)
        if r * r != v:
            raise ExactnessError(f"{v} is not a perfect square in {e}")
        return r
    if e.op == "prod":
        var, lo, hi, body = e.args
        out = 1
        inner = dict(env)
        for i in range(eval_int(lo, env), eval_int(hi, env) + 1):
            inner[var] = i
            out *= eval_int(body, inner)
        return out
    raise FamilyError(f"bad expression node {e.op}")


def eval_factored(e: Expr, env: Mapping[str, int]) -> FactoredInt:
    """Exact factored evaluation; quotients are checked for integrality."""
    if e.op == "mul":
        return eval_factored(e.args[0], env) * eval_factored(e.args[1], env)
    if e.op == "div":
        num = eval_factored(e.args[0], env)
        den = eval_factored(e.args[1], env)
        try:
            return num.div_exact(den)
        except ExactnessError as exc:
            raise ExactnessError(f"formula not integral at {dict(env)}: {e}") from exc
    if e.op == "pow":
        base = eval_factored(e.args[0], env)
        exp = eval_int(e.args[1], env)
        if exp < 0:
            raise FamilyError("negative exponent")
        out = ONE
        for _ in range(exp):
            out = out * base
        return out
    if e.op == "prod":
        var, lo, hi, body = e.args
        out = ONE
        inner = dict(env)
        for i in range(eval_int(lo, env), eval_int(hi, env) + 1):
            inner[var] = i
            out = out * eval_factored(body, inner)
        return out
    v = eval_int(e, env)
    if v <= 0:
        raise ExactnessError(f"nonpositive factor {v} from {e} at {dict(env)}")
    return factorize(v)


def poly_in(e: Expr, var: str) -> tuple[IntPoly, int]:
    """Interpret an expression as (numerator IntPoly in var, integer denominator).

    Supports +, -, *, ^ with integer exponents, integer literals, the
    variable, and division by integer constants.
    """
    if e.op == "num":
        return IntPoly.const(e.args[0]), 1
    if e.op == "sym":
        if e.args[0] != var:
            raise FamilyError(f"unexpected symbol {e.args[0]!r}; want polynomial in {var!r}")
        return IntPoly.x(), 1
    if e.op in ("add", "sub"):
        pa, da = poly_in(e.args[0], var)
        pb, db = poly_in(e.args[1], var)
        lcm = da * db // math.gcd(da, db)
        pa, pb = pa.scale(lcm // da), pb.scale(lcm // db)
        return (pa + pb, lcm) if e.op == "add" else (pa - pb, lcm)
    if e.op == "mul":
        pa, da = poly_in(e.args[0], var)
        pb, db = poly_in(e.args[1], var)
        return pa * pb, da * db
    if e.op == "div":
        pa, da = poly_in(e.args[0], var)
        pb, db = poly_in(e.args[1], var)
        if pb.degree != 0:
            raise FamilyError("polynomial division only by integer constants")
        return pa.scale(db), da * pb.coeffs[0]
    if e.op == "pow":
        pa, da = poly_in(e.args[0], var)
        k = eval_int(e.args[1], {})
        out, den = IntPoly.const(1), 1
        for _ in range(k):
            out, den = out * pa, den * da
        return out, den
    raise FamilyError(f"cannot interpret {e} as a polynomial in {var!r}")


# ---------------------------------------------------------------------------
# parameter domains


def admissible_stream(domain: str, start: int) -> Iterator[int]:
    """Ascending admissible values of a family parameter."""
    if domain == "integer":
        v = start
        while True:
            yield v
            v += 1
    v = start
    while True:
        pk = is_prime_power(v) if v >= 2 else None
        if pk is not None:
            p, k = pk
            if domain == "prime_power":
                yield v
            elif domain == "odd_prime_power" and p != 2:
                yield v
            elif domain == "even_prime_power" and p == 2:
                yield v
            elif domain == "power2_odd_exponent" and p == 2 and k % 2 == 1 and k >= 3:
                yield v
            elif domain == "power3_odd_exponent" and p == 3 and k % 2 == 1 and k >= 3:
                yield v
        v += 1


DOMAINS = (
    "integer",
    "prime_power",
    "odd_prime_power",
    "even_prime_power",
    "power2_odd_exponent",
    "power3_odd_exponent",
)


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Witness:
    label: str
    degree_src: str
    cod_src: str

    @property
    def degree(self) -> Expr:
        return parse_expr(self.degree_src)

    @property
    def cod(self) -> Expr:
        return parse_expr(self.cod_src)


@dataclass(frozen=True)
class GroupFamily:
    """One parametric family with exact order/witness formulas."""

    name: str
    params: tuple[str, ...]  # (q,) or (n, q)
    q_domain: str
    q_min: int
    n_min: int = 0
    order_src: str = ""
    order_qexp_src: str = ""  # exponent of q in the order, polynomial in n
    order_den_max_src: str = "1"  # upper bound for the gcd denominator
    derived: tuple[tuple[str, str], ...] = ()
    exclusions: tuple[tuple[tuple[str, int], ...], ...] = ()
    witnesses: tuple[Witness, ...] = ()
    full_cod: tuple[tuple[str, tuple[str, ...]], ...] = ()  # (variant, exprs)
    match_points: tuple[tuple[tuple[str, int], ...], ...] = ()
    nonsimple_branch: bool = False
    description: str = ""

    @property
    def two_param(self) -> bool:
        return len(self.params) == 2

    @property
    def q_param(self) -> str:
        return self.params[-1]

    def order_expr(self) -> Expr:
        return parse_expr(self.order_src)

    def env_at(self, point: Mapping[str, int]) -> dict[str, int]:
        env = dict(point)
        for name, src in self.derived:
            env[name] = eval_int(parse_expr(src), env)
        return env

    def is_excluded(self, point: Mapping[str, int]) -> bool:
        key = tuple(sorted(point.items()))
        return key in {tuple(sorted(e)) for e in self.exclusions}

    def is_match_point(self, point: Mapping[str, int]) -> bool:
        key = tuple(sorted(point.items()))
        return key in {tuple(sorted(m)) for m in self.match_points}

    def order_at(self, point: Mapping[str, int]) -> FactoredInt:
        return eval_factored(self.order_expr(), self.env_at(point))

    def eval_witnesses(self, point: Mapping[str, int]) -> list[tuple[str, FactoredInt, FactoredInt]]:
        """(label, degree, codegree) triples at one admissible point."""
        env = self.env_at(point)
        order = self.order_at(point)
        out = []
        for w in self.witnesses:
            degree = eval_factored(w.degree, env)
            cod = eval_factored(w.cod, env)
            if int(degree) * int(cod) != int(order):
                raise FamilyError(
                    f"{self.name}: witness {w.label} at {dict(point)}: "
                    f"degree * cod != order"
                )
            out.append((w.label, degree, cod))
        return out

    def eval_full_cod(self, point: Mapping[str, int], variant: str | None = None) -> list[FactoredInt]:
        env = self.env_at(point)
        for var_name, exprs in self.full_cod:
            if variant is None or var_name == variant:
                return [eval_factored(parse_expr(s), env) for s in exprs]
        raise FamilyError(f"{self.name}: no full codegree list"
                          + (f" for variant {variant!r}" if variant else ""))

    def variants(self) -> list[str]:
        return [v for v, _ in self.full_cod]


def eval_family(family: GroupFamily, point: Mapping[str, int]):
    """(order, witnesses) at an admissible, non-excluded parameter point."""
    if family.is_excluded(point):
        raise FamilyError(f"{family.name}: parameters {dict(point)} are excluded")
    q = point[family.q_param]
    if q < family.q_min:
        raise FamilyError(f"{family.name}: {family.q_param}={q} below minimum {family.q_min}")
    if family.q_domain != "integer":
        stream = admissible_stream(family.q_domain, q)
        if next(stream) != q:
            raise FamilyError(f"{family.name}: {q} not admissible for {family.q_domain}")
    if family.two_param and point[family.params[0]] < family.n_min:
        raise FamilyError(f"{family.name}: {family.params[0]} below minimum")
    return family.order_at(point), family.eval_witnesses(point)


# ---------------------------------------------------------------------------
# family files


def _parse_point(text: str) -> tuple[tuple[str, int], ...]:
    out = []
    for part in text.split():
        k, v = part.split("=")
        out.append((k.strip(), int(v)))
    return tuple(out)


def parse_family(text: str, name_hint: str = "") -> GroupFamily:
    fields: dict[str, str] = {}
    witnesses: list[Witness] = []
    degree_srcs: dict[str, str] = {}
    cod_srcs: dict[str, str] = {}
    full_cod: list[tuple[str, tuple[str, ...]]] = []
    exclusions: list[tuple[tuple[str, int], ...]] = []
    matches: list[tuple[tuple[str, int], ...]] = []
    derived: list[tuple[str, str]] = []

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise FamilyError(f"bad family line {line!r}")
        key, value = (s.strip() for s in line.split(":", 1))
        if key.startswith("degree "):
            degree_srcs[key.split(None, 1)[1]] = value
        elif key.startswith("cod "):
            cod_srcs[key.split(None, 1)[1]] = value
        elif key.startswith("fullcod "):
            full_cod.append((key.split(None, 1)[1], tuple(s.strip() for s in value.split(";"))))
        elif key == "exclude":
            exclusions.append(_parse_point(value))
        elif key == "match":
            matches.append(_parse_point(value))
        elif key == "derived":
            name, src = value.split("=", 1)
            derived.append((name.strip(), src.strip()))
        else:
            fields[key] = value

    for label in cod_srcs:
        if label not in degree_srcs:
            raise FamilyError(f"cod {label} has no matching degree expression")
        witnesses.append(Witness(label, degree_srcs[label], cod_srcs[label]))

    params = tuple(fields["params"].split())
    if fields.get("domain", "prime_power") not in DOMAINS:
        raise FamilyError(f"unknown domain {fields.get('domain')!r}")
    family = GroupFamily(
        name=fields.get("name", name_hint),
        params=params,
        q_domain=fields.get("domain", "prime_power"),
        q_min=int(fields.get("q_min", "2")),
        n_min=int(fields.get("n_min", "0")),
        order_src=fields["order"],
        order_qexp_src=fields.get("order_qexp", ""),
        order_den_max_src=fields.get("order_den_max", "1"),
        derived=tuple(derived),
        exclusions=tuple(exclusions),
        witnesses=tuple(witnesses),
        full_cod=tuple(full_cod),
        match_points=tuple(matches),
        nonsimple_branch=fields.get("nonsimple_branch", "false").lower() == "true",
        description=fields.get("description", ""),
    )
    # parse every expression once so file errors surface at load
    family.order_expr()
    for w in family.witnesses:
        w.degree, w.cod
    if family.order_qexp_src:
        poly_in(parse_expr(family.order_qexp_src), family.params[0])
    return family


def load_family(path: str | Path) -> GroupFamily:
    path = Path(path)
    try:
        return parse_family(path.read_text(), name_hint=path.stem)
    except (FamilyError, KeyError) as exc:
        raise FamilyError(f"{path.name}: {exc}") from exc


def load_families(directory: str | Path) -> dict[str, GroupFamily]:
    directory = Path(directory)
    out: dict[str, GroupFamily] = {}
    for path in sorted(directory.glob("*.fam")):
        fam = load_family(path)
        if fam.name in out:
            raise FamilyError(f"duplicate family {fam.name}")
        out[fam.name] = fam
    return out
