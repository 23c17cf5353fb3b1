"""The ring of symmetric functions with exact rational coefficients.

Elements are stored in the Schur basis; the complete (h), elementary (e)
and power-sum (p) families enter and leave through explicit conversion
helpers. Truncated t-series over the ring carry a hard truncation order:
no operation ever claims a coefficient beyond what its inputs determine.
Negative t-exponents are tolerated inside a series because some inputs
are assembled from shifted pieces that only cancel at the end.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional

from .partitions import EMPTY, Partition, partitions_of, z_lambda


class PlethysmDivergence(ValueError):
    """Composition with an infinite sum requires positive valuation."""


class NotAUnit(ValueError):
    """Series inversion needs a nonzero scalar constant term."""


class ValuationViolation(ValueError):
    """A series failed a required lower bound on its t-valuation."""


# ---------------------------------------------------------------------------
# Littlewood-Richardson coefficients
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """The coefficient of s_lam in s_mu * s_nu.

    Counted as the number of semistandard skew tableaux of shape lam/mu
    and content nu whose reverse reading word is a lattice word.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if mu.size + nu.size != lam.size:
        return 0
    if not (lam.contains(mu) and lam.contains(nu)):
        return 0
    if not nu:
        return 1

    # Cells in reverse reading order: top row first, right to left.
    cells = []
    mu_padded = list(mu) + [0] * (len(lam) - len(mu))
    for r, row_end in enumerate(lam):
        for c in range(row_end - 1, mu_padded[r] - 1, -1):
            cells.append((r, c))

    fill: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)
    total = 0

    def place(idx: int) -> None:
        nonlocal total
        if idx == len(cells):
            total += 1
            return
        r, c = cells[idx]
        right = fill.get((r, c + 1))
        above = fill.get((r - 1, c)) if r > 0 and c >= mu_padded[r - 1] else None
        for v in range(1, len(nu) + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            if right is not None and v > right:
                continue
            if above is not None and v <= above:
                continue
            counts[v] += 1
            fill[(r, c)] = v
            place(idx + 1)
            del fill[(r, c)]
            counts[v] -= 1

    place(0)
    return total


@lru_cache(maxsize=None)
def _schur_product_table(mu: Partition, nu: Partition) -> tuple[tuple[Partition, int], ...]:
    n = mu.size + nu.size
    out = []
    for lam in partitions_of(n):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out.append((lam, c))
    return tuple(out)


# ---------------------------------------------------------------------------
# Border strips: multiplication by power sums, and basis conversions
# ---------------------------------------------------------------------------

def _is_border_strip(outer: Partition, inner: Partition) -> bool:
    inner_padded = list(inner) + [0] * (len(outer) - len(inner))
    cells = set()
    for r, row_end in enumerate(outer):
        for c in range(inner_padded[r], row_end):
            cells.add((r, c))
    if not cells:
        return False
    # No 2x2 block.
    for (r, c) in cells:
        if (r + 1, c) in cells and (r, c + 1) in cells and (r + 1, c + 1) in cells:
            return False
    # Edge-connected.
    seen = {next(iter(cells))}
    frontier = list(seen)
    while frontier:
        r, c = frontier.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return seen == cells


@lru_cache(maxsize=None)
def _p_times_schur(k: int, lam: Partition) -> tuple[tuple[Partition, int], ...]:
    """Expansion of p_k * s_lam: add border strips of size k with sign."""
    out = []
    for outer in partitions_of(lam.size + k):
        if not outer.contains(lam):
            continue
        if not _is_border_strip(outer, lam):
            continue
        inner_padded = list(lam) + [0] * (len(outer) - len(lam))
        height = sum(1 for r in range(len(outer)) if outer[r] > inner_padded[r]) - 1
        out.append((outer, (-1) ** height))
    return tuple(out)


@lru_cache(maxsize=None)
def _p_monomial_schur(mu: Partition) -> tuple[tuple[Partition, int], ...]:
    """Schur expansion of the power-sum monomial p_mu."""
    acc: dict[Partition, int] = {EMPTY: 1}
    for part in mu:
        nxt: dict[Partition, int] = {}
        for lam, coeff in acc.items():
            for outer, sign in _p_times_schur(part, lam):
                nxt[outer] = nxt.get(outer, 0) + coeff * sign
        acc = {k: v for k, v in nxt.items() if v}
    return tuple(sorted(acc.items(), key=lambda kv: kv[0].sort_key()))


def character_value(lam: Partition, mu: Partition) -> int:
    """Irreducible symmetric group character chi^lam evaluated on class mu.

    Read off as the coefficient of s_lam in the Schur expansion of p_mu.
    """
    for shape, value in _p_monomial_schur(Partition(mu)):
        if shape == lam:
            return value
    return 0


# ---------------------------------------------------------------------------
# SymFunc
# ---------------------------------------------------------------------------

class SymFunc:
    """A finite rational linear combination of Schur functions."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[Partition, Fraction]] = None):
        cleaned: dict[Partition, Fraction] = {}
        if coeffs:
            for lam, c in coeffs.items():
                c = Fraction(c)
                if c:
                    cleaned[Partition(lam)] = c
        self.coeffs = cleaned

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "SymFunc":
        return SymFunc()

    @staticmethod
    def scalar(c) -> "SymFunc":
        return SymFunc({EMPTY: Fraction(c)})

    @staticmethod
    def schur(lam) -> "SymFunc":
        return SymFunc({Partition(lam): Fraction(1)})

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_scalar(self) -> bool:
        return all(lam == EMPTY for lam in self.coeffs)

    def coeff(self, lam) -> Fraction:
        return self.coeffs.get(Partition(lam), Fraction(0))

    def support(self) -> list[Partition]:
        return sorted(self.coeffs, key=lambda p: p.sort_key())

    def degree(self) -> int:
        """Largest homogeneous degree present; -1 for the zero element."""
        return max((lam.size for lam in self.coeffs), default=-1)

    def homogeneous_part(self, d: int) -> "SymFunc":
        return SymFunc({lam: c for lam, c in self.coeffs.items() if lam.size == d})

    def homogeneous_components(self) -> dict[int, "SymFunc"]:
        out: dict[int, dict[Partition, Fraction]] = {}
        for lam, c in self.coeffs.items():
            out.setdefault(lam.size, {})[lam] = c
        return {d: SymFunc(m) for d, m in sorted(out.items())}

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (SymFunc, int, Fraction)):
            return NotImplemented
        other = _as_symfunc(other)
        merged = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            merged[lam] = merged.get(lam, Fraction(0)) + c
        return SymFunc(merged)

    __radd__ = __add__

    def __neg__(self) -> "SymFunc":
        return SymFunc({lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, (SymFunc, int, Fraction)):
            return NotImplemented
        return self + (-_as_symfunc(other))

    def __rsub__(self, other):
        if not isinstance(other, (SymFunc, int, Fraction)):
            return NotImplemented
        return _as_symfunc(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymFunc({lam: c * other for lam, c in self.coeffs.items()})
        if not isinstance(other, SymFunc):
            return NotImplemented
        out: dict[Partition, Fraction] = {}
        for mu, a in self.coeffs.items():
            for nu, b in other.coeffs.items():
                for lam, c in _schur_product_table(mu, nu):
                    out[lam] = out.get(lam, Fraction(0)) + a * b * c
        return SymFunc(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, (SymFunc, int, Fraction)):
            return NotImplemented
        return self.coeffs == _as_symfunc(other).coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- basis conversions -----------------------------------------------------

    def to_p(self) -> dict[Partition, Fraction]:
        """Expansion in power-sum monomials, via character orthogonality."""
        out: dict[Partition, Fraction] = {}
        for d, piece in self.homogeneous_components().items():
            for mu in partitions_of(d):
                total = Fraction(0)
                for lam, c in piece.coeffs.items():
                    total += c * character_value(lam, mu)
                if total:
                    out[mu] = out.get(mu, Fraction(0)) + total / z_lambda(mu)
        return out

    def __str__(self) -> str:
        return render_symfunc(self)

    def __repr__(self) -> str:
        return f"SymFunc({self.coeffs!r})"


def _as_symfunc(x) -> SymFunc:
    if isinstance(x, SymFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return SymFunc.scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a symmetric function")


def h_sym(k: int) -> SymFunc:
    """Complete homogeneous symmetric function h_k = s_(k)."""
    if k < 0:
        return SymFunc.zero()
    return SymFunc.schur(Partition((k,)) if k else EMPTY)


def e_sym(k: int) -> SymFunc:
    """Elementary symmetric function e_k = s_(1^k)."""
    if k < 0:
        return SymFunc.zero()
    return SymFunc.schur(Partition((1,) * k))


def p_sym(k: int) -> SymFunc:
    """Power sum p_k, expanded into hook Schur functions."""
    if k == 0:
        return SymFunc.scalar(1)
    return SymFunc(dict((lam, Fraction(c)) for lam, c in _p_monomial_schur(Partition((k,)))))


def from_p_monomials(terms: Mapping[Partition, Fraction]) -> SymFunc:
    out = SymFunc.zero()
    for mu, c in terms.items():
        out = out + SymFunc(
            {lam: Fraction(c) * v for lam, v in _p_monomial_schur(Partition(mu))}
        )
    return out


def omega(f: SymFunc) -> SymFunc:
    """The involution sending s_lam to s_{lam'} (equivalently e_k to h_k)."""
    return SymFunc({lam.conjugate(): c for lam, c in f.coeffs.items()})


# ---------------------------------------------------------------------------
# change_basis: parse small h/e/p/s expressions into the Schur basis
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<gen>[hep])(?P<idx>\d+)|(?P<schur>s\[(?P<parts>[^\]]*)\])"
    r"|(?P<num>\d+(?:/\d+)?)|(?P<op>[+\-*^()]))"
)


def change_basis(text: str) -> SymFunc:
    """Evaluate an expression in h/e/p generators and s[..] terms.

    Supports sums, differences, products, integer powers and rational
    scalars, e.g. "h3*e2 - 2*p2^2". Returns the Schur-basis result.
    """
    from .partitions import parse_partition

    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot parse {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("gen"):
            k = int(m.group("idx"))
            base = {"h": h_sym, "e": e_sym, "p": p_sym}[m.group("gen")]
            tokens.append(base(k))
        elif m.group("schur"):
            tokens.append(SymFunc.schur(parse_partition(m.group("parts"))))
        elif m.group("num"):
            tokens.append(SymFunc.scalar(Fraction(m.group("num"))))
        else:
            tokens.append(m.group("op"))

    def parse_sum(i: int) -> tuple[SymFunc, int]:
        sign = 1
        while i < len(tokens) and tokens[i] in ("+", "-"):
            if tokens[i] == "-":
                sign = -sign
            i += 1
        value, i = parse_product(i)
        total = value * sign
        while i < len(tokens) and tokens[i] in ("+", "-"):
            sign = 1
            while i < len(tokens) and tokens[i] in ("+", "-"):
                if tokens[i] == "-":
                    sign = -sign
                i += 1
            value, i = parse_product(i)
            total = total + value * sign
        return total, i

    def parse_product(i: int) -> tuple[SymFunc, int]:
        value, i = parse_power(i)
        while i < len(tokens) and tokens[i] == "*":
            nxt, i = parse_power(i + 1)
            value = value * nxt
        return value, i

    def parse_power(i: int) -> tuple[SymFunc, int]:
        value, i = parse_atom(i)
        if i < len(tokens) and tokens[i] == "^":
            exp_tok = tokens[i + 1]
            if not (isinstance(exp_tok, SymFunc) and exp_tok.is_scalar()):
                raise ValueError("exponent must be a number")
            exp = exp_tok.coeff(EMPTY)
            if exp.denominator != 1 or exp < 0:
                raise ValueError("exponent must be a nonnegative integer")
            out = SymFunc.scalar(1)
            for _ in range(int(exp)):
                out = out * value
            return out, i + 2
        return value, i

    def parse_atom(i: int) -> tuple[SymFunc, int]:
        if i >= len(tokens):
            raise ValueError("unexpected end of expression")
        tok = tokens[i]
        if tok == "(":
            value, i = parse_sum(i + 1)
            if i >= len(tokens) or tokens[i] != ")":
                raise ValueError("unbalanced parentheses")
            return value, i + 1
        if isinstance(tok, SymFunc):
            return tok, i + 1
        raise ValueError(f"unexpected token {tok!r}")

    result, i = parse_sum(0)
    if i != len(tokens):
        raise ValueError("trailing tokens in expression")
    return result


# ---------------------------------------------------------------------------
# LambdaSeries
# ---------------------------------------------------------------------------

class LambdaSeries:
    """Truncated series in t with SymFunc coefficients.

    Exponents may be negative; the truncation order is the largest
    exponent whose coefficient the series claims to know.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms: Mapping[int, SymFunc], trunc: int):
        self.trunc = int(trunc)
        cleaned: dict[int, SymFunc] = {}
        for k, f in terms.items():
            if k > self.trunc:
                continue
            f = _as_symfunc(f)
            if not f.is_zero():
                cleaned[int(k)] = f
        self.terms = cleaned

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(trunc: int) -> "LambdaSeries":
        return LambdaSeries({}, trunc)

    @staticmethod
    def one(trunc: int) -> "LambdaSeries":
        return LambdaSeries({0: SymFunc.scalar(1)}, trunc)

    @staticmethod
    def monomial(f, exp: int, trunc: int) -> "LambdaSeries":
        return LambdaSeries({exp: _as_symfunc(f)}, trunc)

    @staticmethod
    def from_rational_coeffs(coeffs: Mapping[int, Fraction], trunc: int) -> "LambdaSeries":
        return LambdaSeries(
            {k: SymFunc.scalar(c) for k, c in coeffs.items()}, trunc
        )

    # -- queries -------------------------------------------------------------

    def coefficient(self, k: int) -> SymFunc:
        if k > self.trunc:
            raise ValuationViolation(
                f"coefficient of t^{k} requested beyond truncation order {self.trunc}"
            )
        return self.terms.get(k, SymFunc.zero())

    def valuation(self) -> Optional[int]:
        """Smallest exponent present, or None for the (truncated) zero series."""
        return min(self.terms) if self.terms else None

    def require_valuation(self, bound: int) -> "LambdaSeries":
        v = self.valuation()
        if v is not None and v < bound:
            raise ValuationViolation(f"series has valuation {v}, needs >= {bound}")
        return self

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "LambdaSeries":
        if isinstance(other, LambdaSeries):
            return other
        if isinstance(other, (int, Fraction, SymFunc)):
            return LambdaSeries({0: _as_symfunc(other)}, self.trunc)
        raise TypeError(f"cannot interpret {other!r} as a series")

    def __add__(self, other) -> "LambdaSeries":
        other = self._coerce(other)
        trunc = min(self.trunc, other.trunc)
        merged = dict(self.terms)
        for k, f in other.terms.items():
            merged[k] = merged.get(k, SymFunc.zero()) + f
        return LambdaSeries(merged, trunc)

    __radd__ = __add__

    def __neg__(self) -> "LambdaSeries":
        return LambdaSeries({k: -f for k, f in self.terms.items()}, self.trunc)

    def __sub__(self, other) -> "LambdaSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LambdaSeries":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "LambdaSeries":
        if isinstance(other, (int, Fraction, SymFunc)):
            f = _as_symfunc(other)
            return LambdaSeries({k: g * f for k, g in self.terms.items()}, self.trunc)
        other = self._coerce(other)
        # With Laurent terms present, a product coefficient near the cut
        # may need factors beyond the other input's truncation, so the
        # claimed order shrinks accordingly.
        val_s = min(self.terms) if self.terms else self.trunc + 1
        val_o = min(other.terms) if other.terms else other.trunc + 1
        trunc = min(self.trunc, other.trunc, val_s + other.trunc, val_o + self.trunc)
        out: dict[int, SymFunc] = {}
        for a, f in self.terms.items():
            for b, g in other.terms.items():
                k = a + b
                if k > trunc:
                    continue
                prod = f * g
                if k in out:
                    out[k] = out[k] + prod
                else:
                    out[k] = prod
        return LambdaSeries(out, trunc)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LambdaSeries":
        """Multiply by the exact monomial t^k."""
        return LambdaSeries({a + k: f for a, f in self.terms.items()}, self.trunc + k)

    def truncate(self, d: int) -> "LambdaSeries":
        if d > self.trunc:
            raise ValuationViolation(
                f"cannot extend knowledge from order {self.trunc} to {d}"
            )
        return LambdaSeries({k: f for k, f in self.terms.items() if k <= d}, d)

    def map_coefficients(self, fn: Callable[[SymFunc], SymFunc]) -> "LambdaSeries":
        return LambdaSeries({k: fn(f) for k, f in self.terms.items()}, self.trunc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.terms == other.terms

    def __str__(self) -> str:
        return render_series(self)

    def __repr__(self) -> str:
        return f"LambdaSeries({self.terms!r}, trunc={self.trunc})"


def series_invert(g: LambdaSeries) -> LambdaSeries:
    """Multiplicative inverse, term by term, up to g's truncation order."""
    if any(k < 0 for k in g.terms):
        raise NotAUnit("cannot invert a series with negative exponents")
    c0 = g.terms.get(0, SymFunc.zero())
    if not c0.is_scalar() or c0.is_zero():
        raise NotAUnit("constant term must be a nonzero scalar")
    inv0 = Fraction(1) / c0.coeff(EMPTY)
    out: dict[int, SymFunc] = {0: SymFunc.scalar(inv0)}
    for k in range(1, g.trunc + 1):
        acc = SymFunc.zero()
        for j in range(1, k + 1):
            aj = g.terms.get(j)
            if aj is None:
                continue
            bk = out.get(k - j)
            if bk is None:
                continue
            acc = acc + aj * bk
        if not acc.is_zero():
            out[k] = acc * (-inv0)
    return LambdaSeries(out, g.trunc)


# ---------------------------------------------------------------------------
# Plethysm
# ---------------------------------------------------------------------------

def _pk_compose(k: int, g: LambdaSeries) -> LambdaSeries:
    """p_k composed with g: p_m -> p_{km} in coefficients, t -> t^k."""
    if k == 1:
        return g
    out: dict[int, SymFunc] = {}
    for a, f in g.terms.items():
        if k * a > g.trunc:
            continue
        stretched: dict[Partition, Fraction] = {}
        for mu, c in f.to_p().items():
            stretched[Partition(tuple(k * part for part in mu))] = c
        target = from_p_monomials(stretched)
        key = k * a
        out[key] = out.get(key, SymFunc.zero()) + target
    return LambdaSeries(out, g.trunc)


def plethysm(f: SymFunc, g: LambdaSeries) -> LambdaSeries:
    """Composition f of g for a finite symmetric function f."""
    pk_cache: dict[int, LambdaSeries] = {}

    def pk(k: int) -> LambdaSeries:
        if k not in pk_cache:
            pk_cache[k] = _pk_compose(k, g)
        return pk_cache[k]

    total = LambdaSeries.zero(g.trunc)
    for mu, c in f.to_p().items():
        term = LambdaSeries.one(g.trunc)
        for part in mu:
            term = term * pk(part)
        total = total + term * c
    return total


def exp_h(g: LambdaSeries) -> LambdaSeries:
    """Sum over q of h_q composed with g.

    Only finitely many q contribute below the truncation order because g
    must have positive t-valuation; otherwise the sum diverges.
    """
    v = g.valuation()
    if v is not None and v < 1:
        raise PlethysmDivergence(
            "composing the full homogeneous family needs t-valuation >= 1"
        )
    pk_cache: dict[int, LambdaSeries] = {}

    def pk(k: int) -> LambdaSeries:
        if k not in pk_cache:
            pk_cache[k] = _pk_compose(k, g)
        return pk_cache[k]

    total = LambdaSeries.one(g.trunc)
    for q in range(1, g.trunc + 1):
        for mu in partitions_of(q):
            term = LambdaSeries.one(g.trunc)
            for part in mu:
                term = term * pk(part)
            total = total + term * Fraction(1, z_lambda(mu))
    return total


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _render_coeff(c: Fraction, symbol: Optional[str]) -> str:
    if symbol is None:
        return str(c)
    if c == 1:
        return symbol
    if c == -1:
        return f"-{symbol}"
    return f"{c}*{symbol}"


def _join_signed(pieces: list[str]) -> str:
    out = pieces[0]
    for piece in pieces[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out


def _render_parts(items, letter: str) -> str:
    pieces = []
    for lam, c in items:
        symbol = None if lam == EMPTY else f"{letter}[{lam}]"
        pieces.append(_render_coeff(c, symbol))
    return _join_signed(pieces)


def _render_series_parts(bodies: dict[int, str], nterms: dict[int, int], trunc: int) -> str:
    if not bodies:
        return "0"
    pieces = []
    for k in sorted(bodies):
        body = bodies[k]
        if k == 0:
            pieces.append(body)
            continue
        t_part = "t" if k == 1 else f"t^{k}"
        if nterms.get(k, 1) > 1:
            pieces.append(f"({body})*{t_part}")
        elif body == "1":
            pieces.append(t_part)
        elif body == "-1":
            pieces.append(f"-{t_part}")
        else:
            pieces.append(f"{body}*{t_part}")
    return _join_signed(pieces)


def render_symfunc(f: SymFunc, letter: str = "s") -> str:
    if f.is_zero():
        return "0"
    return _render_parts([(lam, f.coeffs[lam]) for lam in f.support()], letter)


def render_series(s: LambdaSeries, letter: str = "s") -> str:
    return _render_series_parts(
        {k: render_symfunc(s.terms[k], letter) for k in s.exponents()},
        {k: len(s.terms[k].coeffs) for k in s.exponents()},
        s.trunc,
    )
