"""The graded label algebra and its characteristic-class structure.

V = Q[e, p_lo, ..., p_{n-1}] with e of degree 2n and p_i of degree 4i,
where lo = ceil((n+1)/4). Provides the monomial basis B with its
Poincare series under several degree selectors, the generating series
ch(B) feeding the plethysm pipeline, and Hirzebruch L-polynomials with
their images in B.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .partitions import Partition, partitions_of
from .symfunc import (
    LambdaSeries,
    SymFunc,
    ValuationViolation,
    e_sym,
    from_p_monomials,
    h_sym,
)


class IndexOutOfRange(ValueError):
    """An L-class index outside the window where kappa-degrees are positive."""


def generator_window(n: int) -> tuple[int, int]:
    """Inclusive range of legal Pontrjagin indices for half-dimension n."""
    return ((n + 4) // 4, n - 1)


class LabelMonomial:
    """A monomial in e and the p_i, immutable and hashable."""

    __slots__ = ("n", "e_exp", "p_exps")

    def __init__(self, n: int, e_exp: int = 0, p_exps=()):
        if n < 1:
            raise ValueError("half-dimension must be positive")
        self.n = int(n)
        self.e_exp = int(e_exp)
        if self.e_exp < 0:
            raise ValueError("negative exponent")
        lo, hi = generator_window(n)
        cleaned = []
        for i, k in sorted(p_exps):
            if k < 0:
                raise ValueError("negative exponent")
            if k == 0:
                continue
            if not lo <= i <= hi:
                raise ValueError(f"p_{i} is not a generator for n={n}")
            cleaned.append((int(i), int(k)))
        self.p_exps = tuple(cleaned)

    @staticmethod
    def unit(n: int) -> "LabelMonomial":
        return LabelMonomial(n)

    @staticmethod
    def e(n: int, k: int = 1) -> "LabelMonomial":
        return LabelMonomial(n, e_exp=k)

    @staticmethod
    def p(n: int, i: int, k: int = 1) -> "LabelMonomial":
        return LabelMonomial(n, p_exps=((i, k),))

    @property
    def degree(self) -> int:
        return 2 * self.n * self.e_exp + sum(4 * i * k for i, k in self.p_exps)

    def is_unit(self) -> bool:
        return self.e_exp == 0 and not self.p_exps

    def __mul__(self, other: "LabelMonomial") -> "LabelMonomial":
        if not isinstance(other, LabelMonomial):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("cannot multiply labels of different half-dimension")
        merged = dict(self.p_exps)
        for i, k in other.p_exps:
            merged[i] = merged.get(i, 0) + k
        return LabelMonomial(self.n, self.e_exp + other.e_exp, tuple(merged.items()))

    def sort_key(self):
        return (self.degree, self.e_exp, self.p_exps)

    def __lt__(self, other: "LabelMonomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelMonomial):
            return NotImplemented
        return (self.n, self.e_exp, self.p_exps) == (other.n, other.e_exp, other.p_exps)

    def __hash__(self) -> int:
        return hash((self.n, self.e_exp, self.p_exps))

    def __str__(self) -> str:
        if self.is_unit():
            return "1"
        pieces = []
        if self.e_exp:
            pieces.append("e" if self.e_exp == 1 else f"e^{self.e_exp}")
        for i, k in self.p_exps:
            pieces.append(f"p{i}" if k == 1 else f"p{i}^{k}")
        return "*".join(pieces)

    def __repr__(self) -> str:
        return f"LabelMonomial(n={self.n}, {self!s})"


def parse_label(text: str, n: int) -> LabelMonomial:
    """Parse monomial syntax like "e^2*p1" or "1"."""
    text = text.strip()
    if text in ("1", ""):
        return LabelMonomial.unit(n)
    e_exp = 0
    p_exps: dict[int, int] = {}
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            base, _, exp_text = factor.partition("^")
            exp = int(exp_text)
        else:
            base, exp = factor, 1
        base = base.strip()
        if base == "e":
            e_exp += exp
        elif base.startswith("p"):
            i = int(base[1:])
            p_exps[i] = p_exps.get(i, 0) + exp
        elif base == "1":
            continue
        else:
            raise ValueError(f"unrecognized label factor {factor!r}")
    return LabelMonomial(n, e_exp, tuple(p_exps.items()))


def labels_of_degree(n: int, d: int) -> list[LabelMonomial]:
    """All monomials in B of degree exactly d, sorted."""
    return [m for m in labels_up_to(n, d) if m.degree == d]


@lru_cache(maxsize=None)
def labels_up_to(n: int, cap: int) -> tuple[LabelMonomial, ...]:
    """All monomials in B of degree at most cap, sorted."""
    lo, hi = generator_window(n)
    gens = [(2 * n, "e")] + [(4 * i, i) for i in range(lo, hi + 1)]

    def rec(idx: int, remaining: int) -> Iterator[tuple[int, tuple]]:
        if idx == len(gens):
            yield (0, ())
            return
        deg, name = gens[idx]
        k = 0
        while k * deg <= remaining:
            for used, tail in rec(idx + 1, remaining - k * deg):
                yield (k * deg + used, ((name, k),) + tail if k else tail)
            k += 1

    out = []
    for _, exps in rec(0, cap):
        e_exp = 0
        p_exps = []
        for name, k in exps:
            if name == "e":
                e_exp = k
            else:
                p_exps.append((name, k))
        out.append(LabelMonomial(n, e_exp, tuple(p_exps)))
    out.sort(key=LabelMonomial.sort_key)
    return tuple(out)


def _geometric(step: int, trunc: int) -> LambdaSeries:
    terms = {k: SymFunc.scalar(1) for k in range(0, trunc + 1, step)}
    return LambdaSeries(terms, trunc)


def poincare_series(n: int, selector: str, trunc: int) -> LambdaSeries:
    """Poincare series of V under a degree selector.

    Selectors: "all", "deg>2n", "deg>=n", "deg>0". The three proper
    selectors subtract the finitely many monomials below their cutoff:
    only 1, e, and single p_i can have degree at most 2n.
    """
    if 2 * n < 2:
        raise ValueError("need 2n >= 2")
    lo, hi = generator_window(n)
    series = _geometric(2 * n, trunc)
    for i in range(lo, hi + 1):
        series = series * _geometric(4 * i, trunc)
    if selector == "all":
        return series
    if selector in ("deg>=n", "deg>0"):
        return series - LambdaSeries.one(trunc)
    if selector == "deg>2n":
        low = LambdaSeries.one(trunc) + LambdaSeries.monomial(
            SymFunc.scalar(1), 2 * n, trunc
        )
        for i in range(lo, n // 2 + 1):
            low = low + LambdaSeries.monomial(SymFunc.scalar(1), 4 * i, trunc)
        return series - low
    raise ValueError(f"unknown selector {selector!r}")


def ch_B(n: int, trunc: int) -> LambdaSeries:
    """Generating series of the basis B weighted by h_q and kappa-degree.

    ch(B) = h_0 P(V_{>2n}) t^{-2n} + h_1 P(V_{>=n}) t^{-n}
          + h_2 P(V_{>0}) + sum_{q>=3} h_q P(V) t^{n(q-2)},
    truncated at trunc; the result must have t-valuation >= 1.
    """
    total = poincare_series(n, "deg>2n", trunc + 2 * n).shift(-2 * n).truncate(trunc)
    piece1 = poincare_series(n, "deg>=n", trunc + n).shift(-n).truncate(trunc)
    total = total + piece1.map_coefficients(lambda c: h_sym(1) * c)
    piece2 = poincare_series(n, "deg>0", trunc)
    total = total + piece2.map_coefficients(lambda c: h_sym(2) * c)
    full = poincare_series(n, "all", trunc)
    q = 3
    while n * (q - 2) <= trunc:
        shifted = full.truncate(trunc - n * (q - 2)).shift(n * (q - 2))
        hq = h_sym(q)
        total = total + shifted.map_coefficients(lambda c, hq=hq: hq * c)
        q += 1
    if any(k <= 0 for k in total.exponents()):
        raise ValuationViolation("ch(B) has a term of nonpositive t-exponent")
    return total


def _series_div(num: list[Fraction], den: list[Fraction], length: int) -> list[Fraction]:
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    out = []
    for k in range(length):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, k + 1):
            if j < len(den):
                acc -= den[j] * out[k - j]
        out.append(acc / den[0])
    return out


def _series_log(q: list[Fraction]) -> list[Fraction]:
    # q[0] must be 1; returns log(q) with zero constant term
    out = [Fraction(0)] * len(q)
    for k in range(1, len(q)):
        acc = k * q[k]
        for j in range(1, k):
            acc -= j * out[j] * q[k - j]
        out[k] = acc / k
    return out


@lru_cache(maxsize=None)
def _l_genus_p_coefficients(max_index: int) -> tuple[Fraction, ...]:
    """Coefficients a_k with log prod Q(z_j) = sum a_k p_k(z)."""
    length = max_index + 1
    sinh_over_x = [Fraction(1, _factorial(2 * k + 1)) for k in range(length)]
    cosh = [Fraction(1, _factorial(2 * k)) for k in range(length)]
    q = _series_div(cosh, sinh_over_x, length)
    return tuple(_series_log(q))


def _factorial(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


@lru_cache(maxsize=None)
def _e_basis_matrix(d: int) -> tuple[tuple[Partition, ...], list[list[Fraction]]]:
    parts = list(partitions_of(d))
    cols = []
    for mu in parts:
        prod = SymFunc.scalar(1)
        for part in mu:
            prod = prod * e_sym(part)
        cols.append(prod)
    matrix = [[col.coeff(lam) for col in cols] for lam in parts]
    return tuple(parts), matrix


def _to_e_basis(f: SymFunc, d: int) -> dict[Partition, Fraction]:
    """Solve for the e-monomial coordinates of a degree-d symmetric function."""
    parts, matrix = _e_basis_matrix(d)
    rows = [list(row) + [f.coeff(lam)] for lam, row in zip(parts, matrix)]
    m = len(parts)
    for col in range(m):
        pivot = next(r for r in range(col, m) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = Fraction(1) / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(m):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return {parts[r]: rows[r][m] for r in range(m) if rows[r][m]}


class LPolynomial:
    """The degree-4i Hirzebruch polynomial in Pontrjagin classes.

    Terms map partitions mu of i to rationals, a key mu standing for the
    monomial prod_j p_{mu_j}.
    """

    __slots__ = ("i", "terms")

    def __init__(self, i: int, terms: dict[Partition, Fraction]):
        self.i = int(i)
        self.terms = {
            Partition(mu): Fraction(c) for mu, c in terms.items() if c
        }
        for mu in self.terms:
            if mu.size != self.i:
                raise ValueError("L-polynomial terms must be homogeneous")

    def coefficient(self, mu) -> Fraction:
        return self.terms.get(Partition(mu), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LPolynomial):
            return NotImplemented
        return self.i == other.i and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mu in sorted(self.terms, key=Partition.sort_key, reverse=True):
            c = self.terms[mu]
            mult: dict[int, int] = {}
            for part in mu:
                mult[part] = mult.get(part, 0) + 1
            mono = "*".join(
                f"p{j}" if k == 1 else f"p{j}^{k}"
                for j, k in sorted(mult.items(), reverse=True)
            )
            if c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}")
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def __repr__(self) -> str:
        return f"LPolynomial(i={self.i}, {self!s})"


@lru_cache(maxsize=None)
def l_class(i: int) -> LPolynomial:
    """The i-th L-polynomial, from the multiplicative sequence of sqrt(z)/tanh(sqrt(z))."""
    if i < 1:
        raise ValueError("index must be positive")
    a = _l_genus_p_coefficients(i)
    # exp(sum a_k p_k), degree-i part: coefficient of p_mu is prod a_k^{m_k} / m_k!
    terms: dict[Partition, Fraction] = {}
    for mu in partitions_of(i):
        c = Fraction(1)
        mult: dict[int, int] = {}
        for part in mu:
            mult[part] = mult.get(part, 0) + 1
        for k, m in mult.items():
            c *= a[k] ** m / _factorial(m)
        if c:
            terms[mu] = c
    f = from_p_monomials(terms)
    return LPolynomial(i, _to_e_basis(f, i))


def l_class_image(i: int, n: int) -> dict[LabelMonomial, Fraction]:
    """Image of L_i in the label algebra: p_j -> 0 outside the window, p_n -> e^2."""
    if 2 * i <= n:
        raise IndexOutOfRange(
            f"L_{i} has nonpositive kappa-degree for n={n}; need i > n/2"
        )
    lo, hi = generator_window(n)
    out: dict[LabelMonomial, Fraction] = {}
    for mu, c in l_class(i).terms.items():
        e_exp = 0
        p_exps: dict[int, int] = {}
        dead = False
        for j in mu:
            if j == n:
                e_exp += 2
            elif j < lo or j > n:
                dead = True
                break
            else:
                p_exps[j] = p_exps.get(j, 0) + 1
        if dead:
            continue
        mono = LabelMonomial(n, e_exp, tuple(p_exps.items()))
        out[mono] = out.get(mono, Fraction(0)) + c
    return {m: c for m, c in out.items() if c}


def render_label_combination(terms: dict[LabelMonomial, Fraction]) -> str:
    if not terms:
        return "0"
    pieces = []
    for mono in sorted(terms, key=LabelMonomial.sort_key):
        c = terms[mono]
        if mono.is_unit():
            pieces.append(str(c))
        elif c == 1:
            pieces.append(str(mono))
        elif c == -1:
            pieces.append(f"-{mono}")
        else:
            pieces.append(f"{c}*{mono}")
    out = pieces[0]
    for piece in pieces[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out
