"""Character theory of symmetric groups.

Murnaghan-Nakayama evaluation, the Frobenius characteristic map into
symmetric functions, and decomposition of class functions into
irreducibles. This module is the independent oracle for the plethysm
pipeline: it never touches Schur expansions of power sums, only the
border-strip recursion, so agreement between ch_q of an irreducible
and the Schur basis is a genuine cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from .partitions import EMPTY, Partition, partitions_of, z_lambda
from .symfunc import SymFunc, _is_border_strip, from_p_monomials


class NonIntegralMultiplicity(ValueError):
    """Decomposition produced a fractional multiplicity: not a character."""


class ClassFunction:
    """A rational-valued function on conjugacy classes of a symmetric group."""

    __slots__ = ("q", "values")

    def __init__(self, q: int, values: Mapping[Partition, Fraction]):
        self.q = int(q)
        cleaned: dict[Partition, Fraction] = {}
        for mu, v in values.items():
            mu = Partition(mu)
            if mu.size != self.q:
                raise ValueError(f"class {mu} does not belong to degree {self.q}")
            v = Fraction(v)
            if v:
                cleaned[mu] = v
        self.values = cleaned

    def value(self, mu) -> Fraction:
        return self.values.get(Partition(mu), Fraction(0))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if self.q != other.q:
            raise ValueError("cannot add class functions of different degrees")
        merged = dict(self.values)
        for mu, v in other.values.items():
            merged[mu] = merged.get(mu, Fraction(0)) + v
        return ClassFunction(self.q, merged)

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ClassFunction(self.q, {m: v * other for m, v in self.values.items()})
        if isinstance(other, ClassFunction):
            # Pointwise product: the character of a tensor product.
            if self.q != other.q:
                raise ValueError("cannot multiply class functions of different degrees")
            return ClassFunction(
                self.q,
                {m: v * other.values[m] for m, v in self.values.items() if m in other.values},
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.q == other.q and self.values == other.values

    def __repr__(self) -> str:
        return f"ClassFunction(q={self.q}, {self.values!r})"


@lru_cache(maxsize=None)
def murnaghan_nakayama(lam: Partition, mu: Partition) -> int:
    """Value of the irreducible character chi^lam on the class mu.

    Recursion: strip a border strip whose size is the first part of mu,
    with sign (-1)^height, and recurse on what remains.
    """
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError("character argument must have matching size")
    if not lam:
        return 1
    k = mu[0]
    rest = Partition(mu[1:])
    total = 0
    for inner in partitions_of(lam.size - k):
        if not lam.contains(inner):
            continue
        if not _is_border_strip(lam, inner):
            continue
        inner_padded = list(inner) + [0] * (len(lam) - len(inner))
        height = sum(1 for r in range(len(lam)) if lam[r] > inner_padded[r]) - 1
        total += (-1) ** height * murnaghan_nakayama(inner, rest)
    return total


def irreducible_character(lam) -> ClassFunction:
    """The character of the irreducible representation indexed by lam."""
    lam = Partition(lam)
    q = lam.size
    return ClassFunction(
        q, {mu: Fraction(murnaghan_nakayama(lam, mu)) for mu in partitions_of(q)}
    )


def trivial_character(q: int) -> ClassFunction:
    return ClassFunction(q, {mu: Fraction(1) for mu in partitions_of(q)})


def sign_character(q: int) -> ClassFunction:
    # sign of a permutation of cycle type mu is (-1)^(q - number of cycles)
    return ClassFunction(
        q, {mu: Fraction((-1) ** (q - len(mu))) for mu in partitions_of(q)}
    )


def regular_character(q: int) -> ClassFunction:
    return ClassFunction(q, {Partition((1,) * q): Fraction(factorial(q))})


def ch_q(chi: ClassFunction) -> SymFunc:
    """Frobenius characteristic: sum over classes of chi(mu) p_mu / z_mu."""
    terms = {
        mu: v / z_lambda(mu) for mu, v in chi.values.items()
    }
    return from_p_monomials(terms)


def decompose(chi: ClassFunction) -> dict[Partition, int]:
    """Multiplicities of irreducibles in a virtual character.

    Inner product with each irreducible, weighted by class sizes. A
    fractional answer means the input was not a virtual character.
    """
    out: dict[Partition, int] = {}
    for lam in partitions_of(chi.q):
        total = Fraction(0)
        for mu, v in chi.values.items():
            total += v * murnaghan_nakayama(lam, mu) / z_lambda(mu)
        if total.denominator != 1:
            raise NonIntegralMultiplicity(
                f"multiplicity of {lam} came out as {total}"
            )
        if total:
            out[lam] = int(total)
    return out
