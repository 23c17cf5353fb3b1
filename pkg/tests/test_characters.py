import random
from fractions import Fraction

import pytest

from torelli.characters import (
    ClassFunction,
    NonIntegralMultiplicity,
    ch_q,
    decompose,
    irreducible_character,
    murnaghan_nakayama,
    regular_character,
    sign_character,
    trivial_character,
)
from torelli.partitions import EMPTY, Partition, partitions_of, symmetric_group_irrep_dim, z_lambda
from torelli.symfunc import SymFunc, character_value, change_basis


def test_murnaghan_nakayama_table():
    assert murnaghan_nakayama(EMPTY, EMPTY) == 1
    assert murnaghan_nakayama(Partition((2, 1)), Partition((1, 1, 1))) == 2
    assert murnaghan_nakayama(Partition((2, 1)), Partition((2, 1))) == 0
    assert murnaghan_nakayama(Partition((2, 1)), Partition((3,))) == -1
    # only hooks are nonzero on a full cycle
    assert murnaghan_nakayama(Partition((3, 2)), Partition((5,))) == 0
    assert murnaghan_nakayama(Partition((3, 1, 1)), Partition((5,))) == 1
    assert murnaghan_nakayama(Partition((4, 1)), Partition((5,))) == -1


def test_two_routes_agree():
    # strip removal against the strip-addition recursion
    for q in range(7):
        for lam in partitions_of(q):
            for mu in partitions_of(q):
                assert murnaghan_nakayama(lam, mu) == character_value(lam, mu)


def test_orthogonality():
    for q in range(1, 7):
        parts = partitions_of(q)
        for lam in parts:
            for nu in parts:
                total = Fraction(0)
                for mu in parts:
                    total += Fraction(
                        murnaghan_nakayama(lam, mu) * murnaghan_nakayama(nu, mu),
                        z_lambda(mu),
                    )
                assert total == (1 if lam == nu else 0)


def test_named_characters():
    chi = trivial_character(4)
    assert all(chi.value(mu) == 1 for mu in partitions_of(4))
    sgn = sign_character(4)
    assert sgn.value(Partition((2, 1, 1))) == -1
    assert sgn.value(Partition((2, 2))) == 1
    reg = regular_character(3)
    assert reg.value(Partition((1, 1, 1))) == 6
    assert reg.value(Partition((3,))) == 0


def test_ch_q_images():
    assert ch_q(trivial_character(3)) == change_basis("h3")
    assert ch_q(sign_character(3)) == change_basis("e3")
    assert ch_q(irreducible_character(Partition((2, 1)))) == change_basis("s[2,1]")


def test_decompose_regular():
    for q in (2, 3, 4, 5):
        mults = decompose(regular_character(q))
        for lam in partitions_of(q):
            assert mults[lam] == symmetric_group_irrep_dim(lam)


def test_decompose_product():
    chi = irreducible_character(Partition((2, 1))) * irreducible_character(
        Partition((2, 1))
    )
    assert decompose(chi) == {
        Partition((3,)): 1,
        Partition((2, 1)): 1,
        Partition((1, 1, 1)): 1,
    }


def test_decompose_rejects_non_characters():
    fake = ClassFunction(2, {Partition((2,)): Fraction(1, 2), Partition((1, 1)): Fraction(1)})
    with pytest.raises(NonIntegralMultiplicity):
        decompose(fake)


def test_random_character_round_trip():
    rng = random.Random(31)
    for _ in range(20):
        q = rng.randrange(1, 6)
        mults = {}
        for lam in partitions_of(q):
            if rng.random() < 0.5:
                mults[lam] = rng.randrange(1, 4)
        if not mults:
            continue
        chi = None
        for lam, m in mults.items():
            piece = irreducible_character(lam)
            for _ in range(m - 1):
                piece = piece + irreducible_character(lam)
            chi = piece if chi is None else chi + piece
        assert decompose(chi) == mults
        # Frobenius image matches the Schur expansion
        expected = SymFunc.zero()
        for lam, m in mults.items():
            expected = expected + SymFunc.schur(lam) * SymFunc.scalar(m)
        assert ch_q(chi) == expected
