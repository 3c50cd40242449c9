import math
from fractions import Fraction

import pytest

from delsarte.groups import (
    FiniteAbelianGroup,
    cos_turn,
    cos_turn_exact,
    parse_group,
    unit_turn,
)


def test_add_examples():
    z5 = FiniteAbelianGroup((5,))
    assert (z5.element((2,)) + z5.element((4,))).coords == (1,)
    g = FiniteAbelianGroup((4, 3))
    assert (g.element((3, 2)) + g.element((1, 1))).coords == (0, 0)
    for i in range(g.size):
        e = g.element(i)
        assert (e + g.zero).coords == e.coords


def test_add_rejects_mismatched_groups():
    z5, z6 = FiniteAbelianGroup((5,)), FiniteAbelianGroup((6,))
    with pytest.raises(ValueError):
        z5.add(z5.element(1), z6.element(1))


def test_negate_examples():
    z5 = FiniteAbelianGroup((5,))
    assert (-z5.element((2,))).coords == (3,)
    g = FiniteAbelianGroup((4, 3))
    assert (-g.element((1, 2))).coords == (3, 1)
    assert (-g.zero).coords == (0, 0)


def test_negation_involution_and_identity():
    g = FiniteAbelianGroup((4, 3, 2))
    for i in range(g.size):
        e = g.element(i)
        assert (e + (-e)).index == 0
        assert (-(-e)).index == e.index


def test_mixed_radix_order_last_coordinate_fastest():
    g = FiniteAbelianGroup((2, 3))
    assert [g.coords_of(i) for i in range(6)] == [
        (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2),
    ]
    assert g.index_of((1, 2)) == 5


def test_signed_coords_window():
    z8 = FiniteAbelianGroup((8,))
    assert [z8.signed_coords(i)[0] for i in range(8)] == [0, 1, 2, 3, 4, -3, -2, -1]


def test_subgroup_generated_examples():
    z12 = FiniteAbelianGroup((12,))
    h = z12.subgroup_generated([z12.element((4,))])
    assert h.members == (0, 4, 8)
    g = FiniteAbelianGroup((4, 3))
    h = g.subgroup_generated([g.element((1, 0))])
    assert h.order == 4
    assert all(g.coords_of(m)[1] == 0 for m in h.members)
    assert g.subgroup_generated([]).members == (0,)


def test_subgroup_order_divides_group_order():
    g = FiniteAbelianGroup((6, 4))
    for seed in range(g.size):
        h = g.subgroup_generated([g.element(seed)])
        assert g.size % h.order == 0


def test_scaling_map_examples():
    z8 = FiniteAbelianGroup((8,))
    s = z8.scaling_map(3)
    assert s.apply_index(2) == 6
    with pytest.raises(ValueError, match="not an automorphism"):
        z8.scaling_map(2)
    assert z8.scaling_map(1).permutation == tuple(range(8))


def test_scaling_map_is_homomorphic_bijection():
    g = FiniteAbelianGroup((5, 4))
    s = g.scaling_map(3)
    assert sorted(s.permutation) == list(range(g.size))
    for a in range(g.size):
        for b in range(g.size):
            assert s.apply_index(g.add_index(a, b)) == g.add_index(
                s.apply_index(a), s.apply_index(b)
            )
    assert s.apply_index(0) == 0
    for a in range(g.size):
        assert s.apply_index(g.neg_index(a)) == g.neg_index(s.apply_index(a))


def test_character_phases_are_exact_rationals():
    g = FiniteAbelianGroup((4, 3))
    chi = g.character((1, 1))
    e = g.element((2, 2))
    assert chi.turn(e) == Fraction(2, 4) + Fraction(2, 3) - 1
    value = chi.value(e)
    assert abs(value - unit_turn(Fraction(1, 6))) < 1e-15


def test_cos_turn_exact_table():
    assert cos_turn_exact(Fraction(0)) == 1
    assert cos_turn_exact(Fraction(1, 2)) == -1
    assert cos_turn_exact(Fraction(1, 3)) == Fraction(-1, 2)
    assert cos_turn_exact(Fraction(1, 4)) == 0
    assert cos_turn_exact(Fraction(1, 6)) == Fraction(1, 2)
    assert cos_turn_exact(Fraction(5, 6)) == Fraction(1, 2)
    assert cos_turn_exact(Fraction(1, 8)) is None
    assert cos_turn_exact(Fraction(7, 3)) == Fraction(-1, 2)


def test_cos_turn_matches_library_cosine():
    for num in range(-25, 26):
        for den in (1, 2, 3, 4, 5, 6, 7, 8, 12, 32):
            t = Fraction(num, den)
            assert cos_turn(t) == pytest.approx(
                math.cos(2 * math.pi * num / den), abs=1e-14
            )


def test_weight_validation():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((4,), Fraction(0))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((0,))


def test_parse_group_literals():
    g = parse_group("Z8")
    assert g.orders == (8,) and g.weight == 1
    g = parse_group("Z4xZ3")
    assert g.orders == (4, 3)
    g = parse_group("Z8,weight=1/4")
    assert g.weight == Fraction(1, 4)
    assert str(g) == "Z8,weight=1/4"
    with pytest.raises(ValueError):
        parse_group("A5")
    with pytest.raises(ValueError):
        parse_group("Z8,w=1")
