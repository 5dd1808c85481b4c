import random

import pytest

from steinberg.field import Field
from steinberg.forms import Family, NotInGroup, UnsupportedFamily, build_descriptor
from steinberg.coset import (
    CosetLabel,
    coset_census,
    coset_label,
    is_in_parabolic,
    omega_matrix,
    verify_label,
)
from steinberg.generators import legal_x_index_pairs, token_matrix, w, x, x_pattern
from steinberg.harness import enumerate_group, random_member
from steinberg.matrix import Matrix
from steinberg.rowops import RIGHT, apply

F3 = Field(3)
F5 = Field(5)
COSET_FAMILIES = (Family.GSP, Family.GO_EVEN, Family.GO_ODD)


def parabolic_pairs(d):
    return [
        (i, j)
        for (i, j) in legal_x_index_pairs(d)
        if x_pattern(i, j, d) in ("pp", "pn", "pnm", "i0")
    ]


def random_parabolic(d, rng):
    g = Matrix.identity(d.field, d.n)
    for _ in range(6):
        i, j = rng.choice(parabolic_pairs(d))
        g = apply(g, x(i, j, rng.randrange(1, d.field.p)), RIGHT, d)
    return g


def test_is_in_parabolic_examples():
    d = build_descriptor(Family.GO_EVEN, 2, F3)
    assert is_in_parabolic(Matrix.identity(F3, 4), d)
    assert not is_in_parabolic(token_matrix(w(2), d), d)
    assert is_in_parabolic(token_matrix(x(1, 2, 1), d), d)
    assert is_in_parabolic(token_matrix(x(1, -2, 2), d), d)


def test_parabolic_membership_in_odd_rank():
    d = build_descriptor(Family.GO_ODD, 2, F5)
    assert is_in_parabolic(token_matrix(x(1, 0, 2), d), d)
    assert not is_in_parabolic(token_matrix(x(0, 1, 2), d), d)


def test_label_of_parabolic_member_is_zero():
    rng = random.Random(1)
    for family in COSET_FAMILIES:
        d = build_descriptor(family, 2, F5)
        g = random_parabolic(d, rng)
        label = coset_label(g, d)
        assert label.m == 0
        assert label.omega.is_identity()
        assert verify_label(g, label, d)


@pytest.mark.parametrize("family", COSET_FAMILIES)
def test_label_of_omega_itself(family):
    d = build_descriptor(family, 3, F5)
    for m in range(d.l + 1):
        om = omega_matrix(d, m)
        label = coset_label(om, d)
        assert label.m == m
        assert verify_label(om, label, d)


def test_sp23_exhaustive_partition(sp_2_3):
    d, en = sp_2_3
    assert len(en.elements) == 24
    census = coset_census(d, en)
    assert census == {0: 6, 1: 18}  # |P| = 6 upper-triangulars of SL(2,3)


def test_o23_split_census():
    d = build_descriptor(Family.GO_EVEN, 1, F3)
    en = enumerate_group(d, method="brute", cap=10**6)
    assert coset_census(d, en) == {0: 2, 1: 2}


def test_o43_census(o_plus_4_3):
    d, en = o_plus_4_3
    census = coset_census(d, en)
    assert set(census) == {0, 1, 2}
    assert sum(census.values()) == 1152


@pytest.mark.parametrize("family,l", [(Family.GSP, 2), (Family.GO_ODD, 2)])
def test_label_invariance_under_parabolic_moves(family, l):
    rng = random.Random(7)
    d = build_descriptor(family, l, F3)
    for seed in range(8):
        g = random_member(d, seed, word_len=7)
        m = coset_label(g, d).m
        for _ in range(10):
            g2 = random_parabolic(d, rng) @ g @ random_parabolic(d, rng)
            assert coset_label(g2, d).m == m


def test_witnesses_consist_of_parabolic_tokens():
    d = build_descriptor(Family.GO_ODD, 2, F5)
    for seed in range(8):
        g = random_member(d, seed, word_len=8)
        label = coset_label(g, d)
        for tok in label.left_witness.tokens + label.right_witness.tokens:
            assert is_in_parabolic(token_matrix(tok, d), d)
        assert verify_label(g, label, d)


def test_rejected_families_and_similitudes():
    d = build_descriptor(Family.GO_MINUS, 2, F5)
    with pytest.raises(UnsupportedFamily):
        coset_label(Matrix.identity(F5, 4), d)
    dgl = build_descriptor(Family.GL, 2, F5)
    with pytest.raises(UnsupportedFamily):
        is_in_parabolic(Matrix.identity(F5, 3), dgl)
    dsim = build_descriptor(Family.GSP, 1, F5, similitude=True)
    with pytest.raises(NotInGroup):
        coset_label(Matrix.diagonal(F5, [2, 1]), dsim)
