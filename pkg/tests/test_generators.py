import pytest

from steinberg.field import Field
from steinberg.forms import Family, build_descriptor, is_member, multiplier
from steinberg.generators import (
    IllegalToken,
    Word,
    derived_h,
    derived_w,
    evaluate_word,
    legal_x_index_pairs,
    parse_token,
    parse_word,
    token_inverse,
    token_inverse_in,
    token_matrix,
    torus,
    w,
    x,
    x1,
    x2,
)
from steinberg.matrix import Matrix

F3 = Field(3)
F5 = Field(5)

ALL = (Family.GSP, Family.GO_EVEN, Family.GO_ODD, Family.GO_MINUS)


def unit(d, i, j, c):
    m = Matrix.zeros(d.field, d.n, d.n).to_lists()
    m[d.pos(i)][d.pos(j)] = d.field.of(c)
    return Matrix(d.field, m)


def test_w_l_matrix():
    d = build_descriptor(Family.GO_EVEN, 2, F5)
    expected = (
        Matrix.identity(F5, 4)
        - unit(d, 2, 2, 1)
        - unit(d, -2, -2, 1)
        - unit(d, 2, -2, 1)
        - unit(d, -2, 2, 1)
    )
    assert token_matrix(w(2), d) == expected


def test_zero_parameter_is_identity():
    d = build_descriptor(Family.GSP, 2, F5)
    assert token_matrix(x(1, 2, 0), d).is_identity()


def test_x2_matrix():
    d = build_descriptor(Family.GO_MINUS, 2, F5)
    assert token_matrix(x2(), d) == Matrix.identity(F5, 4) - unit(d, -1, -1, 2)


def test_token_inverse_negates_parameter():
    d = build_descriptor(Family.GO_EVEN, 2, F5)
    tok = x(1, 2, 3)
    inv = token_inverse_in(tok, d)
    assert inv.t == 2  # -3 mod 5
    assert (token_matrix(tok, d) @ token_matrix(inv, d)).is_identity()


def test_involutions():
    d = build_descriptor(Family.GO_EVEN, 2, F5)
    wl = token_matrix(w(2), d)
    assert (wl @ wl).is_identity()
    dm = build_descriptor(Family.GO_MINUS, 1, F5)
    x2m = token_matrix(x2(), dm)
    assert (x2m @ x2m).is_identity()
    refl = token_matrix(x1(0, 1), build_descriptor(Family.GO_MINUS, 1, Field(3)))
    assert (refl @ refl).is_identity()


def test_empty_word_is_identity():
    d = build_descriptor(Family.GSP, 2, F5)
    assert evaluate_word(Word(d, [])).is_identity()


def test_symplectic_swap_word():
    d = build_descriptor(Family.GSP, 2, F5)
    word = Word(d, [x(1, -1, 1), x(-1, 1, -1), x(1, -1, 1)])
    expected = (
        Matrix.identity(F5, 4)
        + unit(d, 1, -1, 1)
        - unit(d, -1, 1, 1)
        - unit(d, 1, 1, 1)
        - unit(d, -1, -1, 1)
    )
    assert evaluate_word(word) == expected
    assert evaluate_word(derived_w(1, d)) == expected


def test_odd_swap_word():
    d = build_descriptor(Family.GO_ODD, 2, F5)
    word = Word(d, [x(0, 1, -1), x(1, 0, 1), x(0, 1, -1)])
    expected = (
        Matrix.identity(F5, 5)
        - unit(d, 0, 0, 2)
        - unit(d, 1, -1, 1)
        - unit(d, -1, 1, 1)
        - unit(d, 1, 1, 1)
        - unit(d, -1, -1, 1)
    )
    assert evaluate_word(word) == expected
    assert evaluate_word(derived_w(1, d)) == expected


@pytest.mark.parametrize("l", [1, 2, 3, 4])
@pytest.mark.parametrize("family", ALL)
def test_derived_w_swaps(family, l):
    d = build_descriptor(family, l, F5)
    f = d.field
    lo = 2 if family is Family.GO_MINUS else 1
    for i in range(lo, l + 1):
        got = evaluate_word(derived_w(i, d))
        m = Matrix.identity(f, d.n).to_lists()
        pi, ni = d.pos(i), d.pos(-i)
        m[pi][pi] = 0
        m[ni][ni] = 0
        if family is Family.GSP:
            m[pi][ni] = 1
            m[ni][pi] = f.neg(f.one)
        else:
            m[pi][ni] = f.neg(f.one)
            m[ni][pi] = f.neg(f.one)
            if family is Family.GO_ODD:
                m[0][0] = f.neg(f.one)
        assert got == Matrix(f, m)


def test_pair_swap_identity_go_even():
    # w_l * w_{l,i} * w_{l,-i} equals the swap at index i, as matrices
    for l in (2, 3, 4):
        d = build_descriptor(Family.GO_EVEN, l, F5)
        for i in range(1, l):
            lhs = evaluate_word(derived_w(i, d))
            rhs = evaluate_word(derived_w(l, d))
            rhs = rhs @ evaluate_word(Word(d, [x(l, i, 1), x(i, l, -1), x(l, i, 1)]))
            rhs = rhs @ evaluate_word(Word(d, [x(i, -l, -1), x(-i, l, -1), x(i, -l, -1)]))
            assert lhs == rhs


def test_derived_h():
    for l in (1, 2, 3):
        d = build_descriptor(Family.GSP, l, F5)
        assert evaluate_word(derived_h(1, d)).is_identity()
        for lam in (2, 3, 4):
            diag = [1] * (l - 1) + [lam] + [1] * (l - 1) + [pow(lam, -1, 5)]
            assert evaluate_word(derived_h(lam, d)) == Matrix.diagonal(F5, diag)


@pytest.mark.parametrize("family", ALL)
@pytest.mark.parametrize("p", [3, 5, 7])
def test_every_token_is_an_isometry(family, p):
    field = Field(p)
    d = build_descriptor(family, 3, field)
    toks = [x(i, j, t) for (i, j) in legal_x_index_pairs(d) for t in (1, p - 1, p // 2 or 1)]
    if family in (Family.GO_EVEN, Family.GO_ODD):
        toks.append(w(3))
    if family is Family.GO_MINUS:
        toks += [w(2), w(3), x2()]
        eps = d.epsilon
        toks += [
            x1(t, s)
            for t in range(p)
            for s in range(p)
            if (t * t + eps * s * s) % p == 1
        ]
    for tok in toks:
        m = token_matrix(tok, d)
        assert is_member(m, d) and multiplier(m, d) == field.one, str(tok)
        inv = token_matrix(token_inverse_in(tok, d), d)
        assert (m @ inv).is_identity(), str(tok)


@pytest.mark.parametrize("family", ALL)
def test_one_parameter_additivity(family):
    p = 7
    d = build_descriptor(family, 3, Field(p))
    for (i, j) in legal_x_index_pairs(d):
        for t in (2, 5):
            for s in (3, 6):
                lhs = token_matrix(x(i, j, t), d) @ token_matrix(x(i, j, s), d)
                assert lhs == token_matrix(x(i, j, (t + s) % p), d)


def test_illegal_tokens_rejected():
    d = build_descriptor(Family.GO_EVEN, 2, F5)
    with pytest.raises(IllegalToken):
        token_matrix(x(1, -1, 1), d)  # symplectic-only flavour
    with pytest.raises(IllegalToken):
        token_matrix(x(2, -1, 1), d)  # needs i < j
    with pytest.raises(IllegalToken):
        token_matrix(w(1), d)  # only w[l]
    with pytest.raises(IllegalToken):
        token_matrix(x2(), d)  # twisted only
    dm = build_descriptor(Family.GO_MINUS, 2, F5)
    with pytest.raises(IllegalToken):
        token_matrix(x1(2, 2), dm)  # t^2 + eps s^2 != 1
    with pytest.raises(IllegalToken):
        token_matrix(torus(0, 1), dm)


def test_token_grammar_round_trip():
    d = build_descriptor(Family.GO_MINUS, 2, F5)
    toks = [x(2, 1, 3), x(1, 2, 4), x(2, -1, 1), w(2), x1(2, 1), x2(),
            torus(2, 1), torus(3, 2, ts=(0, 1))]
    for tok in toks:
        assert parse_token(str(tok), d) == tok
    dodd = build_descriptor(Family.GO_ODD, 2, F5)
    toks = [x(1, 0, 2), x(0, 2, 3), torus(2, 4, alpha=3)]
    for tok in toks:
        assert parse_token(str(tok), dodd) == tok
    word = Word(dodd, toks)
    assert parse_word(str(word), dodd) == word
