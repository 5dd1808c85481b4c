"""Double-coset labels for the Siegel maximal parabolic.

P stabilises the span of e_1..e_l, so membership reads off the lower-left
block (plus the X strip in odd rank).  ``coset_label`` reduces the lower
left block C to a leading diagonal using ONLY tokens that live in P
(checked at emission), zeroes the affected rows of A against it, and then
the swap ``omega_m`` pulls the result into P.  The witness words certify
the label: left * g * right lands in omega_m * P.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import rowops
from .field import Scalar
from .forms import Family, GroupDescriptor, NotInGroup, UnsupportedFamily, multiplier
from .generators import GeneratorToken, Word, derived_w, evaluate_word, token_matrix, x
from .harness import Enumeration
from .matrix import Matrix

_COSET_FAMILIES = (Family.GSP, Family.GO_EVEN, Family.GO_ODD)


def _check(g: Matrix, d: GroupDescriptor) -> None:
    if d.family not in _COSET_FAMILIES:
        raise UnsupportedFamily(f"double cosets implemented for Sp/O split only, not {d.family.value}")
    mu = multiplier(g, d)
    if mu != d.field.one:
        raise NotInGroup(f"multiplier {mu} != 1: parabolic cosets live in the isometry group")


def is_in_parabolic(g: Matrix, d: GroupDescriptor) -> bool:
    """True iff g stabilises the standard maximal isotropic subspace."""
    _check(g, d)
    f = d.field
    for j in d.block_indices():
        for i in d.block_indices():
            if g[d.pos(-i), d.pos(j)] != f.zero:
                return False
        if d.family is Family.GO_ODD and g[d.pos(0), d.pos(j)] != f.zero:
            return False
    return True


def omega_matrix(d: GroupDescriptor, m: int) -> Matrix:
    """The coset representative: the product of the first m swaps."""
    out = Matrix.identity(d.field, d.n)
    for i in range(1, m + 1):
        out = out @ evaluate_word(derived_w(i, d))
    return out


@dataclass(frozen=True)
class CosetLabel:
    m: int
    omega: Matrix
    left_witness: Word
    right_witness: Word


_P_LEGAL_PATTERNS = {"pp", "pn", "pnm", "i0"}


def _assert_parabolic_token(tok: GeneratorToken, d: GroupDescriptor) -> GeneratorToken:
    from .generators import x_pattern

    assert tok.kind == "x" and x_pattern(tok.i, tok.j, d) in _P_LEGAL_PATTERNS
    return tok


class _Witness:
    def __init__(self, g: Matrix, d: GroupDescriptor):
        self.cur = g
        self.d = d
        self.f = d.field
        self.left: list = []
        self.right: list = []

    def at(self, i: int, j: int) -> Scalar:
        return self.cur[self.d.pos(i), self.d.pos(j)]

    def lmul(self, tok: GeneratorToken) -> None:
        _assert_parabolic_token(tok, self.d)
        self.cur = rowops.apply(self.cur, tok, rowops.LEFT, self.d)
        self.left.insert(0, tok)

    def rmul(self, tok: GeneratorToken) -> None:
        _assert_parabolic_token(tok, self.d)
        self.cur = rowops.apply(self.cur, tok, rowops.RIGHT, self.d)
        self.right.append(tok)


def coset_label(g: Matrix, d: GroupDescriptor) -> CosetLabel:
    """The unique m with g in P * omega_m * P, plus certifying witnesses.

    Left-multiplying by x[i,j](t) adds a multiple of C's row i into row j;
    right-multiplying adds a multiple of column i into column j.  That is
    enough to bring C to a diagonal with its m pivots leading, after which
    the form equation lets x[i,-j](t) (and x[i,-i](t) for GSp) kill the
    first m rows of A, and omega_m^-1 times the result lies in P.
    """
    _check(g, d)
    f = d.field
    b = _Witness(g, d)
    idxs = d.block_indices()
    l = d.l
    m = 0
    for k in range(l):
        piv = _find_c_pivot(b, idxs, k)
        if piv is None:
            break
        r, c = piv
        u = idxs[k]
        if r != k and b.at(-u, idxs[c]) == f.zero:
            b.lmul(x(idxs[r], u, -1))  # C row u += C row r
        if c != k and b.at(-u, u) == f.zero:
            b.rmul(x(idxs[c], u, 1))  # C col u += C col c
        pivot = b.at(-u, u)
        assert pivot != f.zero
        for rr in range(l):
            v = idxs[rr]
            if v != u and b.at(-v, u) != f.zero:
                b.lmul(x(u, v, f.div(b.at(-v, u), pivot)))  # C row v -= t * C row u
        for cc in range(l):
            v = idxs[cc]
            if v != u and b.at(-u, v) != f.zero:
                b.rmul(x(u, v, f.neg(f.div(b.at(-u, v), pivot))))
        m = k + 1
    pivots = idxs[:m]
    if d.family is Family.GO_ODD:
        for i in pivots:
            xi = b.at(0, i)
            if xi != f.zero:
                b.lmul(x(i, 0, f.div(xi, b.at(-i, i))))  # row 0 -= t * row -i
        for i in idxs[m:]:
            assert b.at(0, i) == f.zero  # the form kills the tail of X
    if d.family is Family.GSP:
        for i in pivots:
            aii = b.at(i, i)
            if aii != f.zero:
                b.lmul(x(i, -i, f.neg(f.div(aii, b.at(-i, i)))))
    for ai in range(m):
        for aj in range(ai + 1, m):
            i, j = pivots[ai], pivots[aj]
            aij = b.at(i, j)
            if aij != f.zero:
                b.lmul(x(i, -j, f.neg(f.div(aij, b.at(-j, j)))))
            assert b.at(i, j) == f.zero and b.at(j, i) == f.zero
    for i in pivots:
        for j in idxs:
            assert b.at(i, j) == f.zero  # rows 1..m of A are gone
    omega = omega_matrix(d, m)
    assert is_in_parabolic(omega.inverse() @ b.cur, d)
    return CosetLabel(
        m=m,
        omega=omega,
        left_witness=Word(d, b.left),
        right_witness=Word(d, b.right),
    )


def _find_c_pivot(b: _Witness, idxs: list, k: int):
    f = b.f
    for c in range(k, len(idxs)):
        for r in range(k, len(idxs)):
            if b.at(-idxs[r], idxs[c]) != f.zero:
                return r, c
    return None


def coset_census(d: GroupDescriptor, enumeration: Enumeration) -> dict:
    """Label histogram over an exhaustive enumeration; exactly l+1 labels."""
    counts: Counter = Counter()
    for g in enumeration.elements:
        counts[coset_label(g, d).m] += 1
    assert set(counts) == set(range(d.l + 1)), f"expected labels 0..{d.l}, got {sorted(counts)}"
    return dict(sorted(counts.items()))


def verify_label(g: Matrix, label: CosetLabel, d: GroupDescriptor) -> bool:
    """Recheck the witness equation left * g * right in omega_m * P."""
    prod = evaluate_word(label.left_witness) @ g @ evaluate_word(label.right_witness)
    return is_in_parabolic(label.omega.inverse() @ prod, d)
