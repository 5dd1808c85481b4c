"""Group families, their fixed Gram matrices, membership and multipliers.

Each family fixes one bilinear form beta and one ordering of the basis:

* GSp(2l), GO+(2l):  basis  e_1..e_l, e_-1..e_-l
* GOodd(2l+1):       basis  e_0, e_1..e_l, e_-1..e_-l
* GOminus(2l):       basis  e_1, e_-1, e_2..e_l, e_-2..e_-l

``GroupDescriptor.pos`` maps a signed basis index to its storage position;
every generator, row operation and elimination step goes through it, since
the three different orderings are the main source of off-by-one mistakes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .field import Field, Scalar, square_class
from .matrix import Matrix


class UnsupportedField(ValueError):
    pass


class UnsupportedFamily(ValueError):
    pass


class NotInGroup(ValueError):
    """Raised with the first position where the form equation fails."""

    def __init__(self, msg: str, position: tuple | None = None):
        super().__init__(msg)
        self.position = position


class Family(Enum):
    GL = "GL"
    GSP = "GSp"
    GO_EVEN = "GOplus"
    GO_ODD = "GOodd"
    GO_MINUS = "GOminus"

    @property
    def is_orthogonal(self) -> bool:
        return self in (Family.GO_EVEN, Family.GO_ODD, Family.GO_MINUS)


@dataclass(frozen=True)
class GroupDescriptor:
    family: Family
    l: int
    field: Field
    similitude: bool
    beta: Matrix
    epsilon: Scalar | None = None

    @property
    def n(self) -> int:
        return _dimension(self.family, self.l)

    def pos(self, i: int) -> int:
        """Storage position of signed basis index i (0 only for GOodd)."""
        l = self.l
        fam = self.family
        if fam is Family.GL:
            assert 1 <= i <= self.n
            return i - 1
        if fam is Family.GO_ODD:
            assert abs(i) <= l
            if i == 0:
                return 0
            return i if i > 0 else l - i
        if fam is Family.GO_MINUS:
            assert 1 <= abs(i) <= l
            if i == 1:
                return 0
            if i == -1:
                return 1
            return i if i > 0 else l - 1 - i
        # GSp / GO_EVEN
        assert 1 <= abs(i) <= l
        return i - 1 if i > 0 else l - i - 1

    def block_indices(self) -> list:
        """Signed basis indices carrying the square middle block A."""
        if self.family is Family.GO_MINUS:
            return list(range(2, self.l + 1))
        if self.family is Family.GL:
            return list(range(1, self.n + 1))
        return list(range(1, self.l + 1))

    def __str__(self) -> str:
        sim = "similitude" if self.similitude else "isometry"
        return f"{self.family.value}(l={self.l},{self.field},{sim})"


def _dimension(family: Family, l: int) -> int:
    if family is Family.GL:
        return l + 1
    if family is Family.GO_ODD:
        return 2 * l + 1
    return 2 * l


def twisted_epsilon(p: int) -> int:
    """Smallest integer c >= 2 such that diag(1, c) is anisotropic mod p.

    Anisotropy of the plane x^2 + c*y^2 needs -c to be a non-square.  For
    p = 1 mod 4 that is the same as c being a non-square (the usual choice);
    for p = 3 mod 4 a non-square c would give an isotropic plane and hence a
    split group in disguise, so the choice must differ there.
    """
    field = Field(p)
    for c in range(2, 2 * p + 2):
        if c % p == 0:
            continue
        if not square_class(field, (-c) % p).is_square:
            return c
    raise ValueError(f"no anisotropic plane mod {p}")  # pragma: no cover


def build_descriptor(
    family: Family, l: int, field: Field, similitude: bool = False
) -> GroupDescriptor:
    """Descriptor with the family's fixed Gram matrix.

    GOminus is only defined over a finite field; its epsilon is the smallest
    integer making the 2x2 plane anisotropic, so descriptors are
    reproducible and the group really is the second even type.
    """
    if l < 1:
        raise ValueError("rank must be >= 1")
    epsilon = None
    if family is Family.GL:
        beta = Matrix.identity(field, l + 1)  # unused placeholder
    elif family is Family.GSP:
        beta = _split_beta(field, l, skew=True)
    elif family is Family.GO_EVEN:
        beta = _split_beta(field, l, skew=False)
    elif family is Family.GO_ODD:
        beta = _odd_beta(field, l)
    elif family is Family.GO_MINUS:
        if not field.is_prime:
            raise UnsupportedField("twisted form needs a finite field")
        epsilon = field.of(twisted_epsilon(field.p))
        beta = _twisted_beta(field, l, epsilon)
    else:  # pragma: no cover
        raise UnsupportedFamily(str(family))
    return GroupDescriptor(family, l, field, similitude, beta, epsilon)


def _split_beta(field: Field, l: int, skew: bool) -> Matrix:
    ident = Matrix.identity(field, l)
    zero = Matrix.zeros(field, l, l)
    low = -ident if skew else ident
    return Matrix.assemble(field, [[zero, ident], [low, zero]])


def _odd_beta(field: Field, l: int) -> Matrix:
    n = 2 * l + 1
    m = Matrix.zeros(field, n, n).to_lists()
    m[0][0] = field.of(2)
    for i in range(1, l + 1):
        m[i][l + i] = field.one
        m[l + i][i] = field.one
    return Matrix(field, m)


def _twisted_beta(field: Field, l: int, epsilon: Scalar) -> Matrix:
    n = 2 * l
    m = Matrix.zeros(field, n, n).to_lists()
    m[0][0] = field.one
    m[1][1] = epsilon
    for i in range(2, l + 1):
        m[i][l + i - 1] = field.one
        m[l + i - 1][i] = field.one
    return Matrix(field, m)


def multiplier(g: Matrix, d: GroupDescriptor) -> Scalar:
    """The scalar mu with g^T beta g = mu beta, else :class:`NotInGroup`."""
    if d.family is Family.GL:
        raise UnsupportedFamily("GL carries no form")
    n = d.n
    if g.rows != n or g.cols != n:
        raise NotInGroup(f"expected a {n}x{n} matrix", position=None)
    f = d.field
    m = g.transpose() @ d.beta @ g
    # read mu off the first structurally nonzero beta entry, then verify all
    mu = None
    for i in range(n):
        for j in range(n):
            if d.beta[i, j] != f.zero:
                mu = f.div(m[i, j], d.beta[i, j])
                break
        if mu is not None:
            break
    assert mu is not None
    for i in range(n):
        for j in range(n):
            if m[i, j] != f.mul(mu, d.beta[i, j]):
                raise NotInGroup(f"form equation fails at ({i},{j})", position=(i, j))
    if mu == f.zero:
        raise NotInGroup("multiplier is zero (singular matrix)", position=None)
    return mu


def is_member(g: Matrix, d: GroupDescriptor) -> bool:
    """True iff g satisfies the form equation (and mu=1 for isometry groups)."""
    if d.family is Family.GL:
        return g.rows == g.cols == d.n and g.rank() == d.n
    try:
        mu = multiplier(g, d)
    except NotInGroup:
        return False
    return d.similitude or mu == d.field.one
