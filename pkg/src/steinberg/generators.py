"""Steinberg elementary matrices as symbolic tokens plus evaluation.

A token is one of

* ``x[i,j](t)``  one-parameter unipotents; the index pair picks the flavour
  (plain pair, short pairs i<j against -j, the symplectic x[i,-i]/x[-i,i],
  the odd-rank pairs against index 0, the twisted pairs against 1 and -1),
* ``w[i]``       the involution swapping e_i and e_-i with signs,
* ``x1(t,s)``    the twisted reflection in (t-1)e_1 + s e_-1, t^2+eps*s^2=1,
* ``x2``         the twisted reflection in e_-1,
* ``torus(...)`` the terminal diagonal of a decomposition,

so a decomposition serialises as one word.  Every non-torus token evaluates
to an isometry (multiplier 1) of its family; that is tested, not assumed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .field import Scalar
from .matrix import Matrix
from .forms import Family, GroupDescriptor


class IllegalToken(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorToken:
    kind: str  # "x" | "w" | "x1" | "x2" | "torus"
    i: int = 0
    j: int = 0
    t: Scalar | None = None
    s: Scalar | None = None
    alpha: Scalar | None = None
    lam: Scalar | None = None
    mu: Scalar | None = None

    def __str__(self) -> str:
        if self.kind == "x":
            return f"x[{self.i},{self.j}]({self.t})"
        if self.kind == "w":
            return f"w[{self.i}]"
        if self.kind == "x1":
            return f"x1({self.t},{self.s})"
        if self.kind == "x2":
            return "x2"
        parts = []
        if self.t is not None:
            parts.append(f"{self.t},{self.s}")
        elif self.alpha is not None:
            parts.append(str(self.alpha))
        parts += [str(self.lam), str(self.mu)]
        return f"torus({';'.join(parts)})"


def x(i: int, j: int, t: Scalar) -> GeneratorToken:
    return GeneratorToken("x", i=i, j=j, t=t)


def w(i: int) -> GeneratorToken:
    return GeneratorToken("w", i=i)


def x1(t: Scalar, s: Scalar) -> GeneratorToken:
    return GeneratorToken("x1", t=t, s=s)


def x2() -> GeneratorToken:
    return GeneratorToken("x2")


def torus(
    lam: Scalar,
    mu: Scalar,
    alpha: Scalar | None = None,
    ts: tuple | None = None,
) -> GeneratorToken:
    if ts is None:
        return GeneratorToken("torus", lam=lam, mu=mu, alpha=alpha)
    return GeneratorToken("torus", lam=lam, mu=mu, t=ts[0], s=ts[1])


# ---------------------------------------------------------------------------
# legality


def x_pattern(i: int, j: int, d: GroupDescriptor) -> str:
    """Classify a legal x-token index pair for the family, or raise."""
    fam = d.family
    l = d.l
    if fam is Family.GL:
        if i != j and 1 <= i <= d.n and 1 <= j <= d.n:
            return "gl"
        raise IllegalToken(f"x[{i},{j}] illegal for GL({d.n})")
    if fam in (Family.GSP, Family.GO_EVEN, Family.GO_ODD):
        lo, hi = 1, l
        if fam is Family.GO_ODD:
            if i == 0 and lo <= j <= hi:
                return "0i"
            if j == 0 and lo <= i <= hi:
                return "i0"
        if lo <= i <= hi and lo <= j <= hi and i != j:
            return "pp"
        if lo <= i <= hi and -hi <= j <= -lo:
            if i < -j:
                return "pn"
            if i == -j and fam is Family.GSP:
                return "pnm"
        if -hi <= i <= -lo and lo <= j <= hi:
            if -i < j:
                return "np"
            if -i == j and fam is Family.GSP:
                return "npm"
        raise IllegalToken(f"x[{i},{j}] illegal for {fam.value}(l={l})")
    # GO_MINUS: generic indices run over 2..l, the pair (1,-1) is special
    if 2 <= i <= l and j == 1:
        return "i1"
    if i == 1 and 2 <= j <= l:
        return "1i"
    if 2 <= i <= l and j == -1:
        return "in1"
    if i == -1 and 2 <= j <= l:
        return "n1i"
    if 2 <= i <= l and 2 <= j <= l and i != j:
        return "pp"
    if 2 <= i <= l and -l <= j <= -2 and i < -j:
        return "pn"
    if -l <= i <= -2 and 2 <= j <= l and -i < j:
        return "np"
    raise IllegalToken(f"x[{i},{j}] illegal for GOminus(l={l})")


def validate_token(tok: GeneratorToken, d: GroupDescriptor) -> None:
    f = d.field
    if tok.kind == "x":
        x_pattern(tok.i, tok.j, d)
        return
    if tok.kind == "w":
        if d.family in (Family.GO_EVEN, Family.GO_ODD):
            if tok.i != d.l:
                raise IllegalToken(f"w[{tok.i}]: only w[{d.l}] exists for {d.family.value}")
            return
        if d.family is Family.GO_MINUS:
            if not 2 <= tok.i <= d.l:
                raise IllegalToken(f"w[{tok.i}] out of range for GOminus(l={d.l})")
            return
        raise IllegalToken(f"w tokens do not exist for {d.family.value}")
    if tok.kind in ("x1", "x2"):
        if d.family is not Family.GO_MINUS:
            raise IllegalToken(f"{tok.kind} only exists for GOminus")
        if tok.kind == "x1":
            t, s = f.of(tok.t), f.of(tok.s)
            lhs = f.add(f.mul(t, t), f.mul(d.epsilon, f.mul(s, s)))
            if lhs != f.one:
                raise IllegalToken(f"x1({tok.t},{tok.s}): t^2+eps*s^2 != 1")
        return
    if tok.kind == "torus":
        _validate_torus(tok, d)
        return
    raise IllegalToken(f"unknown token kind {tok.kind!r}")


def _validate_torus(tok: GeneratorToken, d: GroupDescriptor) -> None:
    f = d.field
    lam, mu = f.of(tok.lam), f.of(tok.mu)
    if lam == f.zero or mu == f.zero:
        raise IllegalToken("torus needs nonzero lambda and mu")
    fam = d.family
    if fam is Family.GL:
        if mu != f.one or tok.alpha is not None or tok.t is not None:
            raise IllegalToken("GL torus is torus(lambda;1)")
    elif fam in (Family.GSP, Family.GO_EVEN):
        if tok.alpha is not None or tok.t is not None:
            raise IllegalToken(f"{fam.value} torus is torus(lambda;mu)")
    elif fam is Family.GO_ODD:
        if tok.alpha is None or tok.t is not None:
            raise IllegalToken("GOodd torus is torus(alpha;lambda;mu)")
        a = f.of(tok.alpha)
        if f.mul(a, a) != mu:
            raise IllegalToken("GOodd torus needs alpha^2 = mu")
    else:  # GO_MINUS
        if tok.alpha is not None:
            raise IllegalToken("GOminus torus carries no alpha")
        if d.l == 1 and lam != f.one:
            # rank 1 has no hyperbolic slot for lambda to live in
            raise IllegalToken("GOminus torus at l=1 needs lambda = 1")
        if tok.t is None:
            if mu != f.one:
                raise IllegalToken("GOminus torus with identity block needs mu = 1")
        else:
            t, s = f.of(tok.t), f.of(tok.s)
            if f.add(f.mul(t, t), f.mul(d.epsilon, f.mul(s, s))) != mu:
                raise IllegalToken("GOminus torus block needs t^2+eps*s^2 = mu")


# ---------------------------------------------------------------------------
# token -> matrix


def token_matrix(tok: GeneratorToken, d: GroupDescriptor) -> Matrix:
    """The exact matrix of a token in the family's fixed basis."""
    validate_token(tok, d)
    f = d.field
    if tok.kind == "torus":
        return _torus_matrix(tok, d)
    m = Matrix.identity(f, d.n).to_lists()
    pos = d.pos
    if tok.kind == "x":
        t = f.of(tok.t)
        for a, b, c in _x_units(tok.i, tok.j, t, d):
            i, j = pos(a), pos(b)
            m[i][j] = f.add(m[i][j], c)
        return Matrix(f, m)
    if tok.kind == "w":
        i, ni = pos(tok.i), pos(-tok.i)
        neg1 = f.neg(f.one)
        m[i][i] = f.zero
        m[ni][ni] = f.zero
        m[i][ni] = neg1
        m[ni][i] = neg1
        return Matrix(f, m)
    if tok.kind == "x1":
        t, s = f.of(tok.t), f.of(tok.s)
        p1, n1 = pos(1), pos(-1)
        m[p1][p1] = t
        m[n1][n1] = f.neg(t)
        m[n1][p1] = s
        m[p1][n1] = f.mul(d.epsilon, s)
        return Matrix(f, m)
    # x2
    p = pos(-1)
    m[p][p] = f.neg(f.one)
    return Matrix(f, m)


def _x_units(i: int, j: int, t: Scalar, d: GroupDescriptor) -> list:
    """Sparse (row index, col index, coefficient) triples of x[i,j](t) - I."""
    f = d.field
    pat = x_pattern(i, j, d)
    nt = f.neg(t)
    t2 = f.mul(t, t)
    if pat == "gl":
        return [(i, j, t)]
    if pat == "pp":
        return [(i, j, t), (-j, -i, nt)]
    if pat in ("pn", "np"):
        # the short pairs: the partner unit carries +t for GSp, -t otherwise
        second = t if d.family is Family.GSP else nt
        return [(i, j, t), (-j, -i, second)]
    if pat in ("pnm", "npm"):
        return [(i, j, t)]
    two_t = f.mul(f.of(2), t)
    two_t2 = f.mul(f.of(2), t2)
    if pat == "i0":
        return [(i, 0, two_t), (0, -i, nt), (i, -i, f.neg(t2))]
    if pat == "0i":
        return [(-j, 0, f.neg(two_t)), (0, j, t), (-j, j, f.neg(t2))]
    # Twisted pairs against the anisotropic plane, normalised so they are
    # isometries of diag(1,eps) + hyperbolic (beta(e_1,e_1)=1, not 2).
    eps = d.epsilon
    if pat == "i1":
        return [(1, i, two_t), (-i, 1, f.neg(two_t)), (-i, i, f.neg(two_t2))]
    if pat == "1i":
        return [(j, 1, two_t), (1, -j, f.neg(two_t)), (j, -j, f.neg(two_t2))]
    if pat == "in1":
        return [
            (-1, i, two_t),
            (-i, -1, f.neg(f.mul(eps, two_t))),
            (-i, i, f.neg(f.mul(eps, two_t2))),
        ]
    if pat == "n1i":
        return [
            (j, -1, f.mul(eps, two_t)),
            (-1, -j, f.neg(two_t)),
            (j, -j, f.neg(f.mul(eps, two_t2))),
        ]
    raise IllegalToken(pat)  # pragma: no cover


def _torus_matrix(tok: GeneratorToken, d: GroupDescriptor) -> Matrix:
    f = d.field
    lam, mu = f.of(tok.lam), f.of(tok.mu)
    fam = d.family
    if fam is Family.GL:
        diag = [f.one] * (d.n - 1) + [lam]
        return Matrix.diagonal(f, diag)
    entries = {}
    if fam is Family.GO_ODD:
        entries[(0, 0)] = f.of(tok.alpha)
    block = d.block_indices()
    for k, i in enumerate(block):
        entries[(i, i)] = lam if k == len(block) - 1 else f.one
        entries[(-i, -i)] = f.div(mu, lam) if k == len(block) - 1 else mu
    m = Matrix.zeros(f, d.n, d.n).to_lists()
    if fam is Family.GO_MINUS:
        p1, n1 = d.pos(1), d.pos(-1)
        if tok.t is None:
            m[p1][p1] = f.one
            m[n1][n1] = f.one
        else:
            t, s = f.of(tok.t), f.of(tok.s)
            m[p1][p1] = t
            m[p1][n1] = f.mul(d.epsilon, s)
            m[n1][p1] = s
            m[n1][n1] = f.neg(t)
    for (a, b), v in entries.items():
        m[d.pos(a)][d.pos(b)] = v
    return Matrix(f, m)


def token_inverse(tok: GeneratorToken) -> GeneratorToken:
    """The inverse, again a single token.

    x-tokens negate t (one-parameter subgroups); w, x1 and x2 are
    involutions.  Torus inverses need field inversions, so they live in
    :func:`token_inverse_in`.
    """
    if tok.kind == "x":
        return x(tok.i, tok.j, -tok.t)
    if tok.kind in ("w", "x1", "x2"):
        return tok
    raise IllegalToken("torus inverse needs the descriptor; use token_inverse_in")


def token_inverse_in(tok: GeneratorToken, d: GroupDescriptor) -> GeneratorToken:
    if tok.kind != "torus":
        return canonical_token(token_inverse(tok), d)
    f = d.field
    lam, mu = f.inv(f.of(tok.lam)), f.inv(f.of(tok.mu))
    if tok.alpha is not None:
        return torus(lam, mu, alpha=f.inv(f.of(tok.alpha)))
    if tok.t is not None:
        minv = f.inv(f.of(tok.mu))
        return torus(lam, mu, ts=(f.mul(f.of(tok.t), minv), f.mul(f.of(tok.s), minv)))
    return torus(lam, mu)


def canonical_token(tok: GeneratorToken, d: GroupDescriptor) -> GeneratorToken:
    """Copy with all scalar parameters in canonical field form."""
    of = d.field.of
    return GeneratorToken(
        kind=tok.kind,
        i=tok.i,
        j=tok.j,
        t=None if tok.t is None else of(tok.t),
        s=None if tok.s is None else of(tok.s),
        alpha=None if tok.alpha is None else of(tok.alpha),
        lam=None if tok.lam is None else of(tok.lam),
        mu=None if tok.mu is None else of(tok.mu),
    )


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Word:
    descriptor: GroupDescriptor
    tokens: tuple

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        for tok in self.tokens:
            validate_token(tok, self.descriptor)

    def __len__(self) -> int:
        return len(self.tokens)

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.tokens)

    def evaluate(self) -> Matrix:
        return evaluate_word(self)


def evaluate_word(word: Word) -> Matrix:
    """Ordered product of the token matrices; the empty word is I."""
    d = word.descriptor
    out = Matrix.identity(d.field, d.n)
    for tok in word.tokens:
        out = out @ token_matrix(tok, d)
    return out


def derived_w(i: int, d: GroupDescriptor) -> Word:
    """A word whose product swaps e_i and e_-i with signs (w_{i,-i}).

    GSp and GOodd have direct three-token expressions.  GOplus only has the
    generator at index l; lower indices conjugate it through the pair swaps
    w_{l,i} and w_{l,-i}, each itself three tokens.
    """
    fam = d.family
    if fam is Family.GSP:
        toks = [x(i, -i, 1), x(-i, i, -1), x(i, -i, 1)]
    elif fam is Family.GO_ODD:
        toks = [x(0, i, -1), x(i, 0, 1), x(0, i, -1)]
    elif fam is Family.GO_MINUS:
        toks = [w(i)]
    elif fam is Family.GO_EVEN:
        if i == d.l:
            toks = [w(d.l)]
        else:
            l = d.l
            toks = [w(l)]
            toks += [x(l, i, 1), x(i, l, -1), x(l, i, 1)]
            toks += [x(i, -l, -1), x(-i, l, -1), x(i, -l, -1)]
    else:
        raise IllegalToken(f"derived swap undefined for {fam.value}")
    return Word(d, toks)


def derived_h(lam: Scalar, d: GroupDescriptor) -> Word:
    """Word for diag(1,..,1,lambda,1,..,1,lambda^-1) in GSp."""
    if d.family is not Family.GSP:
        raise IllegalToken("derived_h only exists for GSp")
    f = d.field
    lam = f.of(lam)
    if lam == f.zero:
        raise IllegalToken("lambda must be nonzero")
    l = d.l
    lv = f.neg(f.inv(lam))
    return Word(d, [
        x(l, -l, lam), x(-l, l, lv), x(l, -l, lam),
        x(l, -l, -1), x(-l, l, 1), x(l, -l, -1),
    ])


# ---------------------------------------------------------------------------
# serialisation

_X_RE = re.compile(r"^x\[(-?\d+),(-?\d+)\]\((-?[\d/]+)\)$")
_W_RE = re.compile(r"^w\[(\d+)\]$")
_X1_RE = re.compile(r"^x1\((-?[\d/]+),(-?[\d/]+)\)$")
_TORUS_RE = re.compile(r"^torus\(([^)]*)\)$")


def parse_token(text: str, d: GroupDescriptor) -> GeneratorToken:
    """Parse one token in the grammar emitted by ``str(token)``."""
    text = text.strip()
    f = d.field
    if m := _X_RE.match(text):
        tok = x(int(m.group(1)), int(m.group(2)), f.parse(m.group(3)))
    elif m := _W_RE.match(text):
        tok = w(int(m.group(1)))
    elif m := _X1_RE.match(text):
        tok = x1(f.parse(m.group(1)), f.parse(m.group(2)))
    elif text == "x2":
        tok = x2()
    elif m := _TORUS_RE.match(text):
        parts = [p.strip() for p in m.group(1).split(";")]
        if len(parts) == 2:
            tok = torus(f.parse(parts[0]), f.parse(parts[1]))
        elif len(parts) == 3 and "," in parts[0]:
            t, s = parts[0].split(",")
            tok = torus(f.parse(parts[1]), f.parse(parts[2]), ts=(f.parse(t), f.parse(s)))
        elif len(parts) == 3:
            tok = torus(f.parse(parts[1]), f.parse(parts[2]), alpha=f.parse(parts[0]))
        else:
            raise IllegalToken(f"bad torus arity: {text}")
    else:
        raise IllegalToken(f"cannot parse token: {text!r}")
    validate_token(tok, d)
    return tok


def parse_word(text: str, d: GroupDescriptor) -> Word:
    toks = [parse_token(t, d) for t in text.split()]
    return Word(d, toks)


def legal_x_index_pairs(d: GroupDescriptor) -> list:
    """All legal (i,j) index pairs for x-tokens of the family."""
    pairs = []
    fam, l = d.family, d.l
    if fam is Family.GL:
        rng = range(1, d.n + 1)
        return [(i, j) for i in rng for j in rng if i != j]
    if fam is Family.GO_MINUS:
        rng = list(range(2, l + 1))
        pairs += [(i, j) for i in rng for j in rng if i != j]
        pairs += [(i, -j) for i in rng for j in rng if i < j]
        pairs += [(-i, j) for i in rng for j in rng if i < j]
        pairs += [(i, 1) for i in rng] + [(1, i) for i in rng]
        pairs += [(i, -1) for i in rng] + [(-1, i) for i in rng]
        return pairs
    rng = list(range(1, l + 1))
    pairs += [(i, j) for i in rng for j in rng if i != j]
    pairs += [(i, -j) for i in rng for j in rng if i < j]
    pairs += [(-i, j) for i in rng for j in rng if i < j]
    if fam is Family.GSP:
        pairs += [(i, -i) for i in rng] + [(-i, i) for i in rng]
    if fam is Family.GO_ODD:
        pairs += [(i, 0) for i in rng] + [(0, i) for i in rng]
    return pairs
