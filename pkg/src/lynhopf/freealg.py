"""Free braided algebras: braidings, tensor elements, brackets, coproduct.

A braided space is V = k^d with an invertible braiding c on V tensor V
satisfying the braid equation.  The tensor algebra TV has the word basis;
elements are sparse dicts mapping words to nonzero scalars.  On top of that
live the two bracket flavors, the monotonic bracket-word basis, the braided
coproduct and the braided antipode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, words
from .scalars import (PrimeField, RationalField, field_from_json,
                      next_prime_with, primitive_root)

DEFAULT_PRIME = 10007

PRESET_NAMES = ("quantum-plane", "cartan-A2", "s3-rack")


@dataclass(frozen=True)
class BraidingReport:
    ok: bool
    message: str
    failing_triple: tuple | None = None


def _apply_slot(field, state: dict, slot: int, cmap: dict) -> dict:
    """Apply a two-strand braiding at 1-based slot to a dict of words."""
    out: dict = {}
    for w, coeff in state.items():
        for (c, d), f in cmap[(w[slot - 1], w[slot])].items():
            nw = w[:slot - 1] + (c, d) + w[slot + 1:]
            v = field.add(out.get(nw, field.zero), field.mul(coeff, f))
            if v == field.zero:
                out.pop(nw, None)
            else:
                out[nw] = v
    return out


def _check_braid_equation(field, dim: int, cmap: dict):
    """Return a violating triple (a, b, c) or None."""
    for a in range(1, dim + 1):
        for b in range(1, dim + 1):
            for c in range(1, dim + 1):
                state = {(a, b, c): field.one}
                lhs = _apply_slot(field, state, 2, cmap)
                lhs = _apply_slot(field, lhs, 1, cmap)
                lhs = _apply_slot(field, lhs, 2, cmap)
                rhs = _apply_slot(field, state, 1, cmap)
                rhs = _apply_slot(field, rhs, 2, cmap)
                rhs = _apply_slot(field, rhs, 1, cmap)
                if lhs != rhs:
                    return (a, b, c)
    return None


def _invert_cmap(field, dim: int, cmap: dict):
    """Columns of the inverse matrix, or None if singular."""
    rows = []
    pairs = [(a, b) for a in range(1, dim + 1) for b in range(1, dim + 1)]
    for rk in pairs:
        row = {(1, rk): field.one}
        for ck in pairs:
            v = cmap[ck].get(rk)
            if v is not None and v != field.zero:
                row[(0, ck)] = v
        rows.append(row)
    pivots = linalg.rref(field, rows)
    if sorted(pivots) != [(0, pk) for pk in pairs]:
        return None
    inv = {pk: {} for pk in pairs}
    for rk in pairs:
        row = pivots[(0, rk)]
        for key, v in row.items():
            if key[0] == 1:
                inv[key[1]][rk] = v
    return inv


def validate_braiding(field, dim: int, kind: str, data) -> BraidingReport:
    """Certify invertibility and the braid equation on all basis triples.

    `data` is the d x d scalar matrix for kind "diagonal", or the d^2 x d^2
    matrix (rows and columns indexed by (i-1)*d + (j-1)) for kind "general".
    """
    if dim < 1 or dim > words.MAX_ALPHABET:
        return BraidingReport(False, f"dimension {dim} outside 1..{words.MAX_ALPHABET}")
    if kind == "diagonal":
        if len(data) != dim or any(len(r) != dim for r in data):
            return BraidingReport(False, "diagonal braiding needs a d x d matrix")
        for i in range(dim):
            for j in range(dim):
                if data[i][j] == field.zero:
                    return BraidingReport(
                        False, f"diagonal entry q[{i + 1}][{j + 1}] is zero")
        cmap = _diagonal_cmap(field, dim, data)
    elif kind == "general":
        if len(data) != dim * dim or any(len(r) != dim * dim for r in data):
            return BraidingReport(False, "general braiding needs a d^2 x d^2 matrix")
        cmap = _general_cmap(field, dim, data)
        if _invert_cmap(field, dim, cmap) is None:
            return BraidingReport(False, "braiding matrix is singular")
    else:
        return BraidingReport(False, f"unknown braiding kind {kind!r}")
    bad = _check_braid_equation(field, dim, cmap)
    if bad is not None:
        return BraidingReport(
            False, f"braid equation fails on basis triple {bad}", bad)
    return BraidingReport(True, "ok")


def _diagonal_cmap(field, dim, q):
    return {(a, b): {(b, a): q[a - 1][b - 1]}
            for a in range(1, dim + 1) for b in range(1, dim + 1)}


def _general_cmap(field, dim, matrix):
    cmap = {}
    for a in range(1, dim + 1):
        for b in range(1, dim + 1):
            col = (a - 1) * dim + (b - 1)
            image = {}
            for c in range(1, dim + 1):
                for d in range(1, dim + 1):
                    v = matrix[(c - 1) * dim + (d - 1)][col]
                    if v != field.zero:
                        image[(c, d)] = v
            cmap[(a, b)] = image
    return cmap


class BraidedSpace:
    """A finite-dimensional braided vector space with cached bracket data."""

    def __init__(self, field, dim: int, kind: str, data, source=None):
        report = validate_braiding(field, dim, kind, data)
        if not report.ok:
            raise ValueError(f"invalid braiding: {report.message}")
        self.field = field
        self.dim = dim
        self.kind = kind
        self.source = source
        if kind == "diagonal":
            self.q = tuple(tuple(r) for r in data)
            self._cmap = _diagonal_cmap(field, dim, data)
        else:
            self.q = None
            self._cmap = _general_cmap(field, dim, data)
        self._cmap_inv = _invert_cmap(field, dim, self._cmap)
        self._cache: dict = {}

    @property
    def is_diagonal(self) -> bool:
        return self.kind == "diagonal"

    def component_partition(self) -> tuple:
        """Finest partition of the coordinate lines into braiding-stable blocks.

        Blocks B, B' satisfy c(V_B ox V_B') <= V_B' ox V_B, so words over the
        block alphabet behave like words over a diagonal alphabet; diagonal
        braidings give singletons, and a braiding that mixes all coordinates
        (the s3-rack preset does) gives the single block (1..d).  Blocks are
        sorted by least member and numbered 1..D in that order.
        """
        hit = self._cache.get("components")
        if hit is None:
            parent = list(range(self.dim + 1))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            def union(a, b):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb

            if not self.is_diagonal:
                for (a, b), image in self._cmap.items():
                    for (c, d), v in image.items():
                        if v != self.field.zero:
                            union(c, b)
                            union(d, a)
            groups: dict = {}
            for i in range(1, self.dim + 1):
                groups.setdefault(find(i), []).append(i)
            hit = tuple(tuple(g) for g in sorted(groups.values()))
            self._cache["components"] = hit
        return hit

    def qprod(self, u: tuple, v: tuple):
        """For diagonal braidings, the scalar q(u, v) = prod q_{ab} over a in u, b in v."""
        if not self.is_diagonal:
            raise ValueError("qprod needs a diagonal braiding")
        out = self.field.one
        for a in u:
            row = self.q[a - 1]
            for b in v:
                out = self.field.mul(out, row[b - 1])
        return out

    def braid_words(self, u: tuple, v: tuple, inverse: bool = False) -> dict:
        """c(x_u tensor x_v) (or its inverse) as {(left word, right word): coeff}.

        The left output block has the length of v, the right that of u.  The
        braiding of blocks is the composite of adjacent-slot braidings along a
        reduced word for the block transposition.
        """
        if not u or not v:
            return {(v, u): self.field.one}
        if self.is_diagonal:
            if inverse:
                return {(v, u): self.field.inv(self.qprod(v, u))}
            return {(v, u): self.qprod(u, v)}
        m, n = len(u), len(v)
        state = {u + v: self.field.one}
        if inverse:
            cmap = self._cmap_inv
            slots = [j for i in range(1, n + 1) for j in range(i + m - 1, i - 1, -1)]
        else:
            cmap = self._cmap
            slots = [j for i in range(m, 0, -1) for j in range(i, i + n)]
        for slot in slots:
            state = _apply_slot(self.field, state, slot, cmap)
        return {(w[:n], w[n:]): coeff for w, coeff in state.items()}

    def zero(self) -> "TensorElement":
        return TensorElement(self, {})

    def unit(self) -> "TensorElement":
        return TensorElement(self, {(): self.field.one})

    def generator(self, i: int) -> "TensorElement":
        if not 1 <= i <= self.dim:
            raise ValueError(f"generator index {i} outside 1..{self.dim}")
        return TensorElement(self, {(i,): self.field.one})

    def element(self, terms: dict) -> "TensorElement":
        clean = {}
        for w, c in terms.items():
            w = words.validate_word(w, self.dim)
            if c != self.field.zero:
                clean[w] = c
        return TensorElement(self, clean)

    def to_json(self) -> dict:
        fmt = self.field.format
        if self.is_diagonal:
            braiding = {"diagonal": [[fmt(v) for v in row] for row in self.q]}
        else:
            size = self.dim * self.dim
            dense = [[self.field.zero] * size for _ in range(size)]
            for (a, b), image in self._cmap.items():
                col = (a - 1) * self.dim + (b - 1)
                for (c, d), v in image.items():
                    dense[(c - 1) * self.dim + (d - 1)][col] = v
            braiding = {"general": [[fmt(v) for v in row] for row in dense]}
        return {"field": self.field.to_json(), "dim": self.dim, "braiding": braiding}

    def __repr__(self):
        return f"BraidedSpace(dim={self.dim}, kind={self.kind}, field={self.field!r})"


class TensorElement:
    """Sparse element of the tensor algebra over a braided space."""

    __slots__ = ("space", "terms")

    def __init__(self, space: BraidedSpace, terms: dict):
        self.space = space
        self.terms = terms

    def _same(self, other: "TensorElement"):
        if not isinstance(other, TensorElement) or other.space is not self.space:
            raise ValueError("operands live over different braided spaces")

    def __add__(self, other):
        self._same(other)
        fld = self.space.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = fld.add(out.get(w, fld.zero), c)
            if v == fld.zero:
                out.pop(w, None)
            else:
                out[w] = v
        return TensorElement(self.space, out)

    def __neg__(self):
        fld = self.space.field
        return TensorElement(self.space, {w: fld.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        fld = self.space.field
        if c == fld.zero:
            return TensorElement(self.space, {})
        return TensorElement(self.space, {w: fld.mul(c, v) for w, v in self.terms.items()})

    def __mul__(self, other):
        """Concatenation product."""
        self._same(other)
        fld = self.space.field
        out: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                v = fld.add(out.get(w, fld.zero), fld.mul(ca, cb))
                if v == fld.zero:
                    out.pop(w, None)
                else:
                    out[w] = v
        return TensorElement(self.space, out)

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and other.space is self.space
                and other.terms == self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a nonzero homogeneous element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is zero or inhomogeneous")
        return degs.pop()

    def homogeneous_component(self, n: int) -> "TensorElement":
        return TensorElement(self.space,
                             {w: c for w, c in self.terms.items() if len(w) == n})

    def support(self) -> list:
        return sorted(self.terms, key=lambda w: (len(w), w))

    def to_json(self) -> dict:
        fmt = self.space.field.format
        return {"terms": [{"word": words.format_word(w), "coeff": fmt(self.terms[w])}
                          for w in self.support()]}

    @classmethod
    def from_json(cls, space: BraidedSpace, obj: dict) -> "TensorElement":
        fld = space.field
        out: dict = {}
        for item in obj["terms"]:
            w = words.validate_word(words.parse_word(item["word"]), space.dim)
            c = fld.parse(item["coeff"])
            v = fld.add(out.get(w, fld.zero), c)
            if v == fld.zero:
                out.pop(w, None)
            else:
                out[w] = v
        return cls(space, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in self.support():
            c = self.space.field.format(self.terms[w])
            name = "1" if w == () else "x" + words.format_word(w)
            bits.append(f"{c}*{name}")
        return " + ".join(bits)


class TensorSquareElement:
    """Sparse element of TV tensor TV with the braided multiplication."""

    __slots__ = ("space", "terms")

    def __init__(self, space: BraidedSpace, terms: dict):
        self.space = space
        self.terms = terms

    @classmethod
    def from_pair(cls, x: TensorElement, y: TensorElement) -> "TensorSquareElement":
        fld = x.space.field
        out: dict = {}
        for wa, ca in x.terms.items():
            for wb, cb in y.terms.items():
                v = fld.mul(ca, cb)
                if v != fld.zero:
                    out[(wa, wb)] = fld.add(out.get((wa, wb), fld.zero), v)
                    if out[(wa, wb)] == fld.zero:
                        del out[(wa, wb)]
        return cls(x.space, out)

    def _same(self, other):
        if not isinstance(other, TensorSquareElement) or other.space is not self.space:
            raise ValueError("operands live over different braided spaces")

    def __add__(self, other):
        self._same(other)
        fld = self.space.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = fld.add(out.get(k, fld.zero), c)
            if v == fld.zero:
                out.pop(k, None)
            else:
                out[k] = v
        return TensorSquareElement(self.space, out)

    def __neg__(self):
        fld = self.space.field
        return TensorSquareElement(self.space,
                                   {k: fld.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorSquareElement":
        fld = self.space.field
        if c == fld.zero:
            return TensorSquareElement(self.space, {})
        return TensorSquareElement(self.space,
                                   {k: fld.mul(c, v) for k, v in self.terms.items()})

    def __mul__(self, other):
        """(a ox b)(c ox d) = sum (a c_i) ox (b_i d) over c(x_b ox x_c)."""
        self._same(other)
        space = self.space
        fld = space.field
        out: dict = {}
        for (wa, wb), cab in self.terms.items():
            for (wc, wd), ccd in other.terms.items():
                base = fld.mul(cab, ccd)
                for (wc2, wb2), f in space.braid_words(wb, wc).items():
                    key = (wa + wc2, wb2 + wd)
                    v = fld.add(out.get(key, fld.zero), fld.mul(base, f))
                    if v == fld.zero:
                        out.pop(key, None)
                    else:
                        out[key] = v
        return TensorSquareElement(self.space, out)

    def __eq__(self, other):
        return (isinstance(other, TensorSquareElement)
                and other.space is self.space and other.terms == self.terms)

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> list:
        return sorted(self.terms,
                      key=lambda k: (len(k[0]) + len(k[1]), len(k[0]), k[0], k[1]))

    def __repr__(self):
        if not self.terms:
            return "0"
        fmt = self.space.field.format

        def name(w):
            return "1" if w == () else "x" + words.format_word(w)

        return " + ".join(
            f"{fmt(self.terms[k])}*{name(k[0])}(x){name(k[1])}"
            for k in self.support())


def braid_apply(x: TensorElement, y: TensorElement,
                inverse: bool = False) -> TensorSquareElement:
    """c(x tensor y), or its inverse, for homogeneous x and y."""
    if not (x.is_homogeneous() and y.is_homogeneous()):
        raise ValueError("braid application needs homogeneous arguments")
    space = x.space
    if y.space is not space:
        raise ValueError("operands live over different braided spaces")
    fld = space.field
    out: dict = {}
    for wa, ca in x.terms.items():
        for wb, cb in y.terms.items():
            base = fld.mul(ca, cb)
            for key, f in space.braid_words(wa, wb, inverse).items():
                v = fld.add(out.get(key, fld.zero), fld.mul(base, f))
                if v == fld.zero:
                    out.pop(key, None)
                else:
                    out[key] = v
    return TensorSquareElement(space, out)


def multiply(x: TensorElement, y: TensorElement) -> TensorElement:
    return x * y


def _m_braid(space, a: TensorElement, b: TensorElement, inverse: bool) -> TensorElement:
    """Multiplication composed with the braiding: m(c^{+-1}(a tensor b))."""
    fld = space.field
    out: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            base = fld.mul(ca, cb)
            for (l, r), f in space.braid_words(wa, wb, inverse).items():
                w = l + r
                v = fld.add(out.get(w, fld.zero), fld.mul(base, f))
                if v == fld.zero:
                    out.pop(w, None)
                else:
                    out[w] = v
    return TensorElement(space, out)


class BracketLetter:
    """A Lyndon word with its bracketing, [u] or the double-braided variant."""

    __slots__ = ("word", "flavor", "value")

    def __init__(self, word: tuple, flavor: str, value: TensorElement):
        self.word = word
        self.flavor = flavor
        self.value = value

    def __repr__(self):
        wrap = "[{}]" if self.flavor == "left" else "[[{}]]"
        return wrap.format(words.format_word(self.word))


def _bracket_value(space: BraidedSpace, u: tuple, flavor: str) -> TensorElement:
    key = ("br", flavor, u)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    if len(u) == 1:
        val = space.generator(u[0])
    else:
        v, w = words.shirshov(u)
        a = _bracket_value(space, v, flavor)
        b = _bracket_value(space, w, flavor)
        twist = _m_braid(space, a, b, inverse=(flavor == "left"))
        val = a * b - twist
    space._cache[key] = val
    return val


def bracket(space: BraidedSpace, u, flavor: str = "left") -> BracketLetter:
    """The bracket super-letter of a Lyndon word.

    Flavor "left" uses the inverse braiding in the twist ([x, y] = xy -
    m c^{-1}(x ox y)); flavor "double" uses the braiding itself.
    """
    u = words.validate_word(u, space.dim)
    if not words.is_lyndon(u):
        raise ValueError(f"{u} is not a Lyndon word")
    if flavor not in ("left", "double"):
        raise ValueError(f"unknown bracket flavor {flavor!r}")
    return BracketLetter(u, flavor, _bracket_value(space, u, flavor))


def bracket_word(space: BraidedSpace, sw, flavor: str = "left") -> TensorElement:
    """Product of the bracket letters along a monotonic super-word."""
    sw = words.validate_superword(sw, monotonic=True)
    for f in sw:
        words.validate_word(f, space.dim)
    return _bracket_word_value(space, sw, flavor)


def _bracket_word_value(space, sw: tuple, flavor: str) -> TensorElement:
    key = ("bw", flavor, sw)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    if not sw:
        val = space.unit()
    elif len(sw) == 1:
        val = _bracket_value(space, sw[0], flavor)
    else:
        val = _bracket_word_value(space, sw[:-1], flavor) * _bracket_value(
            space, sw[-1], flavor)
    space._cache[key] = val
    return val


def bracket_element(space: BraidedSpace, w, flavor: str = "left") -> TensorElement:
    """The bracketing of an arbitrary word: bracket letters along its
    Chen-Fox-Lyndon factorization, multiplied in order."""
    w = words.validate_word(w, space.dim)
    return _bracket_word_value(space, words.cfl_factorize(w), flavor)


def leading_vector(x: TensorElement) -> tuple:
    """(word, coeff) for the lex-least word among the top-degree terms."""
    if not x.terms:
        raise ValueError("the zero element has no leading vector")
    top = max(len(w) for w in x.terms)
    w = min(w for w in x.terms if len(w) == top)
    return w, x.terms[w]


def expand_monotonic_basis(x: TensorElement) -> dict:
    """Coordinates of a homogeneous element in the bracket-word basis.

    Returns {monotonic super-word: coeff}.  Back-substitution works because a
    bracket word's leading term is its concatenation with coefficient 1 and
    all other terms are lexicographically larger.
    """
    if not x.is_homogeneous():
        raise ValueError("expansion needs a homogeneous element")
    space = x.space
    fld = space.field
    residual = dict(x.terms)
    out: dict = {}
    while residual:
        w = min(residual)
        sw = words.cfl_factorize(w)
        coeff = residual[w]
        out[sw] = coeff
        for w2, c2 in _bracket_word_value(space, sw, "left").terms.items():
            v = fld.sub(residual.get(w2, fld.zero), fld.mul(coeff, c2))
            if v == fld.zero:
                residual.pop(w2, None)
            else:
                residual[w2] = v
    return out


def _coproduct_word(space, w: tuple) -> dict:
    key = ("cop", w)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    fld = space.field
    if not w:
        terms = {((), ()): fld.one}
    else:
        prefix = TensorSquareElement(space, _coproduct_word(space, w[:-1]))
        a = w[-1]
        last = TensorSquareElement(space, {((a,), ()): fld.one,
                                           ((), (a,)): fld.one})
        terms = (prefix * last).terms
    space._cache[key] = terms
    return terms


def coproduct(x: TensorElement) -> TensorSquareElement:
    """The braided coproduct: the algebra map with primitive generators."""
    space = x.space
    fld = space.field
    out: dict = {}
    for w, c in x.terms.items():
        for k, f in _coproduct_word(space, w).items():
            v = fld.add(out.get(k, fld.zero), fld.mul(c, f))
            if v == fld.zero:
                out.pop(k, None)
            else:
                out[k] = v
    return TensorSquareElement(space, out)


def counit(x: TensorElement):
    return x.terms.get((), x.space.field.zero)


def _antipode_word(space, w: tuple) -> TensorElement:
    key = ("anti", w)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    fld = space.field
    if not w:
        val = space.unit()
    elif len(w) == 1:
        val = space.generator(w[0]).scale(fld.neg(fld.one))
    else:
        head = _antipode_word(space, w[:1])
        tail = _antipode_word(space, w[1:])
        val = _m_braid(space, head, tail, inverse=False)
    space._cache[key] = val
    return val


def antipode(x: TensorElement) -> TensorElement:
    """The braided antipode: S(x_i) = -x_i, S(xy) = m c(S(x) tensor S(y))."""
    space = x.space
    fld = space.field
    out: dict = {}
    for w, c in x.terms.items():
        for w2, f in _antipode_word(space, w).terms.items():
            v = fld.add(out.get(w2, fld.zero), fld.mul(c, f))
            if v == fld.zero:
                out.pop(w2, None)
            else:
                out[w2] = v
    return TensorElement(space, out)


def space_from_json(obj: dict, prime=None) -> BraidedSpace:
    """Build a space from its JSON description, optionally forcing a prime."""
    if not isinstance(obj, dict):
        raise ValueError("space description must be a JSON object")
    for req in ("field", "dim", "braiding"):
        if req not in obj:
            raise ValueError(f"space description lacks {req!r}")
    field = PrimeField(prime) if prime is not None else field_from_json(obj["field"])
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f"dim must be a positive integer, got {dim!r}")
    braiding = obj["braiding"]
    for m in obj.get("root_orders", ()):
        if field.char == 0:
            if m > 2:
                raise ValueError(f"no rational root of unity of order {m}")
        elif (field.p - 1) % m != 0:
            raise ValueError(f"F_{field.p} has no element of order {m}")
    if "diagonal" in braiding:
        data = [[field.parse(v) for v in row] for row in braiding["diagonal"]]
        return BraidedSpace(field, dim, "diagonal", data, source=obj)
    if "general" in braiding:
        data = [[field.parse(v) for v in row] for row in braiding["general"]]
        return BraidedSpace(field, dim, "general", data, source=obj)
    raise ValueError("braiding must contain 'diagonal' or 'general'")


def _parse_preset(text: str):
    """Split "name" or "name(key=value,...)" into (name, params dict)."""
    text = text.strip()
    if "(" in text:
        if not text.endswith(")"):
            raise ValueError(f"malformed preset {text!r}")
        name, _, rest = text.partition("(")
        params = {}
        body = rest[:-1].strip()
        if body:
            for piece in body.split(","):
                if "=" not in piece:
                    raise ValueError(f"malformed preset parameter {piece!r}")
                k, _, v = piece.partition("=")
                params[k.strip()] = v.strip()
        return name.strip(), params
    return text, {}


def _preset_requirements(name: str, params: dict):
    """(order divisors, unit literals) a prime must accommodate."""
    if name == "quantum-plane":
        q = params.get("q", "-1")
        return (), (Fraction(q),)
    if name == "cartan-A2":
        if "order" in params:
            return (int(params["order"]),), ()
        if "q" in params:
            return (), (Fraction(params["q"]),)
        return (), ()
    if name == "s3-rack":
        return (), ()
    raise ValueError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def _s3_rack_matrix(field):
    # conjugation action of the transpositions of S_3, constant cocycle -1
    phi = {1: {1: 1, 2: 3, 3: 2}, 2: {1: 3, 2: 2, 3: 1}, 3: {1: 2, 2: 1, 3: 3}}
    size = 9
    dense = [[field.zero] * size for _ in range(size)]
    for a in range(1, 4):
        for b in range(1, 4):
            col = (a - 1) * 3 + (b - 1)
            c, d = phi[a][b], a
            dense[(c - 1) * 3 + (d - 1)][col] = field.neg(field.one)
    return dense


def space_from_preset(text: str, prime=None, trunc=None) -> BraidedSpace:
    """Instantiate a named preset, picking a compatible prime when needed.

    quantum-plane(q=...): d = 2 diagonal with q11 = q22 = q, q12 = q21 = 1;
        q defaults to -1.
    cartan-A2: d = 2 diagonal with q11 = q22 = q, q12 = 1/q, q21 = 1.
        Parameters: q=<rational>, order=<m> (q a root of unity of order m),
        or neither for a generic q (a primitive root mod p, or 2 over the
        rationals).
    s3-rack: d = 3 general braiding from the transposition conjugacy class
        of S_3 with constant cocycle -1.
    Extra parameters: prime=<p>, rationals=1 to pick the field explicitly.
    """
    name, params = _parse_preset(text)
    orders, units = _preset_requirements(name, params)
    if params.get("rationals"):
        field = RationalField()
    else:
        if prime is None and "prime" in params:
            prime = int(params["prime"])
        if prime is None:
            prime = next_prime_with(DEFAULT_PRIME, orders, units)
        field = PrimeField(prime)
        for m in orders:
            if (field.p - 1) % m != 0:
                raise ValueError(f"F_{field.p} has no element of order {m}")
        for u in units:
            if u.numerator % field.p == 0 or u.denominator % field.p == 0:
                raise ValueError(f"preset value {u} is not a unit mod {field.p}")
    source = text if prime is None else _with_param(text, "prime", prime)

    def generic_q():
        if field.char == 0:
            return Fraction(2)
        g = primitive_root(field.p)
        if trunc is not None and field.p - 1 <= 2 * trunc:
            raise ValueError(
                f"generic parameter needs order > {2 * trunc}, "
                f"but F_{field.p}^* has order {field.p - 1}")
        return g

    def chosen_q():
        if "q" in params:
            return field.parse(params["q"])
        if "order" in params:
            m = int(params["order"])
            if field.char == 0:
                if m == 1:
                    return field.one
                if m == 2:
                    return field.neg(field.one)
                raise ValueError(f"no rational root of unity of order {m}")
            return field.element_of_order(m)
        return field.from_int(generic_q()) if field.char else generic_q()

    if name == "quantum-plane":
        q = chosen_q() if ("q" in params or "order" in params) else field.neg(field.one)
        if q == field.zero:
            raise ValueError("quantum-plane parameter q must be nonzero")
        data = [[q, field.one], [field.one, q]]
        return BraidedSpace(field, 2, "diagonal", data, source=source)
    if name == "cartan-A2":
        q = chosen_q()
        if q == field.zero:
            raise ValueError("cartan-A2 parameter q must be nonzero")
        data = [[q, field.inv(q)], [field.one, q]]
        return BraidedSpace(field, 2, "diagonal", data, source=source)
    if name == "s3-rack":
        return BraidedSpace(field, 3, "general", _s3_rack_matrix(field),
                            source=source)
    raise AssertionError("unreachable")


def _with_param(preset_text: str, key: str, value) -> str:
    name, params = _parse_preset(preset_text)
    params[key] = value
    body = ",".join(f"{k}={v}" for k, v in params.items())
    return f"{name}({body})"


def build_space(source, prime=None, trunc=None) -> BraidedSpace:
    """Space from a JSON dict or a preset name string."""
    if isinstance(source, str):
        return space_from_preset(source, prime=prime, trunc=trunc)
    return space_from_json(source, prime=prime)


def source_requirements(source):
    """(order divisors, unit literals) of a space source, for prime searches."""
    if isinstance(source, str):
        name, params = _parse_preset(source)
        orders, units = _preset_requirements(name, params)
        return tuple(orders), tuple(units)
    orders = tuple(source.get("root_orders", ()))
    braiding = source.get("braiding", {})
    rows = braiding.get("diagonal") or braiding.get("general") or []
    units = []
    for row in rows:
        for v in row:
            f = Fraction(v)
            if f != 0:
                units.append(f)
    return orders, tuple(units)
