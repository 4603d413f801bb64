"""Graded quotients of the tensor algebra and their Hilbert-series data.

Covers Nichols algebras (degreewise image of the quantum symmetrizer),
free quotients, and user-presented quotients, plus the PBW generator and
height extraction, the per-Lyndon-word subquotient series, and the
factorization and nonnegativity checks.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from . import words
from .freealg import (BraidedSpace, TensorElement, _bracket_value,
                      _bracket_word_value, _m_braid, build_space, coproduct,
                      source_requirements)
from .linalg import Eliminator, kernel, reduce_mod, rref
from .scalars import next_prime_with
from .series import PowerSeries, geometric_factor

DEFAULT_MATRIX_CAP = 20000


class MatrixCapExceeded(RuntimeError):
    """A degree would need more matrix rows than the configured bound."""


class BadPrimeError(RuntimeError):
    """Two modular runs disagree; at least one prime is unlucky."""


def matrix_cap() -> int:
    raw = os.environ.get("LH_MAX_MATRIX")
    if raw is None:
        return DEFAULT_MATRIX_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"LH_MAX_MATRIX must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("LH_MAX_MATRIX must be positive")
    return cap


def _check_cap(space: BraidedSpace, n: int, cap: int | None):
    cap = cap if cap is not None else matrix_cap()
    rows = space.dim ** n
    if rows > cap:
        raise MatrixCapExceeded(
            f"degree {n} needs {rows} rows, above the bound {cap}")


def symmetrizer(space: BraidedSpace, n: int, cap: int | None = None) -> dict:
    """Columns of the degree-n quantum symmetrizer, {word: {word: coeff}}.

    Built by the coset recursion S_n = (sum over k of c_k c_{k+1} ... c_{n-1},
    including the empty product) applied after S_{n-1} on the first n-1
    strands; each summand braids the new strand into position k.  S_0 and S_1
    are identities.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    _check_cap(space, n, cap)
    key = ("sym", n)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    field = space.field
    if n == 0:
        cols = {(): {(): field.one}}
    else:
        prev = symmetrizer(space, n - 1, cap)
        cmap = space._cmap
        cols = {}
        for w in itertools.product(range(1, space.dim + 1), repeat=n):
            last = w[-1]
            base = {pw + (last,): c for pw, c in prev[w[:-1]].items()}
            acc = dict(base)
            cur = base
            for slot in range(n - 1, 0, -1):
                cur = _slot_image(field, cur, slot, cmap)
                for t, c in cur.items():
                    v = field.add(acc.get(t, field.zero), c)
                    if v == field.zero:
                        acc.pop(t, None)
                    else:
                        acc[t] = v
            cols[w] = acc
    space._cache[key] = cols
    return cols


def _slot_image(field, state: dict, slot: int, cmap: dict) -> dict:
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


@dataclass(frozen=True)
class GradedData:
    degree: int
    dim: int
    basis: tuple  # standard-monomial words
    relation_leads: tuple  # pivot words of the relation space


class GradedQuotient:
    """A graded quotient R = TV / (relations), computed degree by degree.

    kind "nichols" quotients by the symmetrizer kernels, "free" by nothing,
    "presented" by the two-sided ideal generated by the given homogeneous
    relations (verified to be a coideal up to trunc at construction).
    """

    KINDS = ("nichols", "free", "presented")

    def __init__(self, space: BraidedSpace, kind: str, trunc: int,
                 relations=(), cap: int | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown quotient kind {kind!r}")
        if not isinstance(trunc, int) or trunc < 0:
            raise ValueError("trunc must be a nonnegative integer")
        relations = tuple(relations)
        if relations and kind != "presented":
            raise ValueError("relations only make sense for kind 'presented'")
        for r in relations:
            if r.space is not space:
                raise ValueError("relation lives over a different space")
            if r.is_zero() or not r.is_homogeneous():
                raise ValueError("relations must be nonzero homogeneous")
            if r.degree() < 2:
                raise ValueError("relations must have degree at least 2")
        self.space = space
        self.kind = kind
        self.trunc = trunc
        self.relations = relations
        self.cap = cap
        self._pivots: dict = {0: {}, 1: {}}
        self._basis: dict = {}
        if kind == "presented":
            for n in range(2, trunc + 1):
                self._ensure(n)
                self._check_coideal(n)

    def _ensure(self, n: int) -> dict:
        if n > self.trunc:
            raise ValueError(f"degree {n} exceeds truncation {self.trunc}")
        hit = self._pivots.get(n)
        if hit is not None:
            return hit
        space = self.space
        field = space.field
        if self.kind == "free":
            pivots = {}
        elif self.kind == "nichols":
            cols = symmetrizer(space, n, self.cap)
            pivots = rref(field, kernel(field, cols))
        else:
            _check_cap(space, n, self.cap)
            rows = []
            for r in self.relations:
                k = r.degree()
                if k > n:
                    continue
                for i in range(n - k + 1):
                    for a in itertools.product(range(1, space.dim + 1), repeat=i):
                        for b in itertools.product(range(1, space.dim + 1),
                                                   repeat=n - k - i):
                            rows.append({a + w + b: c for w, c in r.terms.items()})
            pivots = rref(field, rows)
        self._pivots[n] = pivots
        return pivots

    def _check_coideal(self, n: int):
        """Delta of each degree-n relation must lie in Rel ox TV + TV ox Rel."""
        pivots = self._pivots[n]
        if not pivots:
            return
        space = self.space
        field = space.field
        span = Eliminator(field)
        for i in range(2, n + 1):
            for row in self._ensure(i).values():
                for b in itertools.product(range(1, space.dim + 1), repeat=n - i):
                    span.insert({(w, b): c for w, c in row.items()})
                for a in itertools.product(range(1, space.dim + 1), repeat=n - i):
                    span.insert({(a, w): c for w, c in row.items()})
        for lead in sorted(pivots):
            delta = coproduct(TensorElement(space, dict(pivots[lead])))
            if not span.contains(dict(delta.terms)):
                raise ValueError(
                    f"relations do not generate a coideal at degree {n}")

    def dim(self, n: int) -> int:
        if n > self.trunc:
            raise ValueError(f"degree {n} exceeds truncation {self.trunc}")
        return self.space.dim ** n - len(self._ensure(n))

    def basis(self, n: int) -> tuple:
        """Standard monomials: words of length n avoiding the relation pivots."""
        hit = self._basis.get(n)
        if hit is None:
            pivots = self._ensure(n)
            hit = tuple(w for w in itertools.product(
                range(1, self.space.dim + 1), repeat=n) if w not in pivots)
            self._basis[n] = hit
        return hit

    def project_terms(self, terms: dict, n: int) -> dict:
        return reduce_mod(self.space.field, terms, self._ensure(n))

    def project(self, x: TensorElement) -> dict:
        """Coordinates of a homogeneous element on the standard monomials."""
        if x.space is not self.space:
            raise ValueError("element lives over a different space")
        if x.is_zero():
            return {}
        return self.project_terms(x.terms, x.degree())

    def graded_data(self, n: int) -> GradedData:
        pivots = self._ensure(n)
        return GradedData(n, self.dim(n), self.basis(n), tuple(sorted(pivots)))

    def hilbert_series(self, trunc: int | None = None) -> PowerSeries:
        trunc = self.trunc if trunc is None else trunc
        return PowerSeries(tuple(self.dim(n) for n in range(trunc + 1)))


def hilbert_series(R: GradedQuotient, trunc: int | None = None) -> PowerSeries:
    return R.hilbert_series(trunc)


@dataclass(frozen=True)
class PBWGenerator:
    word: tuple
    height: int | None  # None: no power relation up to the truncation


@dataclass(frozen=True)
class PBWData:
    trunc: int
    generators: tuple  # PBWGenerator, sorted lexicographically by word


@dataclass(frozen=True)
class SubquotientSeries:
    word: tuple
    series: PowerSeries


@dataclass(frozen=True)
class FactorizationReport:
    ok: bool
    trunc: int
    lhs: PowerSeries
    rhs: PowerSeries
    factors: tuple  # SubquotientSeries for every Lyndon word of length <= trunc


@dataclass(frozen=True)
class NonnegReport:
    ok: bool
    word: tuple
    factor: PowerSeries
    rank_one: PowerSeries
    quotient: PowerSeries


def _pi_bracket_word(R: GradedQuotient, sw: tuple) -> dict:
    val = _bracket_word_value(R.space, sw, "left")
    return R.project_terms(val.terms, words.superword_degree(sw))


def _restricted_words(G: list, degree: int, heights: dict):
    caps = {u: h - 1 for u, h in heights.items() if h is not None}
    return words.monotonic_superwords(G, degree, caps or None)


def pbw_data(R: GradedQuotient, trunc: int | None = None) -> PBWData:
    """Hard Lyndon-word generators with heights, scanned degree by degree.

    A Lyndon word u of degree n is accepted when the image of its bracket is
    independent of the images of the restricted monotonic bracket words over
    the generators accepted so far; candidates are scanned lexicographically.
    An accepted u gets height h at degree h|u| when the image of bracket(u)^h
    falls into the span of the lower restricted words of that degree; heights
    cap letter multiplicities in all later restricted words.
    """
    if not R.space.is_diagonal:
        raise NotImplementedError(
            "PBW extraction is only implemented for diagonal braidings")
    N = R.trunc if trunc is None else trunc
    if N > R.trunc:
        raise ValueError(f"degree {N} exceeds truncation {R.trunc}")
    field = R.space.field
    G: list = []
    heights: dict = {}
    for n in range(1, N + 1):
        for u in sorted(g for g in G if heights[g] is None and n % len(g) == 0):
            h = n // len(u)
            if h < 2:
                continue
            target = (u,) * h
            span = Eliminator(field)
            for sw in _restricted_words(G, n, heights):
                if sw < target:
                    span.insert(_pi_bracket_word(R, sw))
            if span.contains(_pi_bracket_word(R, target)):
                heights[u] = h
        span = Eliminator(field)
        for sw in _restricted_words(G, n, heights):
            span.insert(_pi_bracket_word(R, sw))
        for u in words.enumerate_lyndon(R.space.dim, n):
            if len(u) != n:
                continue
            vec = R.project_terms(_bracket_value(R.space, u, "left").terms, n)
            if not span.contains(dict(vec)):
                G.append(u)
                heights[u] = None
                span.insert(vec)
    gens = tuple(PBWGenerator(u, heights[u]) for u in sorted(G))
    return PBWData(N, gens)


def pbw_series(data: PBWData, trunc: int | None = None) -> PowerSeries:
    """Hilbert series a restricted PBW basis with the given data would give."""
    trunc = data.trunc if trunc is None else trunc
    out = PowerSeries.one(trunc)
    for gen in data.generators:
        out = out * geometric_factor(len(gen.word), trunc, gen.height)
    return out


def _cfl_table(space: BraidedSpace, d: int, m: int) -> tuple:
    """All degree-m words over 1..d with first and last CFL factor, sorted."""
    key = ("cfl_table", d, m)
    hit = space._cache.get(key)
    if hit is None:
        rows = []
        for w in itertools.product(range(1, d + 1), repeat=m):
            sw = words.cfl_factorize(w)
            rows.append((sw[0], sw[-1], sw))
        hit = tuple(rows)
        space._cache[key] = hit
    return hit


def _instantiations(part: tuple, w: tuple):
    """Coordinate words filling each block-alphabet slot of w from its block."""
    return itertools.product(*(part[b - 1] for b in w))


def _block_bracket(space: BraidedSpace, part: tuple, u: tuple, cw: tuple) -> TensorElement:
    """Left bracket of the coordinate monomial cw along the block-Lyndon word u."""
    if len(part) == space.dim:
        return _bracket_value(space, u, "left")
    key = ("blbr", u, cw)
    hit = space._cache.get(key)
    if hit is None:
        if len(u) == 1:
            hit = space.generator(cw[0])
        else:
            v, w = words.shirshov(u)
            a = _block_bracket(space, part, v, cw[:len(v)])
            b = _block_bracket(space, part, w, cw[len(v):])
            hit = (a * b) - _m_braid(space, a, b, True)
        space._cache[key] = hit
    return hit


def _block_bracket_word(space: BraidedSpace, part: tuple, sw: tuple, cw: tuple) -> TensorElement:
    """Ordered product of block brackets along the monotonic super-word sw."""
    if len(part) == space.dim:
        return _bracket_word_value(space, sw, "left")
    key = ("blbw", sw, cw)
    hit = space._cache.get(key)
    if hit is None:
        if not sw:
            hit = space.unit()
        else:
            cut = len(cw) - len(sw[-1])
            head = _block_bracket_word(space, part, sw[:-1], cw[:cut])
            hit = head * _block_bracket(space, part, sw[-1], cw[cut:])
        space._cache[key] = hit
    return hit


def subquotient_series(R: GradedQuotient, u, trunc: int | None = None) -> SubquotientSeries:
    """Series of A^(u)/I^(u) in R: A is spanned by monotonic bracket words
    with all super-letters >= u, I by those whose first super-letter is > u.

    Words live over the alphabet of braiding-stable blocks (the coordinate
    alphabet when the braiding is diagonal).  In each degree k|u| the
    coefficient is the number of bracket images of u^k staying independent
    of the ideal part; for one-dimensional blocks it is 0 or 1.
    """
    space = R.space
    part = space.component_partition()
    D = len(part)
    u = words.validate_word(u, D)
    if not words.is_lyndon(u):
        raise ValueError(f"{u} is not a Lyndon word")
    N = R.trunc if trunc is None else trunc
    if N > R.trunc:
        raise ValueError(f"degree {N} exceeds truncation {R.trunc}")
    field = space.field
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    k = 1
    while k * len(u) <= N:
        m = k * len(u)
        _check_cap(space, m, R.cap)
        span = Eliminator(field)
        for first, last, sw in _cfl_table(space, D, m):
            if last >= u and first > u:
                for cw in _instantiations(part, words.concat(sw)):
                    val = _block_bracket_word(space, part, sw, cw)
                    span.insert(R.project_terms(val.terms, m))
        target = (u,) * k
        count = 0
        for cw in _instantiations(part, u * k):
            val = _block_bracket_word(space, part, target, cw)
            if span.insert(R.project_terms(val.terms, m)):
                count += 1
        coeffs[m] = count
        k += 1
    return SubquotientSeries(u, PowerSeries(tuple(coeffs)))


def verify_factorization(R: GradedQuotient, trunc: int | None = None) -> FactorizationReport:
    """Compare hilbert_series with the product of all subquotient series."""
    N = R.trunc if trunc is None else trunc
    lhs = R.hilbert_series(N)
    factors = []
    rhs = PowerSeries.one(N)
    for u in words.enumerate_lyndon(len(R.space.component_partition()), max(N, 1)):
        if len(u) > N:
            continue
        sq = subquotient_series(R, u, N)
        factors.append(sq)
        rhs = rhs * sq.series
    return FactorizationReport(lhs == rhs, N, lhs, rhs, tuple(factors))


def _rank_one_height(field, q):
    """Least n with the q-integer [n] = 1 + q + ... + q^{n-1} equal to zero.

    None means no such n (free polynomial behavior).  For q = 1 this is the
    characteristic; otherwise it is the multiplicative order of q.
    """
    if q == field.one:
        return field.char if field.char else None
    m = field.multiplicative_order(q)
    return m


def nonneg_quotient_check(R: GradedQuotient, u, trunc: int | None = None) -> NonnegReport:
    """Divide the subquotient series by the rank-one Nichols series of bracket(u).

    The rank-one space has self-braiding q_{u,u}; a dead generator (bracket
    image zero in R, subquotient series 1) contributes the constant series 1
    on both sides.  ok means the quotient has nonnegative coefficients.
    """
    if not R.space.is_diagonal:
        raise NotImplementedError(
            "the rank-one self-braiding scalar needs a diagonal braiding")
    N = R.trunc if trunc is None else trunc
    sq = subquotient_series(R, u, N)
    u = sq.word
    step = len(u)
    alive = step <= N and sq.series.coeffs[step] != 0
    if not alive:
        rank_one = PowerSeries.one(N)
    else:
        q_uu = R.space.qprod(u, u)
        rank_one = geometric_factor(step, N, _rank_one_height(R.space.field, q_uu))
    quotient = sq.series.div(rank_one)
    return NonnegReport(quotient.all_nonneg(), u, sq.series, rank_one, quotient)


def run_guarded(source, trunc: int, compute, prime: int | None = None,
                second_prime: int | None = None):
    """Run a computation over two primes and insist the results agree.

    `compute` maps a BraidedSpace to any comparable value.  Sources over the
    rationals run once; modular sources are re-instantiated at a second
    compatible prime (same declared root orders, all literal entries still
    units) and a mismatch raises BadPrimeError.
    """
    space = build_space(source, prime=prime, trunc=trunc)
    if space.field.char == 0:
        return compute(space)
    orders, units = source_requirements(source)
    p1 = space.field.p
    if second_prime is None:
        second_prime = next_prime_with(p1 + 1, orders, units)
    if second_prime == p1:
        raise ValueError("the two guard primes must differ")
    other = build_space(source, prime=second_prime, trunc=trunc)
    first = compute(space)
    second = compute(other)
    if first != second:
        raise BadPrimeError(
            f"results differ between F_{p1} and F_{second_prime}; "
            f"at least one prime loses rank")
    return first
