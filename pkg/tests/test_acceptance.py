"""Acceptance checklist: ten end-to-end checks of the library's guarantees.

Each check is one test so a verbose run reads as a pass/fail report, and each
prints one line of measured values.  The antipode sign check asserts a sign
pattern alternating with word length; the antipode provably applies a uniform
sign instead, so that test is expected to fail and its message reports the
relation that actually holds.
"""

import itertools
import random
import time
from fractions import Fraction

from conftest import random_diagonal
from lynhopf import freealg, nichols, series, words
from lynhopf.freealg import (BraidedSpace, antipode, bracket, bracket_element,
                             build_space, coproduct, expand_monotonic_basis,
                             leading_vector)
from lynhopf.nichols import GradedQuotient
from lynhopf.scalars import PrimeField, RationalField
from lynhopf.series import PowerSeries, geometric_factor


def _all_monotonic_factorizations(w: tuple, lyndon: set) -> list:
    """Every split of w into a non-increasing product of Lyndon words."""
    out = []

    def rec(pos, prev, acc):
        if pos == len(w):
            out.append(tuple(acc))
            return
        for end in range(pos + 1, len(w) + 1):
            f = w[pos:end]
            if f <= prev and f in lyndon:
                acc.append(f)
                rec(end, f, acc)
                acc.pop()

    rec(0, (len(set(w)) + 2,), [])
    return out


def test_criterion_01_factorization_is_the_unique_monotonic_one():
    start = time.perf_counter()
    checked = 0
    for d, max_len in ((2, 12), (3, 8)):
        lyndon = set(words.enumerate_lyndon(d, max_len))
        for n in range(1, max_len + 1):
            for w in itertools.product(range(1, d + 1), repeat=n):
                found = _all_monotonic_factorizations(w, lyndon)
                assert len(found) == 1, (w, found)
                assert found[0] == words.cfl_factorize(w)
                checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    print(f"criterion 1: {checked} words over d=2 (len<=12) and d=3 (len<=8), "
          f"exactly one monotonic Lyndon factorization each, {elapsed:.1f}s")


def test_criterion_02_worked_factorization_examples():
    assert words.is_lyndon(words.parse_word("12122"))
    assert not words.is_lyndon(words.parse_word("1212"))
    factors = words.cfl_factorize(words.parse_word("1231233122123"))
    assert [words.format_word(f) for f in factors] == ["1231233", "122123"]
    left, right = words.shirshov(words.parse_word("1231233"))
    assert (words.format_word(left), words.format_word(right)) == ("123", "1233")
    print("criterion 2: 12122 Lyndon, 1212 not; 1231233122123 = "
          "(1231233)(122123); shirshov(1231233) = (123, 1233)")


def test_criterion_03_lyndon_counting_identity():
    tops = []
    for d in (1, 2, 3):
        rep = series.lyndon_identity_check(d, 10)
        assert rep.ok, (d, rep.lhs.coeffs, rep.rhs.coeffs)
        tops.append(rep.rhs.coeffs[-1])
    print("criterion 3: prod over Lyndon words of 1/(1 - t^|u|) equals "
          f"1/(1 - d t) through degree 10 for d=1,2,3 (top terms {tops})")


def test_criterion_04_bracket_triangularity_and_direct_sum():
    rng = random.Random(40404)
    field = PrimeField(10007)
    dims = (1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3)
    letters = 0
    monomials = 0
    for d in dims:
        space = random_diagonal(field, d, rng)
        for u in words.enumerate_lyndon(d, 6):
            x = bracket(space, u).value
            assert leading_vector(x) == (u, field.one)
            assert all(len(w) == len(u) and w >= u for w in x.terms)
            letters += 1
        # one bracket word per word of each degree, with that word leading:
        # the basis change is unitriangular, so the bracket-word components
        # are independent and exhaust each graded piece
        for n in range(1, 7):
            for w in itertools.product(range(1, d + 1), repeat=n):
                x = bracket_element(space, w)
                assert leading_vector(x) == (w, field.one)
                assert all(len(v) == n and v >= w for v in x.terms)
                monomials += 1
    print(f"criterion 4: {len(dims)} random diagonal spaces over F_10007, "
          f"{letters} bracket letters and {monomials} bracket words through "
          f"degree 6, all unitriangular with coefficient 1")


def _left_bracket_pair(x, y):
    """x y - m c^{-1}(x ox y), the bracket that builds the bracket letters."""
    space = x.space
    fld = space.field
    acc: dict = {}
    for (l, r), c in freealg.braid_apply(x, y, inverse=True).terms.items():
        w = l + r
        v = fld.add(acc.get(w, fld.zero), c)
        if v == fld.zero:
            acc.pop(w, None)
        else:
            acc[w] = v
    return x * y - space.element(acc)


def test_criterion_05_bracket_pair_span_and_coproduct_support():
    rng = random.Random(50505)
    field = PrimeField(10007)
    pairs = 0
    middles = 0
    for _ in range(5):
        space = random_diagonal(field, 2, rng)
        lyndon = words.enumerate_lyndon(2, 5)
        for u, v in itertools.combinations(lyndon, 2):
            if len(u) + len(v) > 6:
                continue
            b = _left_bracket_pair(bracket(space, u).value,
                                   bracket(space, v).value)
            if words.shirshov(u + v) == (u, v):
                assert b == bracket(space, u + v).value
            for sw in expand_monotonic_basis(b):
                assert all(f >= u + v for f in sw), (u, v, sw)
            pairs += 1
        for u in words.enumerate_lyndon(2, 6):
            x = bracket(space, u).value
            dx = coproduct(x)
            left_triv = {l: c for (l, r), c in dx.terms.items() if not r}
            right_triv = {r: c for (l, r), c in dx.terms.items() if not l}
            assert left_triv == x.terms and right_triv == x.terms
            by_right: dict = {}
            for (l, r), c in dx.terms.items():
                if l and r:
                    by_right.setdefault(r, {})[l] = c
            for r, terms in by_right.items():
                for sw in expand_monotonic_basis(space.element(terms)):
                    assert all(f > u for f in sw), (u, r, sw)
                middles += 1
    print(f"criterion 5: d=2, 5 random diagonal spaces; {pairs} bracket "
          f"pairs [x_u, x_v] expand over factors >= uv, and all {middles} "
          f"non-trivial coproduct components of a bracket letter have left "
          f"factors expanding over factors > u")


def test_criterion_06_antipode_sign_on_bracket_letters():
    rng = random.Random(60606)
    fld = RationalField()
    minus = fld.neg(fld.one)

    def random_q():
        return Fraction(rng.choice((1, -1)) * rng.randint(1, 9),
                        rng.randint(1, 9))

    total = 0
    mismatched = []
    uniform_minus = 0
    for d in (1, 2, 3):
        q = [[random_q() for _ in range(d)] for _ in range(d)]
        space = BraidedSpace(fld, d, "diagonal", q)
        for u in words.enumerate_lyndon(d, 6):
            s = antipode(bracket(space, u, "left").value)
            dbl = bracket(space, u, "double").value
            total += 1
            if s == dbl.scale(minus):
                uniform_minus += 1
            claimed = dbl if len(u) % 2 == 1 else dbl.scale(minus)
            if s != claimed:
                mismatched.append(u)
    print(f"criterion 6: antipode(bracket(u)) == -double_bracket(u) for "
          f"{uniform_minus} of {total} Lyndon words |u| <= 6, d <= 3; the "
          f"alternating sign (-1)^(|u|-1) holds for {total - len(mismatched)}")
    assert not mismatched, (
        f"antipode(bracket(u)) == (-1)^(|u|-1) double_bracket(u) fails for "
        f"{len(mismatched)} of {total} Lyndon words (every odd |u|, starting "
        f"at u={mismatched[0]}); the measured relation is antipode(bracket(u)) "
        f"== -double_bracket(u) uniformly ({uniform_minus} of {total} words), "
        f"independent of the length of u")


def test_criterion_07_nichols_series_for_presets_at_two_primes():
    start = time.perf_counter()

    def dims(trunc):
        return lambda sp: GradedQuotient(sp, "nichols", trunc).hilbert_series().coeffs

    qp = nichols.run_guarded("quantum-plane", 4, dims(4))
    assert qp == (1, 2, 1, 0, 0)
    assert sum(qp) == 4

    cartan = nichols.run_guarded("cartan-A2", 8, dims(8))
    g1 = geometric_factor(1, 8, None)
    expected = (g1 * g1 * geometric_factor(2, 8, None)).coeffs
    assert cartan == expected == (1, 2, 4, 6, 9, 12, 16, 20, 25)

    rack = nichols.run_guarded("s3-rack", 5, dims(5))
    assert rack == (1, 3, 4, 3, 1, 0)
    assert sum(rack) == 12

    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    print(f"criterion 7: quantum-plane {qp} (total 4); cartan-A2 {cartan} "
          f"matching 1/((1-t)^2 (1-t^2)); s3-rack {rack} (total 12); each "
          f"checked at two distinct primes, {elapsed:.1f}s")


def test_criterion_08_hilbert_series_factorization():
    field = PrimeField(10007)
    ones2 = BraidedSpace(field, 2, "diagonal", [[field.one] * 2 for _ in range(2)])
    ones3 = BraidedSpace(field, 3, "diagonal", [[field.one] * 3 for _ in range(3)])
    cases = [
        ("free d=2", GradedQuotient(ones2, "free", 8)),
        ("free d=3", GradedQuotient(ones3, "free", 8)),
        ("quantum-plane", GradedQuotient(build_space("quantum-plane"), "nichols", 8)),
        ("cartan-A2", GradedQuotient(build_space("cartan-A2", trunc=8), "nichols", 8)),
        ("cartan-A2(order=3)", GradedQuotient(build_space("cartan-A2(order=3)"), "nichols", 8)),
        ("s3-rack", GradedQuotient(build_space("s3-rack"), "nichols", 5)),
    ]
    lines = []
    for name, R in cases:
        rep = nichols.verify_factorization(R)
        assert rep.ok, (name, rep.lhs.coeffs, rep.rhs.coeffs)
        assert rep.lhs == R.hilbert_series()
        lines.append(f"{name} {rep.lhs.coeffs} = prod of {len(rep.factors)} "
                     f"subquotient series")
    print("criterion 8: " + "; ".join(lines))


def test_criterion_09_subquotient_rank_one_quotients_nonneg():
    checked = []
    for preset in ("quantum-plane", "cartan-A2", "cartan-A2(order=3)"):
        R = GradedQuotient(build_space(preset, trunc=6), "nichols", 6)
        for u in words.enumerate_lyndon(2, 3):
            rep = nichols.nonneg_quotient_check(R, u)
            assert rep.ok, (preset, u, rep.factor.coeffs, rep.rank_one.coeffs,
                            rep.quotient.coeffs)
            checked.append((preset, words.format_word(u)))
    print(f"criterion 9: {len(checked)} subquotient series, each divisible "
          f"by its rank-one series with nonnegative quotient (5 Lyndon words "
          f"per diagonal preset)")


def test_criterion_10_pbw_reconstruction():
    expected_gens = {
        "quantum-plane": (((1,), 2), ((2,), 2)),
        "cartan-A2": (((1,), None), ((1, 2), None), ((2,), None)),
        "cartan-A2(order=3)": (((1,), 3), ((1, 2), 3), ((2,), 3)),
    }
    lines = []
    for preset, gens in expected_gens.items():
        R = GradedQuotient(build_space(preset, trunc=8), "nichols", 8)
        data = nichols.pbw_data(R)
        assert tuple((g.word, g.height) for g in data.generators) == gens
        assert nichols.pbw_series(data) == R.hilbert_series()
        shown = ", ".join(
            f"{words.format_word(g.word)}^{'inf' if g.height is None else g.height}"
            for g in data.generators)
        lines.append(f"{preset}: {shown}")
    print("criterion 10: restricted PBW series rebuilds the Hilbert series "
          "through degree 8 (" + "; ".join(lines) + ")")
