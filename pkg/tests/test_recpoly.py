"""Reciprocal-polynomial layer: stripping, trace-form round trips, the
discriminant identity, the six-class machinery, and the irreducible
bucket counts against a direct enumeration oracle."""

import random
from fractions import Fraction

import pytest

from orthogal.errors import NotReciprocalError
from orthogal.ffield import get_field, SQUARE, NONSQUARE
from orthogal.poly import Poly, factor_degrees, is_irreducible, discriminant
from orthogal.recpoly import (strip, reciprocal_sign, to_trace_form,
                              trace_lift, disc_identity, in_P_n, classify_H,
                              classes_from_degrees, in_F_class,
                              count_irreducible_classes,
                              count_irreducible_classes_direct)


def _rand_h(rng, field, n, int_range=8):
    if field is None:
        cs = [rng.randrange(-int_range, int_range + 1) for _ in range(n)]
    else:
        cs = [rng.randrange(field.q) for _ in range(n)]
    return Poly(cs + [1], field)


# ---------------------------------------------------------------------------
# reciprocal_sign and strip
# ---------------------------------------------------------------------------


def test_reciprocal_sign_basic():
    assert reciprocal_sign(Poly([1, 3, 1])) == 1
    assert reciprocal_sign(Poly([1, 0, -1])) == -1
    assert reciprocal_sign(Poly([1, 2, 3])) is None
    F = get_field(5)
    assert reciprocal_sign(Poly([1, 3, 1], F)) == 1
    assert reciprocal_sign(Poly([4, 3, 0, 2, 1], F)) == -1


@pytest.mark.parametrize("ring", [None, get_field(5), get_field(3, 2)])
def test_strip_all_parities(ring):
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(1, 4)
        h = _rand_h(rng, ring, n)
        f = trace_lift(h)              # reciprocal, even degree, sign +1
        assert reciprocal_sign(f) == 1

        sp = strip(f * Poly([1, 1], ring))        # odd degree, eps = +1
        assert (sp.epsilon, sp.removed) == (1, "1+T")
        assert sp.f == f and sp.f.is_monic()

        sp = strip(f * Poly([-1, 1], ring))       # odd degree, eps = -1
        assert (sp.epsilon, sp.removed) == (-1, "1-T")
        assert sp.f == f

        sp = strip(f * Poly([-1, 0, 1], ring))    # even degree, eps = -1
        assert (sp.epsilon, sp.removed) == (-1, "1-T^2")
        assert sp.f == f

        if f.degree > 2:
            sp = strip(f)                          # even degree, eps = +1
            assert (sp.epsilon, sp.removed) == (1, "")
            assert sp.f == f
            assert sp.n == f.degree // 2


def test_strip_rejects_non_reciprocal():
    with pytest.raises(NotReciprocalError):
        strip(Poly([1, 2, 3, 4]))
    with pytest.raises(ValueError):
        strip(Poly([1, 3, 1]))   # degree must exceed 2


# ---------------------------------------------------------------------------
# Trace forms
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("ring", [None, get_field(3), get_field(7),
                                  get_field(5, 2)])
def test_trace_form_roundtrip(ring):
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randrange(1, 8)
        h = _rand_h(rng, ring, n)
        f = trace_lift(h)
        assert f.degree == 2 * n and f.is_monic()
        assert reciprocal_sign(f) == 1
        assert to_trace_form(f).h == h


def test_trace_lift_agrees_with_substitution():
    # f(a) = a^n h(a + 1/a) for every invertible a
    F = get_field(11)
    rng = random.Random(3)
    for _ in range(10):
        h = _rand_h(rng, F, rng.randrange(1, 5))
        f = trace_lift(h)
        n = h.degree
        for a in range(1, 11):
            lhs = f(a)
            rhs = F.mul(F.pow(a, n), h(F.add(a, F.inv(a))))
            assert lhs == rhs


def test_to_trace_form_rejects_bad_inputs():
    with pytest.raises(NotReciprocalError):
        to_trace_form(Poly([1, 2, 3]))       # odd degree
    with pytest.raises(NotReciprocalError):
        to_trace_form(Poly([1, 0, 2]))       # not monic
    with pytest.raises(NotReciprocalError):
        to_trace_form(Poly([2, 0, 1]))       # not reciprocal


@pytest.mark.parametrize("ring", [None, get_field(5), get_field(13),
                                  get_field(3, 2)])
def test_disc_identity(ring):
    rng = random.Random(19)
    for _ in range(25):
        h = _rand_h(rng, ring, rng.randrange(1, 6))
        f = trace_lift(h)
        lhs, rhs, cross = disc_identity(f)
        if ring is None:
            lhs, rhs, cross = Fraction(lhs), Fraction(rhs), Fraction(cross)
        assert lhs == rhs == cross


# ---------------------------------------------------------------------------
# The six classes
# ---------------------------------------------------------------------------


def test_in_P_n():
    F = get_field(5)
    assert in_P_n(Poly([1, 1], F))
    assert not in_P_n(Poly([3, 1], F))          # h(2) = 0
    assert not in_P_n(Poly([2, 1], F))          # h(-2) = 0
    assert not in_P_n(Poly([1, 2, 1], F))       # (T+1)^2 not separable
    assert not in_P_n(Poly([2, 2], F))          # not monic


def test_classes_from_degrees_pinned():
    # n = 1 special case: classes 1..5 always; 6 iff the lift stays prime
    assert classes_from_degrees([1], [1, 1]) == {1, 2, 3, 4, 5}
    assert classes_from_degrees([1], [2]) == {1, 2, 3, 4, 5, 6}
    # h irreducible of degree n = 4 (class 1); f = two quadratics: the
    # even count is 2+2 -> odd total evens in h+f would be 2, not class 5
    assert 1 in classes_from_degrees([4], [4, 4])
    # a 2-cycle next to odd cycles: class 3
    assert 3 in classes_from_degrees([1, 2], [1, 1, 2, 2])
    # prime cycle longer than n/2: class 2
    assert 2 in classes_from_degrees([1, 3], [1, 1, 3, 3])
    # all-odd h degrees with one or two quadratics in f: class 4
    assert 4 in classes_from_degrees([1, 1, 1], [1, 1, 2, 2])
    # odd number of even degrees across h and f: class 5
    assert 5 in classes_from_degrees([1, 2], [2, 4])
    # exactly one quadratic in f, rest odd: class 6
    assert 6 in classes_from_degrees([1, 1], [1, 1, 2])


def test_classify_H_matches_direct_definition():
    # classify_H must agree with classes_from_degrees applied to the
    # directly computed factor degree multisets
    for q in (5, 7):
        F = get_field(q)
        for n in (1, 2):
            for code in range(q ** n):
                cs, c = [], code
                for _ in range(n):
                    cs.append(c % q)
                    c //= q
                h = Poly(cs + [1], F)
                got = classify_H(h)
                if not in_P_n(h):
                    assert got == set()
                    continue
                f = trace_lift(h)
                assert got == classes_from_degrees(factor_degrees(h),
                                                   factor_degrees(f))


def test_in_F_class_consistency():
    F = get_field(7)
    rng = random.Random(23)
    for _ in range(40):
        h = _rand_h(rng, F, rng.randrange(1, 4))
        f = trace_lift(h)
        classes = classify_H(h)
        a = F.square_class(f.eval_int(1))
        b = F.square_class(f.eval_int(-1))
        for i in range(1, 7):
            if a.tag == "Zero" or b.tag == "Zero":
                continue
            want = (i in classes) and len(factor_degrees(f)) <= 8
            assert in_F_class(f, i, a, b) == want
            other = NONSQUARE if a == SQUARE else SQUARE
            assert not in_F_class(f, i, other, b)


def test_lift_dichotomy_small_exhaustive():
    # h irreducible with h(2)h(-2) != 0: the lift f is irreducible of
    # degree 2n exactly when h(2)h(-2) is a nonsquare, else it splits
    # into two irreducible factors of degree n
    for q in (3, 5):
        F = get_field(q)
        for n in (1, 2, 3):
            for code in range(q ** n):
                cs, c = [], code
                for _ in range(n):
                    cs.append(c % q)
                    c //= q
                h = Poly(cs + [1], F)
                if not is_irreducible(h):
                    continue
                val = F.mul(h.eval_int(2), h.eval_int(-2))
                if val == 0:
                    continue
                f = trace_lift(h)
                degs = factor_degrees(f)
                if F.square_class(val) == NONSQUARE:
                    assert degs == [2 * n]
                else:
                    assert degs == [n, n]


# ---------------------------------------------------------------------------
# Irreducible bucket counts
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("q,m", [(3, 1), (5, 1), (7, 1), (9, 1),
                                 (3, 2), (5, 2), (7, 2), (9, 2),
                                 (3, 3), (5, 3), (3, 4)])
def test_count_irreducible_classes_vs_direct(q, m):
    table = count_irreducible_classes(q, m)
    direct = count_irreducible_classes_direct(q, m)
    assert table.counts == direct
    assert table.total == sum(direct.values())
    for key, c in table.counts.items():
        assert table.deviations[key] == abs(4 * m * c - q ** m)


def test_count_irreducible_classes_budget():
    from orthogal.errors import BudgetExceededError
    with pytest.raises(BudgetExceededError):
        count_irreducible_classes(13, 9, budget=10 ** 6)
