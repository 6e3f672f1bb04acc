import itertools
from fractions import Fraction
from math import prod

import pytest

from emzv.faypoly import (
    NonPolynomialError,
    SparsePoly,
    c_coeff,
    compositions,
    enumerate_support,
    p_poly,
)
from emzv.words import ArgumentError, weight


def rational_p_times_us(l, us):
    """Independent oracle: evaluate u_1...u_r P_l at an exact rational point.

    Works directly from the defining sum of rational-function terms, with
    Fraction arithmetic and genuine negative powers.
    """
    r = len(l)
    total = Fraction(0)
    for i in range(r):
        term = Fraction(1)
        for v in range(0, i - 1):
            term *= us[v] ** (l[v] - 1)
        if i >= 1:
            term *= sum(us[i - 1 :], Fraction(0)) ** (l[i - 1] - 1)
        term *= (-sum(us[i:], Fraction(0))) ** (l[i] - 1)
        for v in range(i, r - 1):
            term *= us[v] ** (l[v + 1] - 1)
        total += term
    return total * prod(us)


POINTS = {
    1: [(Fraction(2),), (Fraction(-3),), (Fraction(5, 7),)],
    2: [
        (Fraction(2), Fraction(3)),
        (Fraction(5), Fraction(-2)),
        (Fraction(1, 2), Fraction(7, 3)),
    ],
    3: [
        (Fraction(2), Fraction(3), Fraction(5)),
        (Fraction(7), Fraction(-2), Fraction(11)),
        (Fraction(1, 3), Fraction(2), Fraction(5, 7)),
    ],
    4: [
        (Fraction(2), Fraction(3), Fraction(5), Fraction(7)),
        (Fraction(3), Fraction(-1), Fraction(11), Fraction(2)),
        (Fraction(1, 2), Fraction(4), Fraction(3), Fraction(9, 5)),
    ],
}


def all_indices(max_weight, max_length, min_length=1):
    for r in range(min_length, max_length + 1):
        for w in range(max_weight + 1):
            yield from compositions(w, r)


def test_sparse_poly_arithmetic():
    x = SparsePoly.monomial(2, (1, 0))
    y = SparsePoly.monomial(2, (0, 1))
    s = x + y
    assert s * s == x * x + SparsePoly.monomial(2, (1, 1), 2) + y * y
    assert (s - s).is_zero()
    assert s.pow(3).coeff((2, 1)) == 3
    assert s == SparsePoly.suffix_form(2, 0)
    assert y == SparsePoly.suffix_form(2, 1)


def test_exact_division_by_suffix_form():
    s = SparsePoly.suffix_form(3, 1)  # u1 + u2
    q = SparsePoly.monomial(3, (2, 1, 0)) + SparsePoly.monomial(3, (0, 0, 3), -4)
    assert (q * s).divide_by_suffix_form(1) == q
    with pytest.raises(NonPolynomialError):
        (q * s + SparsePoly.monomial(3, (1, 0, 0))).divide_by_suffix_form(1)


def test_p_poly_length_one():
    assert p_poly((3,)) == SparsePoly.monomial(1, (3,))
    assert p_poly((0,)) == SparsePoly.constant(1, -1)
    assert p_poly((2,)) == SparsePoly.monomial(1, (2,), -1)
    assert p_poly((1,)) == SparsePoly.monomial(1, (1,))


def test_p_poly_weight_zero_pairs():
    # Each summand is rational; the sum collapses to the constant -1 for
    # every all-zeros index (the one-step recursion has zero correction).
    for r in range(2, 5):
        assert p_poly((0,) * r) == SparsePoly.constant(r, -1)


def test_p_poly_interior_pairs_closed_form():
    # For l1, l2 >= 1 both summands are already polynomial.
    for l1 in range(1, 5):
        for l2 in range(1, 5):
            u1 = SparsePoly.monomial(2, (1, 0))
            s = SparsePoly.suffix_form(2, 0)
            sign1 = -1 if (l1 - 1) % 2 else 1
            sign2 = -1 if (l2 - 1) % 2 else 1
            expected = SparsePoly.monomial(2, (l2, 1), sign1) * s.pow(l1 - 1) + (
                u1 * SparsePoly.monomial(2, (0, l2), sign2) * s.pow(l1 - 1)
            )
            assert p_poly((l1, l2)) == expected, (l1, l2)


def test_p_poly_matches_rational_oracle():
    for l in all_indices(6, 4):
        poly = p_poly(l)
        for us in POINTS[len(l)]:
            assert poly.evaluate(us) == rational_p_times_us(l, us), l


def test_p_poly_homogeneous_integer():
    for l in all_indices(6, 4):
        poly = p_poly(l)
        assert poly.is_homogeneous(weight(l)), l
        assert all(isinstance(c, int) for c in poly.terms.values())


def test_one_step_recursion():
    # u1...ur P_l = u1^{l1} (u2...ur P_{l2..lr}) + u1 ur (correction) embedded,
    # checked at exact rational points.
    for l in all_indices(6, 4):
        r = len(l)
        if r < 2:
            continue
        for us in POINTS[r]:
            lhs = rational_p_times_us(l, us)
            tail = rational_p_times_us(l[1:], us[1:])
            s1 = sum(us, Fraction(0))
            s2 = sum(us[1:], Fraction(0))
            corr = ((s1 ** (l[0] - 1)) - us[0] ** (l[0] - 1)) * (-s2) ** (l[1] - 1)
            corr += (-s1) ** (l[0] - 1) * us[0] ** (l[1] - 1)
            corr *= us[0] * us[-1] * prod(us[v] ** l[v + 1] for v in range(1, r - 1))
            assert lhs == us[0] ** l[0] * tail + corr, l


def test_c_coeff_length_one():
    for l in range(7):
        for k in range(7):
            expected = ((-1) ** (l - 1)) if l == k else 0
            assert c_coeff((l,), (k,)) == expected


def test_c_coeff_zero_weight_mismatch():
    assert c_coeff((1, 2), (2, 2)) == 0
    assert c_coeff((3,), (2,)) == 0


def test_c_coeff_leading_zero_pairs():
    # c<(0,w) | (k1,k2)> = (-1)^{k2} for interior k1,k2 >= 1, zero on the boundary.
    for w in range(1, 7):
        for k1 in range(w + 1):
            k2 = w - k1
            expected = (-1) ** k2 if (k1 >= 1 and k2 >= 1) else 0
            assert c_coeff((0, w), (k1, k2)) == expected, (w, k1, k2)


def test_c_coeff_even_one_vanishing():
    assert c_coeff((2, 1), (1, 2)) == 0
    for k1, k2 in compositions(3, 2):
        assert c_coeff((2, 1), (k1, k2)) == 0


def test_c_coeff_length_mismatch():
    with pytest.raises(ArgumentError):
        c_coeff((1, 2), (3,))


def test_coefficient_drop_trailing_zero_slot():
    # c<l | k1..k_{r-2}, 0, k_r> = delta_{0, l_r} c<l1..l_{r-1} | k1..k_{r-2}, k_r>
    for r in range(2, 5):
        for base in all_indices(6, r - 1, min_length=r - 1):
            k = base[:-1] + (0,) + (base[-1],)
            if weight(k) > 6:
                continue
            for l in compositions(weight(k), r):
                expected = c_coeff(l[:-1], base) if l[-1] == 0 else 0
                assert c_coeff(l, k) == expected, (l, k)


def test_coefficient_even_then_one_slot():
    # For even l1: c<l1,1,l3..lr | k> = delta_{l1,k1} (c<1,l3..lr | k2..kr> - chain)
    for r in range(2, 5):
        for rest in compositions_up_to(6 - 1, r - 2):
            for l1 in range(0, 6, 2):
                l = (l1, 1) + rest
                if weight(l) > 6:
                    continue
                for k in compositions(weight(l), r):
                    chain = int(rest == k[1:-1] and k[-1] == 1)
                    if l1 != k[0]:
                        expected = 0
                    else:
                        expected = c_coeff((1,) + rest, k[1:]) - chain
                    assert c_coeff(l, k) == expected, (l, k)


def compositions_up_to(max_weight, parts):
    if parts == 0:
        yield ()
        return
    for w in range(max_weight + 1):
        yield from compositions(w, parts)


def test_enumerate_support():
    assert enumerate_support((3,)) == [((3,), 1)]
    assert enumerate_support((0,)) == [((0,), -1)]
    for l, c in enumerate_support((1, 2)):
        assert weight(l) == 3 and len(l) == 2 and c != 0
        assert max(l) <= 3
    support = dict(enumerate_support((1, 2)))
    assert support == {(0, 3): 1, (1, 2): -1, (3, 0): 1}
