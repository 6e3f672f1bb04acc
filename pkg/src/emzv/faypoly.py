"""Exact structure constants of the Fay relation.

For an index l = (l_1, ..., l_r) the generating rational function is

    P_l(u_1, ..., u_r) = sum_{i=0}^{r-1}
        u_1^{l_1-1} ... u_{i-1}^{l_{i-1}-1}
        (u_i + ... + u_r)^{l_i-1} (-u_{i+1} - ... - u_r)^{l_{i+1}-1}
        u_{i+1}^{l_{i+2}-1} ... u_{r-1}^{l_r-1},

where the (u_i + ... + u_r) factor is absent from the i = 0 term.
Multiplying by u_1 ... u_r yields a homogeneous integer polynomial of degree
weight(l); its coefficients c<l|k> (the coefficient of u^k) drive the Fay
relation between values.  Individual summands are honest rational functions
whenever some l_i = 0, so the sum is assembled over a common denominator of
suffix linear forms and divided out exactly, with the zero remainder checked.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from typing import Iterator

from .words import ArgumentError, Index, weight

ExpVec = tuple[int, ...]


class NonPolynomialError(ArithmeticError):
    """Exact division left a remainder where polynomiality is guaranteed."""


class SparsePoly:
    """Multivariate polynomial with integer coefficients, stored sparsely.

    Terms map exponent vectors (fixed length = number of variables) to
    non-zero integer coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[ExpVec, int] | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: int) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c}) if c else cls(nvars)

    @classmethod
    def monomial(cls, nvars: int, exps: ExpVec, c: int = 1) -> "SparsePoly":
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def suffix_form(cls, nvars: int, start: int) -> "SparsePoly":
        """The linear form u_start + u_{start+1} + ... + u_{nvars-1} (0-based)."""
        terms = {}
        for v in range(start, nvars):
            e = [0] * nvars
            e[v] = 1
            terms[tuple(e)] = 1
        return cls(nvars, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return SparsePoly(self.nvars, terms)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) - c
        return SparsePoly(self.nvars, terms)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        terms: dict[ExpVec, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return SparsePoly(self.nvars, terms)

    def scale(self, c: int) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def pow(self, n: int) -> "SparsePoly":
        out = SparsePoly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def coeff(self, exps: ExpVec) -> int:
        return self.terms.get(tuple(exps), 0)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self.terms)

    def evaluate(self, point: tuple[Fraction, ...]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            val = Fraction(c)
            for x, p in zip(point, e):
                val *= x**p
            total += val
        return total

    def divide_by_suffix_form(self, start: int) -> "SparsePoly":
        """Exact division by u_start + ... + u_{nvars-1}; remainder must vanish.

        Synthetic division viewing the polynomial in u_start with coefficients
        in the remaining variables.
        """
        nv = self.nvars
        rest_exp = [0] * nv
        # by_deg[d] collects terms with u_start exponent d
        by_deg: dict[int, dict[ExpVec, int]] = {}
        for e, c in self.terms.items():
            d = e[start]
            key = e[:start] + (0,) + e[start + 1 :]
            by_deg.setdefault(d, {})[key] = c
        if not by_deg:
            return SparsePoly.zero(nv)
        tail = SparsePoly.suffix_form(nv, start + 1) if start + 1 < nv else None
        if tail is None:
            # dividing by the single variable u_{nvars-1}
            quot: dict[ExpVec, int] = {}
            for e, c in self.terms.items():
                if e[start] == 0:
                    raise NonPolynomialError("term not divisible by last variable")
                quot[e[:start] + (e[start] - 1,) + e[start + 1 :]] = c
            return SparsePoly(nv, quot)
        dmax = max(by_deg)
        quotient = SparsePoly.zero(nv)
        carry = SparsePoly.zero(nv)  # coefficient polynomial being reduced
        for d in range(dmax, 0, -1):
            coeff_poly = SparsePoly(nv, by_deg.get(d, {})) + carry
            # quotient gains coeff_poly * u_start^{d-1}
            shifted = {
                e[:start] + (e[start] + d - 1,) + e[start + 1 :]: c
                for e, c in coeff_poly.terms.items()
            }
            quotient = quotient + SparsePoly(nv, shifted)
            carry = -(coeff_poly * tail)
        remainder = SparsePoly(nv, by_deg.get(0, {})) + carry
        if not remainder.is_zero():
            raise NonPolynomialError("exact division left a remainder")
        return quotient

    def __repr__(self) -> str:
        if not self.terms:
            return "SparsePoly(0)"
        parts = []
        for e, c in sorted(self.terms.items()):
            vars_part = "*".join(
                f"u{i}^{p}" for i, p in enumerate(e) if p
            )
            parts.append(f"{c}" + (f"*{vars_part}" if vars_part else ""))
        return "SparsePoly(" + " + ".join(parts) + ")"


def _term_numerator(l: Index, i: int, denom_vars: frozenset[int]) -> SparsePoly:
    """Numerator of summand i of u_1...u_r P_l over the common denominator.

    Variables are 0-based; suffix form T_v means u_v + ... + u_{r-1}.  The
    summand's own negative powers are T_{i-1} and T_i (when the matching
    l entry is 0); the remaining forms of the common denominator multiply in.
    """
    r = len(l)
    exps = [0] * r
    for v in range(0, i - 1):
        exps[v] += l[v]
    if i >= 1:
        exps[i - 1] += 1
    for v in range(i, r - 1):
        exps[v] += l[v + 1]
    exps[r - 1] += 1
    sign = -1 if (l[i] - 1) % 2 else 1
    poly = SparsePoly.monomial(r, tuple(exps), sign)
    own_negative = set()
    if i >= 1:
        if l[i - 1] == 0:
            own_negative.add(i - 1)
        else:
            poly = poly * SparsePoly.suffix_form(r, i - 1).pow(l[i - 1] - 1)
    if l[i] == 0:
        own_negative.add(i)
    else:
        poly = poly * SparsePoly.suffix_form(r, i).pow(l[i] - 1)
    for v in sorted(denom_vars - frozenset(own_negative)):
        poly = poly * SparsePoly.suffix_form(r, v)
    return poly


@functools.lru_cache(maxsize=None)
def p_poly(l: Index) -> SparsePoly:
    """The polynomial u_1 ... u_r P_l, homogeneous of degree weight(l).

    Summands are combined over the common denominator (the product of suffix
    forms T_v for each l_v = 0) and the denominator is divided out exactly.
    Raises NonPolynomialError if a remainder survives, which would signal a
    convention bug rather than valid input.
    """
    l = tuple(l)
    if len(l) == 0:
        raise ArgumentError("p_poly requires a non-empty index")
    r = len(l)
    denom_vars = frozenset(v for v in range(r) if l[v] == 0)
    total = SparsePoly.zero(r)
    for i in range(r):
        total = total + _term_numerator(l, i, denom_vars)
    for v in sorted(denom_vars):
        total = total.divide_by_suffix_form(v)
    return total


def c_coeff(l: Index, k: Index) -> int:
    """Coefficient of u_1^{k_1} ... u_r^{k_r} in u_1 ... u_r P_l."""
    if len(l) != len(k):
        raise ArgumentError(f"index length mismatch: {len(l)} vs {len(k)}")
    if len(l) == 0:
        raise ArgumentError("c_coeff requires non-empty indices")
    if weight(l) != weight(k):
        return 0
    return p_poly(tuple(l)).coeff(tuple(k))


def compositions(total: int, parts: int) -> Iterator[Index]:
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_support(k: Index) -> list[tuple[Index, int]]:
    """All l with c<l|k> != 0, in composition order.

    By homogeneity the support sits among compositions of weight(k) into
    length(k) non-negative parts.
    """
    k = tuple(k)
    if len(k) == 0:
        raise ArgumentError("enumerate_support requires a non-empty index")
    out = []
    for l in compositions(weight(k), len(k)):
        c = c_coeff(l, k)
        if c != 0:
            out.append((l, c))
    return out
