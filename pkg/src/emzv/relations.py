"""Exact identities among formal values I(k) attached to indices.

An Expression is a Q-linear combination of monomials, each monomial a
multiset of index atoms standing for a formal product of values; the empty
monomial is the unit 1.  An Identity pairs two expressions with a provenance
tag.  Identities are emitted verbatim from their defining formulas; no
normalization (such as rewriting an atom via reflection) is applied here, so
each identity can be audited against its source and validated numerically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .faypoly import enumerate_support
from .words import (
    Index,
    WordCombo,
    as_index,
    parity_is_even,
    reflection_sign,
    shuffle,
    weight,
    word_sort_key,
)

Monomial = tuple[Index, ...]


class PreconditionError(ValueError):
    """An identity constructor was called outside its domain of validity."""


class DegenerateError(ValueError):
    """The requested identity degenerates to an unusable form."""


def monomial(atoms: Iterator[Index]) -> Monomial:
    """Canonical monomial: atoms sorted, empty indices (unit factors) dropped."""
    return tuple(sorted((tuple(a) for a in atoms if len(a) > 0), key=word_sort_key))


def monomial_weight(mon: Monomial) -> int:
    return sum(weight(a) for a in mon)


def monomial_sort_key(mon: Monomial):
    return (len(mon), tuple(word_sort_key(a) for a in mon))


class Expression:
    """Exact Q-linear combination of monomials of index atoms."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "Expression":
        return cls()

    @classmethod
    def unit(cls, coeff: Fraction | int = 1) -> "Expression":
        return cls({(): Fraction(coeff)})

    @classmethod
    def atom(cls, k: Index, coeff: Fraction | int = 1) -> "Expression":
        """Single formal value as an expression; the empty index is the unit."""
        return cls({monomial([tuple(k)]): Fraction(coeff)})

    def items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: monomial_sort_key(t[0]))

    def coeff(self, mon: Monomial) -> Fraction:
        return self._terms.get(mon, Fraction(0))

    def atoms(self) -> set[Index]:
        return {a for mon in self._terms for a in mon}

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Expression") -> "Expression":
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Expression(terms)

    def __sub__(self, other: "Expression") -> "Expression":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "Expression":
        c = Fraction(c)
        return Expression({m: c * v for m, v in self._terms.items()})

    def __mul__(self, other: "Expression") -> "Expression":
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial(m1 + m2)
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return Expression(terms)

    def substitute_atom(self, atom: Index, replacement: "Expression") -> "Expression":
        """Replace every occurrence of `atom` (each power) by `replacement`."""
        atom = tuple(atom)
        out = Expression.zero()
        for mon, c in self._terms.items():
            mult = sum(1 for a in mon if a == atom)
            if mult == 0:
                out = out + Expression({mon: c})
                continue
            rest = Expression({monomial(a for a in mon if a != atom): c})
            for _ in range(mult):
                rest = rest * replacement
            out = out + rest
        return out

    def drop_odd_singletons(self) -> "Expression":
        """Remove monomials with a length-1 odd-weight factor (those values vanish)."""
        terms = {
            m: c
            for m, c in self._terms.items()
            if not any(len(a) == 1 and a[0] % 2 == 1 for a in m)
        }
        return Expression(terms)

    def is_weight_homogeneous(self) -> bool:
        weights = {monomial_weight(m) for m in self._terms}
        return len(weights) <= 1

    def homogeneous_weight(self) -> int | None:
        weights = {monomial_weight(m) for m in self._terms}
        if len(weights) == 1:
            return weights.pop()
        return None

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"coef": str(c), "atoms": [list(a) for a in m]}
                for m, c in self.items()
            ]
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Expression":
        terms: dict[Monomial, Fraction] = {}
        for t in data["terms"]:
            m = monomial(as_index(a) for a in t["atoms"])
            terms[m] = terms.get(m, Fraction(0)) + Fraction(t["coef"])
        return cls(terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            if m:
                atoms = "*".join("I(" + ",".join(str(e) for e in a) + ")" for a in m)
                parts.append(f"{c} * {atoms}")
            else:
                parts.append(f"{c}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Expression({self.to_text()})"


@dataclass(frozen=True)
class Identity:
    """An asserted equality lhs = rhs between expressions."""

    lhs: Expression
    rhs: Expression
    provenance: str

    def residual(self) -> Expression:
        return self.lhs - self.rhs

    def is_weight_homogeneous(self) -> bool:
        return self.residual().is_weight_homogeneous()


def shuffle_identity(v: Index, w: Index) -> Identity:
    """Product of two values equals the sum over their shuffles."""
    v, w = as_index(v), as_index(w)
    lhs = Expression.atom(v) * Expression.atom(w)
    rhs = Expression.zero()
    for word, c in shuffle(v, w).items():
        rhs = rhs + Expression.atom(word, c)
    return Identity(lhs, rhs, "shuffle")


def reflection_identity(k: Index) -> Identity:
    """Value of the reversed index equals (-1)^weight times the value."""
    k = as_index(k)
    lhs = Expression.atom(k[::-1])
    rhs = Expression.atom(k, reflection_sign(k))
    return Identity(lhs, rhs, "reflection")


def fay_identity(k: Index) -> Identity:
    """General Fay relation for one value, valid for r = 1 or last entry != 1.

    The zeta-carrying boundary sum is constructed literally from its delta
    guards; under the stated precondition every guard vanishes, which is
    asserted, so the emitted right-hand side is the pure coefficient sum
    -sum_l c<l|k> I(l).
    """
    k = as_index(k)
    r = len(k)
    if r == 0:
        raise PreconditionError("fay identity needs a non-empty index")
    if r > 1 and k[-1] == 1:
        raise PreconditionError("fay identity requires last entry != 1 when length > 1")
    # boundary sum: i runs over 2..r with guards delta_{1,k_1}..delta_{1,k_{i-1}}
    # and delta_{1,k_r}; each surviving term would carry a zeta(i) factor.
    surviving = []
    for i in range(2, r + 1):
        guard = all(k[j] == 1 for j in range(i - 1)) and k[-1] == 1
        if guard:
            surviving.append(i)
    assert not surviving, "zeta boundary terms must vanish under the precondition"
    rhs = Expression.zero()
    for l, c in enumerate_support(k):
        rhs = rhs + Expression.atom(l, -c)
    return Identity(Expression.atom(k), rhs, "fay")


def _binomial(a: int, b: int) -> int:
    """Binomial with the boundary conventions used by the length-2 formula.

    C(a, b) = 0 for b < 0 or a < b, except C(-1, -1) = 1 so that the n = 0
    boundary terms agree with the general Fay relation.
    """
    if a == -1 and b == -1:
        return 1
    if b < 0 or a < b:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def prop_mat_identity(r: int, s: int) -> Identity:
    """Explicit length-2 relation for I(r, s), any r, s >= 0 except (1, 1)."""
    if r < 0 or s < 0:
        raise PreconditionError("entries must be non-negative")
    if (r, s) == (1, 1):
        raise PreconditionError("the length-2 formula excludes (1, 1)")
    lhs = Expression.atom((r, s))
    rhs = Expression.atom((0, r + s), -((-1) ** s))
    for n in range(s + 1):
        coef = Fraction((-1) ** (s - n) * _binomial(r - 1 + n, r - 1))
        rhs = rhs + Expression.atom((r + n, s - n), coef)
    for n in range(r + 1):
        coef = Fraction((-1) ** (s + n) * _binomial(s - 1 + n, s - 1))
        rhs = rhs + Expression.atom((s + n, r - n), coef)
    return Identity(lhs, rhs, "prop_mat")


def split_sign(k: Index, i: int) -> int:
    """Sign (-1)^{k_{i+1}+...+k_r + r - i} attached to the split after place i."""
    return -1 if (sum(k[i:]) + len(k) - i) % 2 else 1


def parity_split(k: Index) -> Identity:
    """Split an even-parity value into products of strictly shorter values.

    From the antipode identity of the shuffle Hopf algebra combined with the
    reflection relation:

        0 = 2 I(k) + sum_{i=1}^{r-1} sign_i I(k_1..k_i) I(k_{i+1}..k_r),

    with sign_i = (-1)^{k_{i+1}+...+k_r + r - i}, valid when weight + length
    is even.
    """
    k = as_index(k)
    if not parity_is_even(k):
        raise PreconditionError("parity split needs even weight + length")
    if len(k) == 0:
        raise PreconditionError("parity split needs a non-empty index")
    if len(k) == 1:
        raise DegenerateError("length-1 indices have no non-trivial split")
    rhs = Expression.zero()
    for i in range(1, len(k)):
        term = Expression.atom(k[:i]) * Expression.atom(k[i:])
        rhs = rhs + term.scale(Fraction(-split_sign(k, i), 2))
    return Identity(Expression.atom(k), rhs, "parity_split")


def trailing_ones(k: Index) -> Identity:
    """Shuffle trailing ones into the prefix:

        I(k_1..k_n, 1^m) = ((-1)^m / m!) I(1^{sh m} sh (k_1..k_{n-1}), k_n)

    for k_n != 1 and m >= 1.  Every emitted atom ends with k_n.
    """
    k = as_index(k)
    m = 0
    while m < len(k) and k[len(k) - 1 - m] == 1:
        m += 1
    if m == 0:
        raise PreconditionError("no trailing ones to transform")
    if m == len(k):
        raise PreconditionError("all-ones indices are not transformed")
    n = len(k) - m
    prefix, last = k[: n - 1], k[n - 1]
    combo = WordCombo.word(prefix)
    for _ in range(m):
        acc: dict[Index, Fraction] = {}
        for word, c in combo.items():
            for word2, c2 in shuffle((1,), word).items():
                acc[word2] = acc.get(word2, Fraction(0)) + c * c2
        combo = WordCombo(acc)
    factorial = 1
    for j in range(2, m + 1):
        factorial *= j
    scale = Fraction((-1) ** m, factorial)
    rhs = Expression.zero()
    for word, c in combo.items():
        rhs = rhs + Expression.atom(word + (last,), c * scale)
    return Identity(Expression.atom(k), rhs, "trailing_ones")
