"""Rewrite any value I(k) into admissible and {0,1}-index generators.

Each non-terminal atom is rewritten by one of five exact identities, chosen
by the shape of its index:

  reflect        last entry 1, first entry >= 2: reverse with sign.
  trailing_ones  last entry 1, first entry in {0,1}: shuffle the ones inward.
  parity_split   even weight + length: split into shorter products.
  odd_fay_split  odd parity, first 1, last >= 2: the Fay relations on k and
                 on k with a zero spliced before its last entry, combined
                 through parity splits of both sides; the net effect replaces
                 the last entry by 0 and leaves otherwise shorter or
                 admissible factors.
  zero_rotation  odd parity, first 1, last 0: parity-split the index with a
                 leading zero attached and solve for I(k) using I(0) = 1;
                 the head zero moves the rightmost entry >= 2 one place
                 further right.

Termination is enforced through an explicit well-founded measure checked at
every step; a violation raises FuelExhausted instead of looping.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .faypoly import enumerate_support
from .relations import (
    Expression,
    Identity,
    parity_split,
    reflection_identity,
    split_sign,
    trailing_ones,
)
from .words import Index, as_index, is_admissible, is_zero_one, parity_is_even, word_sort_key

DEFAULT_FUEL = 10_000


class FuelExhausted(RuntimeError):
    """The rewrite loop ran out of fuel or the measure failed to decrease."""

    def __init__(self, message: str, trace: "ReductionTrace | None" = None):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class ReductionStep:
    rule: str
    index: Index
    identity: Identity


@dataclass
class ReductionTrace:
    start: Index
    steps: list[ReductionStep]
    final: Expression

    def replay(self) -> Expression:
        """Re-apply the recorded identities from the starting atom."""
        expr = Expression.atom(self.start)
        for step in self.steps:
            expr = expr.substitute_atom(step.index, step.identity.rhs)
        return expr


def is_terminal(k: Index) -> bool:
    return is_admissible(k) or is_zero_one(k)


def measure(k: Index) -> tuple[int, int, int, int]:
    """Well-founded measure: (length, #entries >= 2, rightmost >= 2 position
    from the right (1-based, 0 if none), last entry == 1)."""
    big = [i for i, e in enumerate(k) if e >= 2]
    pos = len(k) - big[-1] if big else 0
    return (len(k), len(big), pos, 1 if (k and k[-1] == 1) else 0)


def _odd_fay_split(k: Index) -> Identity:
    """Odd-parity step for k = (1, k_2, ..., k_r) with k_r >= 2.

    Combining the Fay relation on k' = (1, k_2, ..., k_{r-1}, 0, k_r) (whose
    coefficients reduce to those of k), parity splits of k' and of every
    (s, 0) in the support, and the Fay relation on k itself yields

        I(k) = - sum_{i=1}^{r}   sign_i(k') I(k'_{<=i}) I(k'_{>i})
               - sum_s c<s|k> sum_{i=1}^{r-1} sign_i((s,0)) I(s_{<=i}) I(s_{>i}, 0)

    after substituting I(0) = 1.  Monomials with a single odd entry factor
    are dropped (those values vanish by reflection); in particular the i = 1
    terms of the first sum carry I(1) and always vanish, and surviving i = 1
    terms of the second sum have an admissible second factor.
    """
    r = len(k)
    kp = k[:-1] + (0, k[-1])
    rhs = Expression.zero()
    for i in range(1, r + 1):
        coeff = Fraction(-split_sign(kp, i))
        rhs = rhs + (Expression.atom(kp[:i]) * Expression.atom(kp[i:])).scale(coeff)
    for s, c in enumerate_support(k):
        s0 = s + (0,)
        for i in range(1, r):
            coeff = Fraction(-c * split_sign(s0, i))
            rhs = rhs + (Expression.atom(s[:i]) * Expression.atom(s[i:] + (0,))).scale(coeff)
    return Identity(Expression.atom(k), rhs.drop_odd_singletons(), "reduction_step")


def _zero_rotation(k: Index) -> Identity:
    """Odd-parity step for k = (1, k_2, ..., k_{r-1}, 0).

    Parity-splitting ext = (0, k) (even parity) isolates the product
    I(0) I(k); solving with I(0) = 1 gives

        I(k) = 2 I(0, k) + sum_{i=2}^{r} sign_i(ext) I(ext_{<=i}) I(ext_{>i}).

    The atom I(0, k) is admissible, and the only child of full length has
    its rightmost entry >= 2 one position further right than in k.
    """
    r = len(k)
    ext = (0,) + k
    rhs = Expression.atom(ext, 2)
    for i in range(2, r + 1):
        coeff = Fraction(split_sign(ext, i))
        rhs = rhs + (Expression.atom(ext[:i]) * Expression.atom(ext[i:])).scale(coeff)
    return Identity(Expression.atom(k), rhs.drop_odd_singletons(), "reduction_step")


@functools.lru_cache(maxsize=None)
def rewrite_step(k: Index) -> ReductionStep:
    """Select and build the identity rewriting the non-terminal atom k."""
    if is_terminal(k):
        raise ValueError(f"atom {k} is already terminal")
    if k[-1] == 1:
        if k[0] >= 2:
            ident = reflection_identity(k[::-1])
            return ReductionStep("reflect", k, ident)
        return ReductionStep("trailing_ones", k, trailing_ones(k))
    if parity_is_even(k):
        return ReductionStep("parity_split", k, parity_split(k))
    # odd parity with last entry != 1 and non-admissible forces first entry 1
    assert k[0] == 1, k
    if k[-1] >= 2:
        return ReductionStep("odd_fay_split", k, _odd_fay_split(k))
    return ReductionStep("zero_rotation", k, _zero_rotation(k))


def reduce_index(k: Index, fuel: int = DEFAULT_FUEL) -> tuple[Expression, ReductionTrace]:
    """Rewrite I(k) into an expression over admissible and {0,1} atoms.

    Every distinct non-terminal atom is rewritten exactly once by its
    dispatch rule and the results are combined bottom-up; since the rule per
    atom is a function of the atom alone, this reproduces the expression the
    naive one-substitution-at-a-time loop would produce.  The recorded trace
    lists each atom's identity in decreasing measure order, which makes a
    sequential replay of the substitutions reproduce the final expression
    exactly.

    Raises FuelExhausted (with the partial trace attached) if the number of
    rule applications exceeds `fuel` or the termination measure fails to
    decrease, either of which would signal a convention bug, never a silent
    loop.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    k = as_index(k)
    immediate: dict[Index, ReductionStep] = {}

    def partial_trace() -> ReductionTrace:
        steps = sorted(
            immediate.values(),
            key=lambda s: (measure(s.index), word_sort_key(s.index)),
            reverse=True,
        )
        return ReductionTrace(k, steps, Expression.atom(k))

    def discover(atom: Index) -> None:
        if atom in immediate or is_terminal(atom):
            return
        if len(immediate) >= fuel:
            raise FuelExhausted(
                f"fuel exhausted after {len(immediate)} rule applications reducing {k}",
                partial_trace(),
            )
        step = rewrite_step(atom)
        for child in step.identity.rhs.atoms():
            if not is_terminal(child) and measure(child) >= measure(atom):
                raise FuelExhausted(
                    f"termination measure did not decrease at {atom} -> {child}",
                    partial_trace(),
                )
        immediate[atom] = step
        for child in sorted(step.identity.rhs.atoms(), key=word_sort_key):
            discover(child)

    discover(k)
    steps = sorted(
        immediate.values(),
        key=lambda s: (measure(s.index), word_sort_key(s.index)),
        reverse=True,
    )
    reduced: dict[Index, Expression] = {}
    for step in reversed(steps):
        expr = step.identity.rhs
        for child in sorted(expr.atoms(), key=word_sort_key):
            if child in reduced:
                expr = expr.substitute_atom(child, reduced[child])
        reduced[step.index] = expr
    final = Expression.atom(k)
    if k in reduced:
        final = reduced[k]
    trace = ReductionTrace(k, steps, final)
    return final, trace


def simplify_zero_one(expr: Expression) -> Expression:
    """Optional post-pass shrinking reducible {0,1} atoms.

    Replaces I(1) by 0 and parity-splits even-parity {0,1} atoms (for
    instance I(1,1) becomes a multiple of I(1)^2, hence 0).  Odd-parity
    {0,1} atoms such as I(0,1) are genuine generators and stay.
    """
    while True:
        target = None
        for atom in sorted(expr.atoms(), key=word_sort_key):
            if atom == (1,):
                target, replacement = atom, Expression.zero()
                break
            if is_zero_one(atom) and len(atom) >= 2 and parity_is_even(atom):
                target, replacement = atom, parity_split(atom).rhs
                break
        if target is None:
            return expr
        expr = expr.substitute_atom(target, replacement)


def verify_reduction(k: Index, tau, tol: float = 1e-6, cfg=None) -> dict:
    """Evaluate I(k) directly and through its reduction; compare at tau."""
    from .numerics import get_evaluator

    k = as_index(k)
    ev = get_evaluator(tau, cfg)
    expr, trace = reduce_index(k)
    lhs = ev.value(k)
    rhs = ev.eval_expression(expr)
    residual = abs(lhs - rhs)
    return {
        "index": k,
        "tau": ev.tau.tau,
        "lhs": lhs,
        "rhs": rhs,
        "residual": residual,
        "passed": residual <= tol,
        "trace_len": len(trace.steps),
    }
