import pytest

from emzv.faypoly import compositions
from emzv.numerics import get_evaluator
from emzv.reduction import (
    FuelExhausted,
    is_terminal,
    measure,
    reduce_index,
    rewrite_step,
    simplify_zero_one,
    verify_reduction,
)
from emzv.relations import Expression
from emzv.words import is_admissible, is_zero_one, weight


def A(*entries, coeff=1):
    return Expression.atom(tuple(entries), coeff)


def all_indices(max_weight, max_length):
    for r in range(max_length + 1):
        for w in range(max_weight + 1):
            yield from compositions(w, r)


def test_terminal_atoms_pass_through():
    for k in [(), (1,), (0, 2), (1, 0), (0, 1, 1), (2, 0, 0, 2)]:
        expr, trace = reduce_index(k)
        assert expr == Expression.atom(k)
        assert trace.steps == []


def test_reduce_two_one():
    expr, trace = reduce_index((2, 1))
    assert [s.rule for s in trace.steps] == ["reflect", "odd_fay_split"]
    expected = (A(0) * A(3, 0)).scale(-1) + (A(2) * A(1, 0)).scale(-1)
    assert expr == expected


def test_reduce_one_two():
    expr, _ = reduce_index((1, 2))
    assert expr == A(0) * A(3, 0) + A(2) * A(1, 0)


def test_reduction_sweep_terminal_and_homogeneous():
    for k in all_indices(5, 4):
        expr, trace = reduce_index(k)
        weights = set()
        for mon, _ in expr.items():
            weights.add(sum(weight(a) for a in mon))
            for atom in mon:
                assert is_admissible(atom) or is_zero_one(atom), (k, atom)
        assert len(weights) <= 1
        if weights:
            assert weights == {weight(k)}, k


def test_replay_reproduces_final():
    for k in [(1, 2), (2, 1), (1, 2, 2), (1, 3, 1, 0), (0, 0, 2, 1), (1, 1, 1, 2)]:
        expr, trace = reduce_index(k)
        assert trace.replay() == expr, k


def test_measure_decreases_along_steps():
    for k in [(1, 2, 2), (1, 3, 1, 0), (2, 1, 0, 1)]:
        _, trace = reduce_index(k)
        for step in trace.steps:
            for atom in step.identity.rhs.atoms():
                if not is_terminal(atom):
                    assert measure(atom) < measure(step.index), (step.index, atom)


def test_fuel_exhausted():
    with pytest.raises(FuelExhausted) as info:
        reduce_index((1, 2, 2, 3), fuel=2)
    assert info.value.trace is not None
    with pytest.raises(ValueError):
        reduce_index((1, 2), fuel=0)


def test_rewrite_step_dispatch():
    assert rewrite_step((2, 1)).rule == "reflect"
    assert rewrite_step((0, 2, 1)).rule == "trailing_ones"
    assert rewrite_step((1, 2, 1)).rule == "trailing_ones"
    assert rewrite_step((1, 3)).rule == "parity_split"
    assert rewrite_step((1, 2)).rule == "odd_fay_split"
    assert rewrite_step((1, 2, 0, 0)).rule == "zero_rotation"
    with pytest.raises(ValueError):
        rewrite_step((0, 2))


def test_zero_rotation_identity_numeric():
    ev = get_evaluator(1j)
    for k in [(1, 2, 0, 0), (1, 3, 0)]:
        step = rewrite_step(k)
        assert step.rule == "zero_rotation"
        res = ev.eval_expression(step.identity.lhs) - ev.eval_expression(step.identity.rhs)
        assert abs(res) < 1e-6, k


def test_odd_fay_split_identity_numeric():
    ev = get_evaluator(1j)
    for k in [(1, 2), (1, 1, 2), (1, 2, 0, 2), (1, 0, 0, 2)]:
        step = rewrite_step(k)
        assert step.rule == "odd_fay_split"
        res = ev.eval_expression(step.identity.lhs) - ev.eval_expression(step.identity.rhs)
        assert abs(res) < 1e-6, k


def test_zero_rotation_congruence():
    # For odd-parity k = (1, k2, ..., 0) with rot = (0, 1, k2, ..., k_{r-1}),
    # the rotation identity refines the congruence I(k) = -I(rot) modulo
    # admissible values and products of strictly shorter values: removing the
    # admissible atom (0, k) and the I(rot) I(0) monomial must leave only
    # products of at least two factors, all shorter than k.
    for k in [(1, 2, 0, 0), (1, 3, 0), (1, 2, 0, 1, 0)]:
        r = len(k)
        step = rewrite_step(k)
        assert step.rule == "zero_rotation"
        rot = (0,) + k[:-1]
        leftover = (
            step.identity.rhs
            - Expression.atom((0,) + k, 2)
            + Expression.atom(rot) * Expression.atom((0,))
        )
        for mon, _ in leftover.items():
            assert len(mon) >= 2, (k, mon)
            assert all(len(atom) <= r - 1 for atom in mon), (k, mon)


def test_verify_reduction():
    report = verify_reduction((0, 0), 1j)
    assert report["passed"] and abs(report["lhs"] - 0.5) < 1e-10
    report = verify_reduction((2, 1), 1j)
    assert report["passed"] and report["residual"] <= 1e-6
    report = verify_reduction((1, 2, 2), 2j)
    assert report["passed"] and report["residual"] <= 1e-6


def test_verify_reduction_generic_tau():
    ev = get_evaluator(0.3 + 1.7j)
    for k in all_indices(4, 3):
        expr, _ = reduce_index(k)
        assert abs(ev.value(k) - ev.eval_expression(expr)) < 1e-6, k


def test_simplify_zero_one():
    assert simplify_zero_one(A(1, 1)).is_zero()
    assert simplify_zero_one(A(1) * A(0, 2)).is_zero()
    e = A(1, 0, coeff=3) + A(0, 2)
    assert simplify_zero_one(e) == e
    # I(0,1,1,0) has even parity: split to products, all further reducible
    out = simplify_zero_one(A(0, 1, 1, 0))
    for mon, _ in out.items():
        for atom in mon:
            assert len(atom) < 4
