from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limspace import boolfun, classical


def test_instruction_text_forms():
    assert str(classical.Instruction.flip()) == "flip"
    assert str(classical.Instruction.reset(0)) == "reset(0)"
    assert str(classical.Instruction.cflip(2, 1)) == "flip(2,1)"
    assert str(classical.Instruction.creset(3, 0, 1)) == "reset(3,0,1)"
    with pytest.raises(ValueError):
        classical.Instruction("jump")
    with pytest.raises(ValueError):
        classical.Instruction.cflip(0, 1)
    with pytest.raises(ValueError):
        classical.Instruction("reset")


def test_run_program_semantics():
    n = 2
    prog = [
        classical.Instruction.flip(),
        classical.Instruction.creset(1, 1, 0),
        classical.Instruction.cflip(2, 1),
    ]
    expected = {0b00: 1, 0b01: 0, 0b10: 0, 0b11: 1}
    for x, want in expected.items():
        assert classical.run_program(prog, n, x) == want
    with pytest.raises(ValueError):
        classical.run_program(prog, 1, 0)
    with pytest.raises(ValueError):
        classical.run_program(prog, 2, 4)


def test_known_exact_ratios():
    assert classical.approximation_ratio(boolfun.maj(3)).value == Fraction(7, 8)
    assert classical.approximation_ratio(boolfun.slsb(3)).value == Fraction(7, 8)
    assert classical.approximation_ratio(boolfun.slsb(4)).value == Fraction(13, 16)
    assert classical.approximation_ratio(boolfun.slsb(5)).value == Fraction(23, 32)
    assert classical.approximation_ratio(boolfun.maj(5)).value == Fraction(25, 32)


def test_ratio_arity_guard():
    with pytest.raises(ValueError):
        classical.approximation_ratio(boolfun.slsb(8))


@given(st.integers(min_value=1, max_value=5), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_ratio_witness_is_sound_and_attains_the_count(n, rnd):
    bits = [rnd.randint(0, 1) for _ in range(1 << n)]
    g = boolfun.BooleanFunction(n, bits)
    result = classical.approximation_ratio(g)
    achieved = int(np.sum(result.witness.truth().truth == g.truth))
    assert achieved == result.agreements
    assert result.value == Fraction(result.agreements, 1 << n)
    assert Fraction(1, 2) <= result.value <= 1
    compiled = classical.program_truth(result.witness.to_instructions(), n)
    assert compiled == result.witness.truth()


@given(st.integers(min_value=1, max_value=5), st.randoms(use_true_random=False))
@settings(max_examples=25, deadline=None)
def test_ratio_is_permutation_invariant(n, rnd):
    bits = [rnd.randint(0, 1) for _ in range(1 << n)]
    g = boolfun.BooleanFunction(n, bits)
    perm = list(range(n))
    rnd.shuffle(perm)
    idx = np.arange(1 << n)
    permuted = np.zeros_like(idx)
    for target, source in enumerate(perm):
        permuted |= ((idx >> source) & 1) << target
    g_perm = boolfun.BooleanFunction(n, g.truth[permuted])
    assert classical.approximation_ratio(g_perm).value == classical.approximation_ratio(g).value


def test_every_two_variable_function_is_exactly_computable():
    for t in range(16):
        f = boolfun.BooleanFunction(2, [(t >> i) & 1 for i in range(4)])
        prog = classical.omega_membership(f)
        assert prog is not None
        assert prog.truth() == f
        assert classical.approximation_ratio(f).value == 1


def test_membership_agrees_with_ratio_on_all_three_variable_functions():
    solver = classical._RatioSolver()
    for t in range(256):
        f = boolfun.BooleanFunction(3, [(t >> i) & 1 for i in range(8)])
        prog = classical.omega_membership(f)
        exact = classical.approximation_ratio(f, _solver=solver).value == 1
        assert (prog is not None) == exact
        if prog is not None:
            assert prog.truth() == f
            assert classical.program_truth(prog.to_instructions(), 3) == f


def test_named_hard_functions_are_not_members():
    for f in (boolfun.maj(3), boolfun.slsb(4), boolfun.maj(5)):
        assert classical.omega_membership(f) is None


def test_normal_form_validation():
    w = boolfun.AffineWitness(3, 0, 0b001)
    with pytest.raises(ValueError):
        classical.NormalFormProgram(3, ((1, 0, w), (1, 1, w)), w)
    with pytest.raises(ValueError):
        classical.NormalFormProgram(3, ((4, 0, w),), w)
    with pytest.raises(ValueError):
        classical.NormalFormProgram(3, (), boolfun.AffineWitness(2, 0, 0))


def test_normal_form_stage_order_matters_first_stage_wins():
    zero = boolfun.AffineWitness(2, 0, 0)
    one = boolfun.AffineWitness(2, 1, 0)
    prog = classical.NormalFormProgram(2, ((1, 1, one), (2, 1, zero)), zero)
    assert prog.evaluate(0b11) == 1
    assert prog.evaluate(0b10) == 0
    assert prog.evaluate(0b01) == 1
    assert prog.evaluate(0b00) == 0


def test_bounds_sandwich_the_exact_ratio():
    for f in (boolfun.maj(3), boolfun.slsb(3), boolfun.slsb(4), boolfun.slsb(5), boolfun.maj(5)):
        gmax = boolfun.spectral_max(f)
        value = float(classical.approximation_ratio(f).value)
        assert boolfun.classical_lower_bound(gmax) <= value + 1e-12
        assert value <= boolfun.classical_upper_bound(gmax) + 1e-12


def test_hardest_symmetric_small():
    value3, ties3 = classical.hardest_symmetric(3)
    assert value3 == Fraction(7, 8)
    profiles3 = {spec.by_weight for spec in ties3}
    assert (0, 0, 1, 1) in profiles3
    value4, ties4 = classical.hardest_symmetric(4)
    assert value4 == Fraction(13, 16)
    assert (0, 0, 1, 1, 0) in {spec.by_weight for spec in ties4}
    with pytest.raises(ValueError):
        classical.hardest_symmetric(7)


def test_randomized_estimate_is_conservative():
    g = boolfun.slsb(3)
    est = classical.randomized_ratio_estimate(g, extra_bits=2, trials=300, seed=7)
    assert 0.5 <= est <= float(classical.approximation_ratio(g).value) + 1e-12


def test_randomized_estimate_finds_exact_programs_for_members():
    f = boolfun.make_symmetric(boolfun.SymmetricSpec(3, (0, 1, 0, 1)))
    assert classical.omega_membership(f) is not None
    est = classical.randomized_ratio_estimate(f, extra_bits=0, trials=2000, seed=3)
    assert est == 1.0
