import random
from fractions import Fraction

import pytest

from axbdd import (
    ALGORITHMS,
    BddManager,
    compile_circuit,
    compute,
    error_rate,
    evaluate_error,
    gen_adder,
    int_value,
    mutate,
    oracle_metrics,
    simulate,
    subtract,
    wce_baseline,
    wce_noabs,
    wce_ones,
    mae_baseline,
    mae_noabs,
    mae_ones,
    metrics,
)
from axbdd.circuit import Circuit, Gate

WCE_FNS = (wce_baseline, wce_ones, wce_noabs)
MAE_FNS = (mae_baseline, mae_ones, mae_noabs)


def difference_word(golden, approx, manager=None):
    manager = manager or BddManager(golden.input_count)
    return subtract(
        compile_circuit(manager, golden), compile_circuit(manager, approx)
    )


def test_exact_circuit_gives_zero_everywhere():
    golden = gen_adder("rca", 4, False)
    eps = difference_word(golden, golden)
    for fn in WCE_FNS + MAE_FNS:
        assert fn(eps).value == 0, fn.__name__


def test_wce_noabs_guard_returns_zero_not_one():
    # with no negative points the +1 of the negative branch must not fire
    golden = gen_adder("cla", 3, True)
    result = wce_noabs(difference_word(golden, golden))
    assert result.value == 0


def test_zeros_vs_identity(zeros2, identity2):
    # oracle over the 4 inputs: max |0 - x| = 3, mean = 6/4
    eps = difference_word(zeros2, identity2)
    for fn in WCE_FNS:
        assert fn(eps).value == 3, fn.__name__
    for fn in MAE_FNS:
        assert fn(eps).value == Fraction(3, 2), fn.__name__


def test_ones_correction_fires_on_negative_maximum(zeros2, identity2):
    # every error is negative here; the raw masked search alone reaches
    # only |e|-1 = 2, the sign correction supplies the missing 1
    eps = difference_word(zeros2, identity2)
    result = wce_ones(eps)
    assert result.value == 3
    man = eps.manager
    assert man.is_sat(man.apply("and", result.witness, eps.sign_bit))


def test_identity_vs_truncated(identity2, truncated2):
    # all errors non-negative; the negative terms of the noabs sum are zero
    eps = difference_word(identity2, truncated2)
    for fn in WCE_FNS:
        assert fn(eps).value == 1
    for fn in MAE_FNS:
        assert fn(eps).value == Fraction(1, 2)
    man = eps.manager
    assert not man.is_sat(eps.sign_bit)


def test_positive_only_and_wraparound_corpora():
    # +1 mod 4 circuit: half the errors negative, half positive
    plus_one = Circuit(
        name="plus1",
        inputs=("i0", "i1"),
        outputs=("o0", "o1"),
        gates=(
            Gate("NOT", ("i0",), "o0"),
            Gate("XOR", ("i0", "i1"), "o1"),
        ),
    )
    ident = Circuit(
        name="id",
        inputs=("i0", "i1"),
        outputs=("p0", "p1"),
        gates=(Gate("BUF", ("i0",), "p0"), Gate("BUF", ("i1",), "p1")),
    )
    wce_o, mae_o, _ = oracle_metrics(ident, plus_one)
    eps = difference_word(ident, plus_one)
    for fn in WCE_FNS:
        assert fn(eps).value == wce_o
    for fn in MAE_FNS:
        assert fn(eps).value == mae_o


def test_error_rate_cases(identity2, truncated2, zeros2):
    man = BddManager(2)
    ident = compile_circuit(man, identity2)
    trunc = compile_circuit(man, truncated2)
    assert error_rate(ident, ident).value == 0
    assert error_rate(ident, trunc).value == Fraction(1, 2)
    complement = Circuit(
        name="compl",
        inputs=("i0", "i1"),
        outputs=("n0", "n1"),
        gates=(Gate("NOT", ("i0",), "n0"), Gate("NOT", ("i1",), "n1")),
    )
    assert error_rate(ident, compile_circuit(man, complement)).value == 1


def test_error_rate_width_mismatch():
    man = BddManager(2)
    a = compile_circuit(
        man,
        Circuit("a", ("i0", "i1"), ("i0",), ()),
    )
    b = compile_circuit(
        man,
        Circuit("b", ("i0", "i1"), ("i0", "i1"), ()),
    )
    with pytest.raises(ValueError):
        error_rate(a, b)


def test_requires_signed_difference_word():
    man = BddManager(2)
    word = compile_circuit(man, Circuit("t", ("i0", "i1"), ("i0", "i1"), ()))
    for fn in WCE_FNS + MAE_FNS:
        with pytest.raises(ValueError):
            fn(word)


@pytest.mark.parametrize("kind", ["rca", "cla", "cska"])
@pytest.mark.parametrize("signed", [False, True])
def test_mutant_corpus_matches_oracle(kind, signed):
    golden = gen_adder(kind, 8, signed)
    manager = BddManager(16)
    golden_word = compile_circuit(manager, golden)
    rng = random.Random(f"{kind}-{signed}")
    for i in range(10):
        mutant = mutate(golden, rng.getrandbits(64), 1 + i % 4)
        wce_o, mae_o, rate_o = oracle_metrics(golden, mutant)
        mutant_word = compile_circuit(manager, mutant)
        eps = subtract(golden_word, mutant_word)
        for fn in WCE_FNS:
            assert fn(eps).value == wce_o, (kind, signed, i, fn.__name__)
        for fn in MAE_FNS:
            assert fn(eps).value == mae_o, (kind, signed, i, fn.__name__)
        assert error_rate(golden_word, mutant_word).value == rate_o


def test_cross_algorithm_agreement_beyond_oracle():
    golden = gen_adder("cska", 16, False)
    manager = BddManager(32)
    golden_word = compile_circuit(manager, golden)
    rng = random.Random(161)
    for i in range(5):
        mutant = mutate(golden, rng.getrandbits(64), 1 + i % 3)
        eps = subtract(golden_word, compile_circuit(manager, mutant))
        wces = {fn(eps).value for fn in WCE_FNS}
        maes = {fn(eps).value for fn in MAE_FNS}
        assert len(wces) == 1
        assert len(maes) == 1


def test_witness_soundness():
    golden = gen_adder("rca", 6, True)
    rng = random.Random(77)
    manager = BddManager(12)
    golden_word = compile_circuit(manager, golden)
    for i in range(6):
        mutant = mutate(golden, rng.getrandbits(64), 1 + i % 3)
        eps = subtract(golden_word, compile_circuit(manager, mutant))
        for fn in WCE_FNS:
            result = fn(eps)
            assert result.witness is not None
            assert manager.is_sat(result.witness)
            bits = manager.pick_assignment(result.witness)
            attained = abs(
                int_value(simulate(golden, bits)) - int_value(simulate(mutant, bits))
            )
            assert attained == result.value, fn.__name__


def test_metric_ordering_invariants():
    golden = gen_adder("cla", 5, False)
    rng = random.Random(8)
    manager = BddManager(10)
    golden_word = compile_circuit(manager, golden)
    for i in range(8):
        mutant = mutate(golden, rng.getrandbits(64), 1 + i % 2)
        mutant_word = compile_circuit(manager, mutant)
        eps = subtract(golden_word, mutant_word)
        wce = wce_noabs(eps).value
        mae = mae_noabs(eps).value
        rate = error_rate(golden_word, mutant_word).value
        assert mae <= wce
        assert (wce == 0) == (mae == 0) == (rate == 0)


def test_relative_accessor(zeros2, identity2):
    eps = difference_word(zeros2, identity2)
    result = wce_baseline(eps)
    assert result.relative() == Fraction(3, 3)  # m = 2 -> range 3
    assert result.value == 3  # accessor never mutates the stored value
    mae = mae_ones(eps)
    assert mae.relative() == Fraction(1, 2)
    man = BddManager(2)
    word = compile_circuit(man, identity2)
    with pytest.raises(ValueError):
        error_rate(word, word).relative()


def test_dispatch_and_validation(identity2, truncated2):
    eps = difference_word(identity2, truncated2)
    assert compute(eps, "wce", "noabs").value == 1
    with pytest.raises(ValueError):
        compute(eps, "epsilon", "noabs")
    with pytest.raises(ValueError):
        compute(eps, "wce", "fastest")


def test_evaluate_error_convenience(identity2, truncated2):
    result = evaluate_error(identity2, truncated2, metrics.MAE, metrics.NOABS)
    assert result.value == Fraction(1, 2)
    assert result.input_count == 2
    assert result.output_count == 2
    rate = evaluate_error(identity2, truncated2, metrics.ERROR_RATE)
    assert rate.value == Fraction(1, 2)


def test_algorithm_names_recorded(identity2, truncated2):
    eps = difference_word(identity2, truncated2)
    assert wce_baseline(eps).algorithm == "baseline"
    assert wce_ones(eps).algorithm == "ones"
    assert wce_noabs(eps).algorithm == "noabs"
    assert set(ALGORITHMS) == {"baseline", "ones", "noabs"}
