import itertools

import pytest

from axbdd import Circuit, Gate, bits_to_int, int_value, simulate


def all_assignments(n):
    """Every input assignment as a tuple of bits, LSB of the index first."""
    return itertools.product((0, 1), repeat=n)


def brute_force_metrics(f, fp):
    """Reference triple (wce, abs_sum, diff_count) by plain simulation.

    Deliberately naive: a scalar loop over every assignment, independent
    of both the vectorized oracle and the BDD algorithms.
    """
    wce = 0
    abs_sum = 0
    diff_count = 0
    for bits in all_assignments(f.input_count):
        vf = int_value(simulate(f, bits))
        vp = int_value(simulate(fp, bits))
        d = abs(vf - vp)
        wce = max(wce, d)
        abs_sum += d
        if vf != vp:
            diff_count += 1
    return wce, abs_sum, diff_count


def adder_value_pair(circuit, bits):
    """(a, b) operand values for an interleaved-input adder assignment."""
    a = bits_to_int(bits[0::2], circuit.signed)
    b = bits_to_int(bits[1::2], circuit.signed)
    return a, b


@pytest.fixture
def identity2():
    return Circuit(
        name="id2",
        inputs=("i0", "i1"),
        outputs=("o0", "o1"),
        gates=(Gate("BUF", ("i0",), "o0"), Gate("BUF", ("i1",), "o1")),
    )


@pytest.fixture
def truncated2():
    """Two-bit identity with the LSB output forced to zero."""
    return Circuit(
        name="id2_trunc",
        inputs=("i0", "i1"),
        outputs=("z", "o1"),
        gates=(Gate("CONST0", (), "z"), Gate("BUF", ("i1",), "o1")),
    )


@pytest.fixture
def zeros2():
    return Circuit(
        name="zeros2",
        inputs=("i0", "i1"),
        outputs=("z0", "z1"),
        gates=(Gate("CONST0", (), "z0"), Gate("CONST0", (), "z1")),
    )


HALF_ADDER_TEXT = """\
.model half_adder
.inputs a b
.outputs s0 s1
.gate XOR a b -> s0
.gate AND a b -> s1
.end
"""
