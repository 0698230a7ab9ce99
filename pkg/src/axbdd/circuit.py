"""Gate-level netlists: text format, simulation, and the enumeration oracle.

The text format is line oriented (``#`` starts a comment)::

    .model <name>
    .inputs <w> <w> ...        # declaration order = BDD variable order
    .outputs <w> <w> ...       # least significant bit first
    .signed <true|false>       # optional, default false
    .gate <OP> <in1> [<in2>] -> <out>
    .end

``CONST0``/``CONST1`` take no inputs, ``BUF``/``NOT`` one, all other
gates two.  Gates must appear in topological order, one per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

GATE_ARITY = {
    "CONST0": 0,
    "CONST1": 0,
    "BUF": 1,
    "NOT": 1,
    "AND": 2,
    "OR": 2,
    "XOR": 2,
    "NAND": 2,
    "NOR": 2,
    "XNOR": 2,
}

#: Largest input count the exhaustive oracle will enumerate by default.
DEFAULT_ORACLE_LIMIT = 24

_ORACLE_CHUNK = 1 << 18


class NetlistError(ValueError):
    """Malformed netlist text or an ill-formed circuit."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InterfaceMismatchError(ValueError):
    """Two circuits that must share inputs/outputs/signedness do not."""


class OracleLimitError(ValueError):
    """Exhaustive enumeration refused: input count above the limit."""


@dataclass(frozen=True)
class Gate:
    op: str
    inputs: tuple[str, ...]
    out: str


@dataclass(frozen=True)
class OutputWord:
    """Concrete output bits of one simulation, least significant first."""

    bits: tuple[int, ...]
    signed: bool


@dataclass(frozen=True)
class Circuit:
    """Immutable combinational gate DAG with an ordered I/O interface."""

    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    signed: bool = False

    def __post_init__(self):
        if self.input_count < 1:
            raise NetlistError("circuit needs at least one input")
        if self.output_count < 1:
            raise NetlistError("circuit needs at least one output")
        defined = set()
        for w in self.inputs:
            if w in defined:
                raise NetlistError(f"duplicate input {w!r}")
            defined.add(w)
        for g in self.gates:
            arity = GATE_ARITY.get(g.op)
            if arity is None:
                raise NetlistError(f"unknown gate operation {g.op!r}")
            if len(g.inputs) != arity:
                raise NetlistError(
                    f"{g.op} takes {arity} input(s), gate {g.out!r} has {len(g.inputs)}"
                )
            for w in g.inputs:
                if w not in defined:
                    raise NetlistError(
                        f"gate {g.out!r} reads {w!r} before it is defined"
                    )
            if g.out in defined:
                raise NetlistError(f"duplicate definition of wire {g.out!r}")
            defined.add(g.out)
        for w in self.outputs:
            if w not in defined:
                raise NetlistError(f"output wire {w!r} is never defined")

    @property
    def input_count(self) -> int:
        return len(self.inputs)

    @property
    def output_count(self) -> int:
        return len(self.outputs)

    def gate_count(self) -> int:
        return len(self.gates)

    def active_gate_count(self) -> int:
        """Gates lying on some path to an output."""
        produced = {g.out: g for g in self.gates}
        live = set()
        stack = [w for w in self.outputs if w in produced]
        while stack:
            w = stack.pop()
            if w in live:
                continue
            live.add(w)
            stack.extend(v for v in produced[w].inputs if v in produced)
        return len(live)


def parse(text: str) -> Circuit:
    """Parse netlist source into a validated :class:`Circuit`."""
    name = None
    inputs: list[str] | None = None
    outputs: list[str] | None = None
    signed = False
    gates: list[tuple[int, Gate]] = []
    ended = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise NetlistError("content after .end", lineno)
        tokens = line.split()
        head = tokens[0]
        if head == ".model":
            if len(tokens) != 2:
                raise NetlistError(".model takes exactly one name", lineno)
            name = tokens[1]
        elif head == ".inputs":
            if inputs is not None:
                raise NetlistError("duplicate .inputs", lineno)
            if len(tokens) < 2:
                raise NetlistError(".inputs needs at least one wire", lineno)
            inputs = tokens[1:]
        elif head == ".outputs":
            if outputs is not None:
                raise NetlistError("duplicate .outputs", lineno)
            if len(tokens) < 2:
                raise NetlistError(".outputs needs at least one wire", lineno)
            outputs = tokens[1:]
        elif head == ".signed":
            if len(tokens) != 2 or tokens[1] not in ("true", "false"):
                raise NetlistError(".signed takes true or false", lineno)
            signed = tokens[1] == "true"
        elif head == ".gate":
            if inputs is None:
                raise NetlistError(".inputs must precede gates", lineno)
            if len(tokens) < 4 or tokens[-2] != "->":
                raise NetlistError(
                    "expected .gate <OP> <in...> -> <out>", lineno
                )
            op = tokens[1]
            arity = GATE_ARITY.get(op)
            if arity is None:
                raise NetlistError(f"unknown gate operation {op!r}", lineno)
            gate_inputs = tuple(tokens[2:-2])
            if len(gate_inputs) != arity:
                raise NetlistError(
                    f"{op} takes {arity} input(s), got {len(gate_inputs)}", lineno
                )
            gates.append((lineno, Gate(op, gate_inputs, tokens[-1])))
        elif head == ".end":
            ended = True
        else:
            raise NetlistError(f"unknown directive {head!r}", lineno)

    if not ended:
        raise NetlistError("missing .end")
    if name is None:
        raise NetlistError("missing .model")
    if inputs is None:
        raise NetlistError("missing .inputs")
    if outputs is None:
        raise NetlistError("missing .outputs")

    # Wire-level validation with line diagnostics.  Use-before-definition
    # of a wire defined further down is an ordering/cycle error, distinct
    # from a wire that is never defined at all.
    defined_at: dict[str, int] = {}
    for i, w in enumerate(inputs):
        if w in defined_at:
            raise NetlistError(f"duplicate input {w!r}")
        defined_at[w] = 0
    for lineno, g in gates:
        if g.out in defined_at:
            raise NetlistError(f"duplicate definition of wire {g.out!r}", lineno)
        defined_at[g.out] = lineno
    for lineno, g in gates:
        for w in g.inputs:
            at = defined_at.get(w)
            if at is None:
                raise NetlistError(f"undefined wire {w!r}", lineno)
            if at >= lineno:
                raise NetlistError(
                    f"wire {w!r} used before its definition "
                    "(cycle or gates out of topological order)",
                    lineno,
                )
    for w in outputs:
        if w not in defined_at:
            raise NetlistError(f"output wire {w!r} is never defined")

    return Circuit(
        name=name,
        inputs=tuple(inputs),
        outputs=tuple(outputs),
        gates=tuple(g for _, g in gates),
        signed=signed,
    )


def parse_file(path) -> Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def emit(c: Circuit) -> str:
    """Netlist source for a circuit; ``parse(emit(c)) == c``."""
    lines = [
        f".model {c.name}",
        ".inputs " + " ".join(c.inputs),
        ".outputs " + " ".join(c.outputs),
        f".signed {'true' if c.signed else 'false'}",
    ]
    for g in c.gates:
        parts = [".gate", g.op, *g.inputs, "->", g.out]
        lines.append(" ".join(parts))
    lines.append(".end")
    return "\n".join(lines) + "\n"


_GATE_EVAL = {
    "BUF": lambda a, b: a,
    "NOT": lambda a, b: 1 - a,
    "AND": lambda a, b: a & b,
    "OR": lambda a, b: a | b,
    "XOR": lambda a, b: a ^ b,
    "NAND": lambda a, b: 1 - (a & b),
    "NOR": lambda a, b: 1 - (a | b),
    "XNOR": lambda a, b: 1 - (a ^ b),
}


def simulate(c: Circuit, assignment) -> OutputWord:
    """Evaluate one input assignment gate by gate."""
    if len(assignment) != c.input_count:
        raise ValueError(
            f"assignment has {len(assignment)} bits, circuit has {c.input_count} inputs"
        )
    values = dict(zip(c.inputs, (int(bool(v)) for v in assignment)))
    for g in c.gates:
        if g.op == "CONST0":
            values[g.out] = 0
        elif g.op == "CONST1":
            values[g.out] = 1
        else:
            a = values[g.inputs[0]]
            b = values[g.inputs[1]] if len(g.inputs) == 2 else 0
            values[g.out] = _GATE_EVAL[g.op](a, b)
    return OutputWord(tuple(values[w] for w in c.outputs), c.signed)


def bits_to_int(bits, signed: bool) -> int:
    """Integer value of a bit vector, least significant bit first."""
    value = 0
    for i, bit in enumerate(bits):
        value |= (1 if bit else 0) << i
    if signed and bits[-1]:
        value -= 1 << len(bits)
    return value


def int_value(w: OutputWord) -> int:
    return bits_to_int(w.bits, w.signed)


def check_interface(f: Circuit, fp: Circuit) -> None:
    """Require the interface both circuits of an error analysis must share."""
    problems = []
    if f.inputs != fp.inputs:
        problems.append("input names/order differ")
    if f.output_count != fp.output_count:
        problems.append(
            f"output counts differ ({f.output_count} vs {fp.output_count})"
        )
    if f.signed != fp.signed:
        problems.append("signedness differs")
    if problems:
        raise InterfaceMismatchError(
            f"{f.name!r} vs {fp.name!r}: " + "; ".join(problems)
        )


def _batch_values(c: Circuit, idx: np.ndarray) -> np.ndarray:
    """Output integers for a batch of assignment indices (input i = bit i)."""
    if c.output_count > 62:
        raise ValueError("output width too large for the vectorized oracle")
    one = np.uint64(1)
    wires: dict[str, np.ndarray] = {}
    for i, name in enumerate(c.inputs):
        wires[name] = ((idx >> np.uint64(i)) & one).astype(bool)
    for g in c.gates:
        op = g.op
        if op == "CONST0":
            v = np.zeros(idx.shape, dtype=bool)
        elif op == "CONST1":
            v = np.ones(idx.shape, dtype=bool)
        elif op == "BUF":
            v = wires[g.inputs[0]]
        elif op == "NOT":
            v = ~wires[g.inputs[0]]
        else:
            a, b = wires[g.inputs[0]], wires[g.inputs[1]]
            if op == "AND":
                v = a & b
            elif op == "OR":
                v = a | b
            elif op == "XOR":
                v = a ^ b
            elif op == "NAND":
                v = ~(a & b)
            elif op == "NOR":
                v = ~(a | b)
            else:  # XNOR
                v = ~(a ^ b)
        wires[g.out] = v
    values = np.zeros(idx.shape, dtype=np.int64)
    for i, name in enumerate(c.outputs):
        weight = 1 << i
        if c.signed and i == c.output_count - 1:
            weight = -weight
        values += wires[name].astype(np.int64) * weight
    return values


def oracle_metrics(
    f: Circuit, fp: Circuit, limit: int = DEFAULT_ORACLE_LIMIT
) -> tuple[int, Fraction, Fraction]:
    """Exact (wce, mae, error_rate) by enumerating every input assignment.

    Vectorized over blocks of assignments; exact integer accumulation.
    Refuses input counts above ``limit`` (enumeration time doubles per
    extra input).
    """
    check_interface(f, fp)
    n = f.input_count
    if n > limit:
        raise OracleLimitError(
            f"{n} inputs exceed the oracle limit of {limit}"
        )
    total = 1 << n
    wce = 0
    abs_sum = 0
    diff_count = 0
    for start in range(0, total, _ORACLE_CHUNK):
        stop = min(start + _ORACLE_CHUNK, total)
        idx = np.arange(start, stop, dtype=np.uint64)
        diff = np.abs(_batch_values(f, idx) - _batch_values(fp, idx))
        wce = max(wce, int(diff.max()))
        abs_sum += int(diff.sum(dtype=np.int64))
        diff_count += int(np.count_nonzero(diff))
    return wce, Fraction(abs_sum, total), Fraction(diff_count, total)
