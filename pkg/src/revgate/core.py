"""Alphabet, word encoding, dense gates, gate algebra and the circuit model.

Symbols are stored 0-based (``0 .. k-1``).  Every human-facing form (file
formats, diagnostics, descriptors) uses 1-based symbols ``1 .. k``.

Words are plain tuples of ints.  A word ``(a_1, ..., a_n)`` is encoded big-endian
in radix ``k``: ``index = sum(a_i * k**(n-i))``, so lexicographic order of words
equals numeric order of indices.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    AncillaViolation,
    CircuitError,
    EncodingError,
    GateMismatchError,
    TableSizeError,
)

Word = tuple  # tuple[int, ...] of internal symbols

DEFAULT_TABLE_CAP = 5_000_000
# nested circuits with at most this many input assignments are simulated via
# their extracted table
COMPILE_ROWS = 8192


def table_cap() -> int:
    """Largest permitted dense table size; ``REVGATE_TABLE_CAP`` overrides."""
    raw = os.environ.get("REVGATE_TABLE_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise TableSizeError(f"REVGATE_TABLE_CAP is not an integer: {raw!r}")
    return DEFAULT_TABLE_CAP


def check_table_size(k: int, n: int) -> int:
    """Return ``k**n`` or raise :class:`TableSizeError` when it is over the cap."""
    size = k**n
    cap = table_cap()
    if size > cap:
        raise TableSizeError(f"table of size {k}^{n} = {size} exceeds cap {cap}")
    return size


# ---------------------------------------------------------------------------
# Alphabet and words


@dataclass(frozen=True)
class Alphabet:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or self.k < 2:
            raise EncodingError(f"alphabet size must be an integer >= 2, got {self.k!r}")

    @property
    def symbols(self) -> range:
        return range(self.k)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.k)

    def format(self, word: Sequence[int]) -> str:
        return format_word(word, self.k)


def check_word(word: Sequence[int], k: int, n: int | None = None) -> Word:
    word = tuple(int(s) for s in word)
    if n is not None and len(word) != n:
        raise EncodingError(f"expected a word of length {n}, got {len(word)}")
    for s in word:
        if not 0 <= s < k:
            raise EncodingError(f"symbol {s + 1} is outside the alphabet 1..{k}")
    return word


def encode(word: Sequence[int], k: int) -> int:
    index = 0
    for s in check_word(word, k):
        index = index * k + s
    return index


def decode(index: int, k: int, n: int) -> Word:
    if not 0 <= index < k**n:
        raise EncodingError(f"index {index} is outside 0..{k}^{n}-1")
    out = [0] * n
    for i in range(n - 1, -1, -1):
        index, out[i] = divmod(index, k)
    return tuple(out)


def word_codec(k: int, n: int, x):
    """Encode a word (sequence) or decode an index (int) for fixed ``(k, n)``."""
    if k < 2 or n < 0:
        raise EncodingError(f"bad codec parameters k={k}, n={n}")
    if isinstance(x, (int, np.integer)):
        return decode(int(x), k, n)
    return encode(check_word(x, k, n), k)


@lru_cache(maxsize=64)
def all_words(k: int, n: int) -> np.ndarray:
    """All ``k**n`` words as rows of a read-only array, in index order."""
    size = check_table_size(k, n)
    dtype = np.uint8 if k <= 256 else np.int32
    out = np.empty((size, n), dtype=dtype)
    idx = np.arange(size, dtype=np.int64)
    for j in range(n - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, k)
    out.setflags(write=False)
    return out


def radix_powers(k: int, n: int) -> np.ndarray:
    return k ** np.arange(n - 1, -1, -1, dtype=np.int64)


def parse_word(text: str, k: int) -> Word:
    """Parse a word written in 1-based symbols.

    Digits are contiguous for ``k <= 9`` (``"123"``); otherwise symbols are
    comma separated (``"1,10,3"``).  ``"-"`` is the empty word.
    """
    text = text.strip()
    if text in ("-", ""):
        return ()
    if "," in text or k > 9:
        parts = [p for p in text.split(",") if p != ""]
    else:
        parts = list(text)
    try:
        symbols = [int(p) - 1 for p in parts]
    except ValueError:
        raise EncodingError(f"cannot parse word {text!r}")
    return check_word(symbols, k)


def format_word(word: Sequence[int], k: int) -> str:
    if len(word) == 0:
        return "-"
    if k <= 9:
        return "".join(str(s + 1) for s in word)
    return ",".join(str(s + 1) for s in word)


# ---------------------------------------------------------------------------
# Gates


@dataclass(frozen=True, eq=False)
class Gate:
    """A bijection ``A^n -> A^n`` stored as a dense image table.

    ``image[i]`` is the encoded output for encoded input ``i``.  ``label`` is an
    optional descriptor used by the text formats; it does not take part in
    equality.
    """

    k: int
    arity: int
    image: np.ndarray
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 2:
            raise EncodingError(f"alphabet size must be >= 2, got {self.k}")
        if self.arity < 0:
            raise GateMismatchError(f"negative arity {self.arity}")
        size = check_table_size(self.k, self.arity)
        image = np.asarray(self.image, dtype=np.int64)
        if image.shape != (size,):
            raise GateMismatchError(f"image must have {size} entries, got shape {image.shape}")
        if size and (image.min() < 0 or image.max() >= size):
            raise GateMismatchError("image entries out of range")
        if size and not np.all(np.bincount(image, minlength=size) == 1):
            raise GateMismatchError("image is not a permutation")
        if image.flags.writeable:
            image = image.copy()
            image.setflags(write=False)
        object.__setattr__(self, "image", image)

    @property
    def size(self) -> int:
        return self.image.shape[0]

    def __call__(self, word: Sequence[int]) -> Word:
        return decode(int(self.image[encode(check_word(word, self.k, self.arity), self.k)]), self.k, self.arity)

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        return self.k == other.k and self.arity == other.arity and np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash((self.k, self.arity, self.image.tobytes()))

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"Gate(k={self.k}, arity={self.arity}{tag})"

    def __matmul__(self, other: Gate) -> Gate:
        return gate_compose(self, other)

    def inverse(self) -> Gate:
        return gate_inverse(self)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(self.size)))

    def fixed_points(self) -> np.ndarray:
        return np.flatnonzero(self.image == np.arange(self.size))

    def cycles(self) -> list[list[int]]:
        """Non-trivial cycles, each started at its smallest index, sorted."""
        seen = np.zeros(self.size, dtype=bool)
        image = self.image
        out = []
        for x in range(self.size):
            if seen[x] or image[x] == x:
                continue
            cyc = [x]
            seen[x] = True
            y = int(image[x])
            while y != x:
                seen[y] = True
                cyc.append(y)
                y = int(image[y])
            out.append(cyc)
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def with_label(self, label: str | None) -> Gate:
        return Gate(self.k, self.arity, self.image, label)


def identity_gate(k: int, n: int) -> Gate:
    return Gate(k, n, np.arange(check_table_size(k, n)), label=f"id {n}")


def _same_alphabet(F: Gate, G: Gate):
    if F.k != G.k:
        raise GateMismatchError(f"alphabet mismatch: {F.k} vs {G.k}")


def gate_compose(F: Gate, G: Gate) -> Gate:
    """``F o G``: apply ``G`` first, then ``F``."""
    _same_alphabet(F, G)
    if F.arity != G.arity:
        raise GateMismatchError(f"arity mismatch: {F.arity} vs {G.arity}")
    return Gate(F.k, F.arity, F.image[G.image])


def gate_tensor(F: Gate, G: Gate) -> Gate:
    """``F (x) G``: ``F`` on the leading block of wires, ``G`` on the rest."""
    _same_alphabet(F, G)
    check_table_size(F.k, F.arity + G.arity)
    image = F.image[:, None] * (F.k**G.arity) + G.image[None, :]
    return Gate(F.k, F.arity + G.arity, image.ravel())


def gate_inverse(F: Gate) -> Gate:
    inv = np.empty_like(F.image)
    inv[F.image] = np.arange(F.size)
    return Gate(F.k, F.arity, inv)


def gate_equal(F: Gate, G: Gate) -> bool:
    return F == G


def gate_power(F: Gate, e: int) -> Gate:
    """``F`` composed with itself ``e`` times (negative ``e`` uses the inverse)."""
    if e < 0:
        return gate_power(gate_inverse(F), -e)
    out = np.arange(F.size)
    base = F.image
    while e:
        if e & 1:
            out = base[out]
        base = base[base]
        e >>= 1
    return Gate(F.k, F.arity, out)


def tensor_all(gates: Iterable[Gate], k: int) -> Gate:
    out = identity_gate(k, 0)
    for g in gates:
        out = gate_tensor(out, g)
    return out


# ---------------------------------------------------------------------------
# Circuits

Op = Union[Gate, "Circuit"]


def op_arity(op) -> int:
    return op.arity if isinstance(op, Gate) else len(op.inputs)


@dataclass(frozen=True)
class Placement:
    """One step: ``op`` applied to ``wires`` (ordered, distinct)."""

    op: Op
    wires: tuple

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))


@dataclass(frozen=True)
class Circuit:
    """Wires are ``0 .. wire_count-1``; ``inputs`` and ancilla wires partition them.

    ``ancillas`` holds ``(wire, initial_symbol)`` pairs.  A nested circuit used
    as a step receives its inputs from the placement wires; its own ancillas live
    on fresh wires of the parent for the duration of that step.
    """

    k: int
    wire_count: int
    inputs: tuple
    ancillas: tuple = ()
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(int(w) for w in self.inputs))
        object.__setattr__(self, "ancillas", tuple((int(w), int(s)) for w, s in self.ancillas))
        object.__setattr__(self, "steps", tuple(self.steps))
        W = self.wire_count
        anc = [w for w, _ in self.ancillas]
        if sorted(self.inputs + tuple(anc)) != list(range(W)):
            raise CircuitError("input and ancilla wires must partition 0..W-1")
        for w, s in self.ancillas:
            if not 0 <= s < self.k:
                raise CircuitError(f"ancilla symbol {s + 1} on wire {w} is outside 1..{self.k}")
        for i, step in enumerate(self.steps):
            if not isinstance(step, Placement):
                raise CircuitError(f"step {i} is not a Placement")
            if step.op.k != self.k:
                raise CircuitError(f"step {i} has alphabet {step.op.k}, circuit has {self.k}")
            if len(step.wires) != op_arity(step.op):
                raise CircuitError(f"step {i} places arity {op_arity(step.op)} on {len(step.wires)} wires")
            if len(set(step.wires)) != len(step.wires) or any(not 0 <= w < W for w in step.wires):
                raise CircuitError(f"step {i} has repeated or out-of-range wires {step.wires}")

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def leaf_count(self) -> int:
        return sum(1 if isinstance(s.op, Gate) else s.op.leaf_count() for s in self.steps)

    @cached_property
    def compiled(self) -> Gate | None:
        """The extracted gate when small enough and valid; ``None`` otherwise."""
        if self.k ** len(self.inputs) > COMPILE_ROWS:
            return None
        try:
            return circuit_extract_gate(self)
        except AncillaViolation:
            return None


class CircuitBuilder:
    """Mutable helper used by the synthesizers to assemble a :class:`Circuit`."""

    def __init__(self, k: int, n_inputs: int):
        self.k = k
        self.wire_count = n_inputs
        self.inputs = list(range(n_inputs))
        self.ancillas: list[tuple[int, int]] = []
        self.steps: list[Placement] = []

    def ancilla(self, symbol: int) -> int:
        w = self.wire_count
        self.wire_count += 1
        self.ancillas.append((w, symbol))
        return w

    def apply(self, op, wires):
        self.steps.append(Placement(op, tuple(wires)))
        return self

    def extend(self, placements):
        self.steps.extend(placements)
        return self

    def build(self) -> Circuit:
        return Circuit(self.k, self.wire_count, tuple(self.inputs), tuple(self.ancillas), tuple(self.steps))


def apply_gate_columns(state: np.ndarray, wires: Sequence[int], gate: Gate):
    """Apply ``gate`` in place to the given columns of a batch of states."""
    a = gate.arity
    if a == 0:
        return
    k = gate.k
    cols = list(wires)
    idx = state[:, cols].astype(np.int64) @ radix_powers(k, a)
    out = gate.image[idx]
    for j in range(a - 1, -1, -1):
        out, state[:, cols[j]] = np.divmod(out, k)


def _run(circuit: Circuit, state: np.ndarray, failures: list):
    """Run ``circuit`` on ``state`` (columns = circuit wires)."""
    for step in circuit.steps:
        op = step.op
        if isinstance(op, Gate):
            apply_gate_columns(state, step.wires, op)
            continue
        compiled = op.compiled
        if compiled is not None:
            apply_gate_columns(state, step.wires, compiled)
            continue
        sub = np.empty((state.shape[0], op.wire_count), dtype=state.dtype)
        sub[:, list(op.inputs)] = state[:, list(step.wires)]
        for w, s in op.ancillas:
            sub[:, w] = s
        _run(op, sub, failures)
        for w, s in op.ancillas:
            bad = sub[:, w] != s
            if bad.any():
                failures.append(bad)
        state[:, list(step.wires)] = sub[:, list(op.inputs)]


def _initial_state(circuit: Circuit, assignments: np.ndarray) -> np.ndarray:
    state = np.empty((assignments.shape[0], circuit.wire_count), dtype=np.int64)
    if circuit.inputs:
        state[:, list(circuit.inputs)] = assignments
    for w, s in circuit.ancillas:
        state[:, w] = s
    return state


def circuit_simulate(circuit: Circuit, assignment: Sequence[int]) -> tuple[Word, Word]:
    """Run one input assignment; return (input-wire values, final ancilla values)."""
    assignment = check_word(assignment, circuit.k, len(circuit.inputs))
    state = _initial_state(circuit, np.array([assignment], dtype=np.int64).reshape(1, -1))
    _run(circuit, state, [])
    row = state[0]
    return tuple(int(row[w]) for w in circuit.inputs), tuple(int(row[w]) for w, _ in circuit.ancillas)


def circuit_run_batch(circuit: Circuit, assignments: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised simulation; returns (final state, row mask of ancilla failures)."""
    state = _initial_state(circuit, np.asarray(assignments, dtype=np.int64).reshape(-1, len(circuit.inputs)))
    failures: list = []
    _run(circuit, state, failures)
    bad = np.zeros(state.shape[0], dtype=bool)
    for mask in failures:
        bad |= mask
    for w, s in circuit.ancillas:
        bad |= state[:, w] != s
    return state, bad


def circuit_extract_gate(circuit: Circuit) -> Gate:
    """The gate realised on the input wires; requires ancilla restoration on all inputs."""
    n = len(circuit.inputs)
    words = all_words(circuit.k, n)
    state, bad = circuit_run_batch(circuit, words)
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        witness = tuple(int(s) for s in words[row])
        wire = expected = found = None
        for w, s in circuit.ancillas:
            if state[row, w] != s:
                wire, expected, found = w, s, int(state[row, w])
                break
        where = (
            f"ancilla wire {wire} ends as {found + 1}, expected {expected + 1}"
            if wire is not None
            else "a nested ancilla is not restored"
        )
        raise AncillaViolation(
            f"input {format_word(witness, circuit.k)}: {where}",
            witness=witness,
            wire=wire,
            expected=expected,
            found=found,
        )
    out = state[:, list(circuit.inputs)] @ radix_powers(circuit.k, n) if n else np.zeros(1, dtype=np.int64)
    return Gate(circuit.k, n, out)


def circuit_full_gate(circuit: Circuit) -> Gate:
    """The permutation of all ``k**W`` wire states, ancillas treated as inputs."""
    flat = flatten_circuit(circuit)
    open_circuit = Circuit(flat.k, flat.wire_count, tuple(range(flat.wire_count)), (), flat.steps)
    return circuit_extract_gate(open_circuit)


def flatten_circuit(circuit: Circuit) -> Circuit:
    """Inline every nested circuit; nested ancillas get fresh wires."""
    steps: list[Placement] = []
    ancillas = list(circuit.ancillas)
    counter = [circuit.wire_count]

    def emit(c: Circuit, wire_map: dict):
        for step in c.steps:
            mapped = tuple(wire_map[w] for w in step.wires)
            if isinstance(step.op, Gate):
                steps.append(Placement(step.op, mapped))
                continue
            sub = step.op
            sub_map = dict(zip(sub.inputs, mapped))
            for w, s in sub.ancillas:
                sub_map[w] = counter[0]
                ancillas.append((counter[0], s))
                counter[0] += 1
            emit(sub, sub_map)

    emit(circuit, {w: w for w in range(circuit.wire_count)})
    return Circuit(circuit.k, counter[0], circuit.inputs, tuple(ancillas), tuple(steps))


def single_gate_circuit(gate: Gate) -> Circuit:
    n = gate.arity
    return Circuit(gate.k, n, tuple(range(n)), (), (Placement(gate, tuple(range(n))),))
