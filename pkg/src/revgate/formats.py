"""Text formats for gates and circuits, and the builtin gate descriptors.

GateFile::

    k n
    e_0 e_1 ... e_{k^n - 1}

CircuitFile (wires 0-based, symbols 1-based)::

    k W
    input 0 1
    ancilla 2 1
    gate g0 builtin tau 11 12
    gate g1 table 1 1 0 2
    gate g2 file other.gate
    apply g0 0 2

Descriptors: ``tau U V``, ``swap U V``, ``ctrl W DESC``, ``perm SIGMA``,
``cc M``, ``t J``, ``id N``, ``lift DESC`` (the base change of a gate over
``k - 1`` symbols).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .constructors import make_cc, make_controlled, make_perm_gate, make_swap, make_t, make_tau
from .core import Circuit, Gate, Placement, flatten_circuit, format_word, identity_gate, parse_word
from .errors import CircuitError, EncodingError, RevGateError
from .lattice import base_change

# ---------------------------------------------------------------------------
# gates


def serialize_gate(F: Gate) -> str:
    return f"{F.k} {F.arity}\n" + " ".join(str(int(x)) for x in F.image) + "\n"


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise EncodingError(f"expected an integer for {what}, got {tok!r}") from None


def parse_gate(text: str) -> Gate:
    toks = text.split()
    if len(toks) < 2:
        raise EncodingError("gate file needs a 'k n' header")
    k, n = _int(toks[0], "k"), _int(toks[1], "n")
    if k < 2 or n < 0:
        raise EncodingError(f"bad header: k={k}, n={n}")
    body = [_int(t, "table entry") for t in toks[2:]]
    if len(body) != k**n:
        raise EncodingError(f"expected {k ** n} entries, found {len(body)}")
    try:
        return Gate(k, n, np.array(body, dtype=np.int64))
    except RevGateError as exc:
        raise EncodingError(str(exc)) from None


def read_gate(path) -> Gate:
    try:
        return parse_gate(Path(path).read_text())
    except OSError as exc:
        raise EncodingError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# descriptors


def _positions(text: str) -> tuple:
    text = text.strip()
    if text in ("", "-"):
        return ()
    parts = text.split(",") if "," in text else list(text)
    return tuple(_int(p, "position") - 1 for p in parts)


def parse_descriptor(tokens, k: int) -> Gate:
    """Build a gate from descriptor tokens such as ``["ctrl", "1", "swap", "2", "3"]``."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    tokens = list(tokens)
    gate, rest = _descriptor(tokens, k)
    if rest:
        raise EncodingError(f"trailing tokens in descriptor: {' '.join(rest)}")
    return gate


def _need(tokens, count, name):
    if len(tokens) < count:
        raise EncodingError(f"descriptor '{name}' needs {count} argument(s)")


def _descriptor(tokens: list, k: int):
    if not tokens:
        raise EncodingError("empty gate descriptor")
    head, args = tokens[0], tokens[1:]
    if head in ("tau", "swap"):
        _need(args, 2, head)
        u, v = parse_word(args[0], k), parse_word(args[1], k)
        if head == "tau":
            if len(u) != len(v):
                raise EncodingError("tau needs words of equal length")
            return make_tau(u, v, k).with_label(f"tau {args[0]} {args[1]}"), args[2:]
        return make_swap(u, v, k), args[2:]
    if head == "ctrl":
        _need(args, 2, head)
        w = parse_word(args[0], k)
        inner, rest = _descriptor(args[1:], k)
        return make_controlled(w, inner), rest
    if head == "perm":
        _need(args, 1, head)
        return make_perm_gate(_positions(args[0]), k), args[1:]
    if head == "cc":
        _need(args, 1, head)
        return make_cc(_int(args[0], "m"), k), args[1:]
    if head == "t":
        _need(args, 1, head)
        return make_t(_int(args[0], "j"), k), args[1:]
    if head == "id":
        _need(args, 1, head)
        return identity_gate(k, _int(args[0], "n")), args[1:]
    if head == "lift":
        if k < 3:
            raise EncodingError("lift needs k >= 3")
        inner, rest = _descriptor(args, k - 1)
        return base_change(inner), rest
    raise EncodingError(f"unknown gate descriptor {head!r}")


def compact_descriptor(token: str, k: int) -> Gate:
    """Short generator names used on the command line: ``tau12``, ``t1``, ``cc2``,
    ``swap12``, ``1-swap12``, ``tau11_12``."""
    tok = token.strip()
    if tok.startswith("1-swap"):
        a, b = parse_word(tok[len("1-swap") :], k)
        return make_controlled((0,), make_swap((a,), (b,), k))
    for head in ("tau", "swap"):
        if tok.startswith(head) and tok[len(head) :]:
            body = tok[len(head) :]
            if "_" in body:
                u, v = body.split("_", 1)
            else:
                word = parse_word(body, k)
                if len(word) % 2:
                    raise EncodingError(f"cannot split {token!r} into two words")
                h = len(word) // 2
                u, v = format_word(word[:h], k), format_word(word[h:], k)
            return parse_descriptor([head, u, v], k)
    for head in ("cc", "t", "id"):
        if tok.startswith(head) and tok[len(head) :].isdigit():
            return parse_descriptor([head, tok[len(head) :]], k)
    return parse_descriptor(tok.replace(":", " "), k)


# ---------------------------------------------------------------------------
# circuits


def _gate_body(gate: Gate) -> str:
    if gate.label:
        try:
            if parse_descriptor(gate.label, gate.k) == gate:
                return f"builtin {gate.label}"
        except (RevGateError, ValueError):
            pass
    body = " ".join(str(int(x)) for x in gate.image)
    return f"table {gate.arity} {body}"


def serialize_circuit(C: Circuit) -> str:
    """Flatten and write out; gates are named ``g0, g1, ..`` by first use."""
    flat = flatten_circuit(C)
    lines = [f"{flat.k} {flat.wire_count}", " ".join(["input"] + [str(w) for w in flat.inputs])]
    lines += [f"ancilla {w} {s + 1}" for w, s in flat.ancillas]
    names: dict = {}
    gate_lines, apply_lines = [], []
    bodies: dict = {}
    for st in flat.steps:
        g = st.op
        if id(g) not in bodies:
            bodies[id(g)] = _gate_body(g)
        key = bodies[id(g)]
        if key not in names:
            names[key] = f"g{len(names)}"
            gate_lines.append(f"gate {names[key]} {key}")
        apply_lines.append(" ".join(["apply", names[key]] + [str(w) for w in st.wires]))
    return "\n".join(lines + gate_lines + apply_lines) + "\n"


def parse_circuit(text: str, base_dir=None) -> Circuit:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    if not lines:
        raise EncodingError("empty circuit file")
    lineno, header = lines[0]
    toks = header.split()
    if len(toks) != 2:
        raise EncodingError(f"line {lineno}: header must be 'k W'")
    k, W = _int(toks[0], "k"), _int(toks[1], "W")
    inputs: list = []
    saw_input = False
    ancillas: list = []
    gates: dict = {}
    steps: list = []
    for lineno, ln in lines[1:]:
        toks = ln.split()
        kind, args = toks[0], toks[1:]
        try:
            if kind == "input":
                saw_input = True
                inputs += [_int(a, "wire") for a in args]
            elif kind == "ancilla":
                if len(args) != 2:
                    raise EncodingError("ancilla needs 'wire symbol'")
                sym = parse_word(args[1], k)
                if len(sym) != 1:
                    raise EncodingError(f"ancilla symbol must be a single symbol, got {args[1]!r}")
                ancillas.append((_int(args[0], "wire"), sym[0]))
            elif kind == "gate":
                if len(args) < 2:
                    raise EncodingError("gate needs 'NAME KIND ...'")
                name, how, rest = args[0], args[1], args[2:]
                if name in gates:
                    raise EncodingError(f"gate {name!r} defined twice")
                if how == "builtin":
                    gates[name] = parse_descriptor(rest, k).with_label(" ".join(rest))
                elif how == "table":
                    if not rest:
                        raise EncodingError("table gate needs its arity")
                    gates[name] = parse_gate(f"{k} {' '.join(rest)}")
                elif how == "file":
                    if len(rest) != 1:
                        raise EncodingError("file gate needs one path")
                    path = Path(rest[0])
                    if base_dir is not None and not path.is_absolute():
                        path = Path(base_dir) / path
                    gates[name] = read_gate(path)
                    if gates[name].k != k:
                        raise EncodingError(f"gate file {rest[0]} is over {gates[name].k} symbols, circuit over {k}")
                else:
                    raise EncodingError(f"unknown gate kind {how!r}")
            elif kind == "apply":
                if not args:
                    raise EncodingError("apply needs a gate name")
                if args[0] not in gates:
                    raise EncodingError(f"unknown gate {args[0]!r}")
                steps.append(Placement(gates[args[0]], tuple(_int(a, "wire") for a in args[1:])))
            else:
                raise EncodingError(f"unknown directive {kind!r}")
        except RevGateError as exc:
            raise EncodingError(f"line {lineno}: {exc}") from None
    if not saw_input:
        raise EncodingError("circuit file has no 'input' line")
    try:
        return Circuit(k, W, tuple(inputs), tuple(ancillas), tuple(steps))
    except CircuitError as exc:
        raise EncodingError(str(exc)) from None


def read_circuit(path) -> Circuit:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise EncodingError(f"cannot read {path}: {exc.strerror}") from None
    return parse_circuit(text, base_dir=Path(path).parent)

