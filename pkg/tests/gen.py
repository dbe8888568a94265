"""Seeded generators of random gates and circuits for the tests."""

from __future__ import annotations

from revgate.constructors import make_tau
from revgate.core import CircuitBuilder, Gate, circuit_extract_gate
from revgate.errors import AncillaViolation


def random_gate(rng, k, n) -> Gate:
    return Gate(k, n, rng.permutation(k**n))


def random_circuit(rng, k, n_inputs, n_ancillas=0, steps=5, max_arity=2):
    b = CircuitBuilder(k, n_inputs)
    for _ in range(n_ancillas):
        b.ancilla(int(rng.integers(k)))
    W = b.wire_count
    for _ in range(steps):
        a = int(rng.integers(1, min(max_arity, W) + 1))
        wires = rng.choice(W, size=a, replace=False).tolist()
        if rng.random() < 0.5:
            g = random_gate(rng, k, a)
        else:
            u = tuple(int(x) for x in rng.integers(k, size=a))
            v = tuple(int(x) for x in rng.integers(k, size=a))
            g = make_tau(u, v, k)
        b.apply(g, wires)
    return b.build()


def extractable_circuits(rng, count, ks=(2, 3), max_inputs=3):
    """Random circuits (some with ancillas) whose ancillas are restored."""
    out = []
    while len(out) < count:
        k = int(rng.choice(ks))
        n = int(rng.integers(1, max_inputs + 1))
        C = random_circuit(rng, k, n, n_ancillas=int(rng.integers(0, 2)), steps=int(rng.integers(1, 7)))
        if C.ancillas and rng.random() < 0.7:
            # mirror the circuit so ancillas come back
            inv = [type(s)(s.op.inverse(), s.wires) for s in reversed(C.steps)]
            C = type(C)(C.k, C.wire_count, C.inputs, C.ancillas, C.steps + tuple(inv))
        try:
            circuit_extract_gate(C)
        except AncillaViolation:
            continue
        out.append(C)
    return out
