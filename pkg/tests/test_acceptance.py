"""End-to-end acceptance checks, one per criterion.

Run with ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``)
to see one PASS/FAIL line per criterion; the lines are also repeated in the
pytest terminal summary.
"""

from __future__ import annotations

import sys
import time
from itertools import permutations, product
from math import factorial, gcd, prod
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import gen  # noqa: E402
import oracles  # noqa: E402
from conftest import DEFAULT_SEED  # noqa: E402
from revgate.analysis import (  # noqa: E402
    Partition,
    classify_above_cons,
    is_mod_preserving,
    is_mod_respecting,
    m_invariant,
)
from revgate.constructors import make_cc, make_tau  # noqa: E402
from revgate.core import Gate, all_words, circuit_extract_gate, gate_tensor  # noqa: E402
from revgate.formats import parse_circuit, parse_gate, serialize_circuit, serialize_gate  # noqa: E402
from revgate.group import PlacementGroup, StabilizerChain, closure_bfs, group_membership  # noqa: E402
from revgate.lattice import base_change, lift_circuit, nonfingen_certificate  # noqa: E402
from revgate.synth import synth_all, synth_cc_from_gate, synth_cons, synth_cons_lambda  # noqa: E402

RESULTS: dict = {}


def _all_perms_9() -> np.ndarray:
    return np.array(list(permutations(range(9))), dtype=np.int64)


def _class_preserving(perms: np.ndarray, key: np.ndarray) -> np.ndarray:
    return perms[np.all(key[perms] == key, axis=1)]


def _spot_check(circuits_and_targets):
    """Dict-based re-simulation of a few circuits, independent of the batch simulator."""
    for C, F in circuits_and_targets:
        assert oracles.extract(C) == oracles.gate_dict(F)


def criterion_1(rng):
    gates = [Gate(3, 1, np.array(p)) for p in permutations(range(3))]
    assert len(gates) == 6
    gates += [gen.random_gate(rng, 3, 2) for _ in range(200)]
    done = []
    for F in gates:
        C = synth_all(F)
        assert circuit_extract_gate(C) == F
        done.append((C, F))
    _spot_check(done[:6] + done[6:9])
    return f"{len(gates)} gates (6 arity-1, 200 arity-2) synthesized over ALL and verified"


def criterion_2(rng):
    words = all_words(3, 2)
    key = np.array([oracles.index(sorted(w.tolist()), 3) for w in words])
    cons = _class_preserving(_all_perms_9(), key)
    sizes = sorted(np.unique(key, return_counts=True)[1].tolist())
    assert sizes == [1, 1, 1, 2, 2, 2]
    expected = prod(factorial(s) for s in sizes)
    assert len(cons) == 8 == expected
    done = []
    for p in cons:
        F = Gate(3, 2, p)
        C = synth_cons(F)
        assert circuit_extract_gate(C) == F
        done.append((C, F))
    _spot_check(done)
    return "all 8 conservative arity-2 gates synthesized over CONS and verified"


def criterion_3(rng):
    lam = Partition.marked_split(3)
    words = all_words(3, 2)
    blk = np.array(lam.block_of)
    b = np.sort(blk[words], axis=1)
    key = b[:, 0] * 2 + b[:, 1]
    gates = _class_preserving(_all_perms_9(), key)
    assert len(gates) == 576  # 4! * 4! * 1! over the block classes {AA, AB, BB}
    done = []
    for p in gates:
        F = Gate(3, 2, p)
        C = synth_cons_lambda(F, lam)
        assert circuit_extract_gate(C) == F
        done.append((C, F))
    _spot_check(done[:: len(done) // 8])
    return f"all {len(gates)} lambda-conservative arity-2 gates for {lam} synthesized and verified"


def criterion_4(rng):
    for m in range(1, 7):
        cc = make_cc(m, 3)
        assert m_invariant(cc) == m == oracles.m_of(oracles.gate_dict(cc), 3)
    assert classify_above_cons([make_cc(4, 3), make_cc(6, 3)]) == 2
    assert classify_above_cons([make_tau((0,), (2,), 3)]) == 1
    return "m(CC_m) = m for m = 1..6; classify {CC_4, CC_6} = 2; classify {tau_1,3} = 1"


def criterion_5(rng):
    checked = 0
    for _ in range(500):
        n = int(rng.integers(1, 3))
        F = gen.random_gate(rng, 3, n)
        d = oracles.gate_dict(F)
        for m in range(1, 7):
            r, p = is_mod_respecting(F, m), is_mod_preserving(F, m)
            assert r == p
            assert r == oracles.respects(d, 3, m) and p == oracles.preserves(d, 3, m)
            checked += 1
    t = make_tau((0,), (1,), 2)
    assert is_mod_respecting(t, 2) and not is_mod_preserving(t, 2)
    return f"{checked} (gate, m) pairs agree at k=3; k=2 control tau_0,1 respecting but not preserving"


def criterion_6(rng):
    pairs = 0
    while pairs < 120:
        a, b = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        if rng.random() < 0.5:
            F = make_cc(1, 3) if a == 2 else make_tau((0,), (2,), 3)
        else:
            F = gen.random_gate(rng, 3, a)
        G = gen.random_gate(rng, 3, b)
        T = gate_tensor(F, G)
        assert T.arity <= 4
        want = gcd(m_invariant(F), m_invariant(G))
        assert m_invariant(T) == want == oracles.m_of(oracles.gate_dict(T), 3)
        pairs += 1
    return f"m(F (x) G) = gcd(m(F), m(G)) on {pairs} seeded pairs"


def criterion_7(rng):
    C = synth_cc_from_gate(make_cc(2, 3))
    assert C.arity == 3 and circuit_extract_gate(C) == make_cc(2, 3)
    C2 = synth_cc_from_gate(gate_tensor(make_cc(2, 3), make_cc(3, 3)))
    assert C2.arity == 2 and circuit_extract_gate(C2) == make_cc(1, 3)
    _spot_check([(C2, make_cc(1, 3))])
    return "CC_2 -> CC_2 and CC_2 (x) CC_3 -> CC_1, ancillas restored on every input"


def criterion_8(rng):
    for n in range(0, 11):
        rep = nonfingen_certificate(n, 3)
        assert rep.designated == 2 ** (n + 1)
        assert rep.all_even and rep.top_count == 1, rep.summary()
    return "n = 0..10: every T_0..T_n placement flips an even count, T_{n+1} flips exactly 1"


def criterion_9(rng):
    t12, t23 = make_tau((0,), (1,), 3), make_tau((1,), (2,), 3)
    orders = []
    for W in (1, 2):
        G = PlacementGroup.from_gates(3, W, [t12, t23])
        elements = closure_bfs(G)
        chain = StabilizerChain(G)
        assert len(elements) == chain.order()
        orders.append(len(elements))
        samples = [np.array(e) for e in list(elements)[:30]]
        samples += [rng.permutation(3**W) for _ in range(60)]
        for p in samples:
            ok, word = group_membership(G, p)
            assert ok == (tuple(p.tolist()) in elements)
            if ok:
                assert np.array_equal(word.evaluate(), p)
    assert orders == [6, 72]
    return "closure orders 6 and 72 equal the stabilizer-chain orders; membership agrees with BFS"


def criterion_10(rng):
    circuits = gen.extractable_circuits(rng, 60)
    for C in circuits:
        assert circuit_extract_gate(lift_circuit(C)) == base_change(circuit_extract_gate(C))
    images = {}
    pairs = 0
    while pairs < 250:
        k, n = int(rng.integers(2, 4)), int(rng.integers(1, 3))
        F, G = gen.random_gate(rng, k, n), gen.random_gate(rng, k, n)
        assert (base_change(F) == base_change(G)) == (F == G)
        images.setdefault(base_change(F), F)
        assert images[base_change(F)] == F
        pairs += 1
    return f"{len(circuits)} circuits commute with lifting; base change injective on {pairs} pairs"


def criterion_11(rng):
    for _ in range(1000):
        k, n = int(rng.integers(2, 6)), int(rng.integers(0, 4))
        if k**n > 200:
            n = 1
        text = serialize_gate(gen.random_gate(rng, k, n))
        assert serialize_gate(parse_gate(text)) == text
    circuits = gen.extractable_circuits(rng, 150)
    circuits += [synth_all(gen.random_gate(rng, 3, 2)) for _ in range(50)]
    for C in circuits:
        text = serialize_circuit(C)
        assert serialize_circuit(parse_circuit(text)) == text
    return f"1000 gates and {len(circuits)} circuits round-trip byte-identically"


CRITERIA = [
    (1, "synthesizer soundness (ALL)", criterion_1, 60),
    (2, "synthesizer soundness (CONS)", criterion_2, 10),
    (3, "synthesizer soundness (lambda)", criterion_3, 60),
    (4, "mod classification", criterion_4, 5),
    (5, "respecting iff preserving", criterion_5, 30),
    (6, "tensor gcd", criterion_6, 60),
    (7, "CC_m from a mod preserver", criterion_7, 300),
    (8, "non-finite-generation certificate", criterion_8, 60),
    (9, "group oracle agreement", criterion_9, 30),
    (10, "base-change transfer", criterion_10, 60),
    (11, "format round-trip", criterion_11, 10),
]


def run_criterion(number, name, fn, budget, seed):
    rng = np.random.default_rng(seed + number)
    t0 = time.perf_counter()
    try:
        detail = fn(rng)
        elapsed = time.perf_counter() - t0
        ok = elapsed < budget
        if not ok:
            detail = f"exceeded the {budget} s budget"
    except AssertionError as exc:
        elapsed, ok, detail = time.perf_counter() - t0, False, f"assertion failed: {exc}"
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} ({name}): {detail} [{elapsed:.2f} s / {budget} s]"
    RESULTS[number] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("number,name,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, name, fn, budget, seed):
    ok, line = run_criterion(number, name, fn, budget, seed)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c, DEFAULT_SEED)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
