from __future__ import annotations

from itertools import combinations, product

import numpy as np
import pytest

import oracles
from revgate.constructors import make_controlled, make_swap, make_t, make_tau
from revgate.analysis import Partition, is_conservative_lambda
from revgate.core import Circuit, Gate, Placement, circuit_extract_gate, gate_tensor, identity_gate, parse_word
from revgate.errors import BudgetExceeded, EncodingError
from revgate.lattice import (
    act_sigma,
    base_change,
    compose_symbol_perms,
    designated_inputs,
    flip_mask,
    lift_circuit,
    nonfingen_certificate,
)
from revgate.synth import synth_controlled_tau


def W(text, k=3):
    return parse_word(text, k)


def test_act_examples():
    t12 = make_tau((0,), (1,), 3)
    assert act_sigma(t12, (0, 1, 2)) == t12
    assert act_sigma(t12, (2, 1, 0)) == make_tau((1,), (2,), 3)
    with pytest.raises(EncodingError):
        act_sigma(t12, (0, 0, 1))


def test_act_is_an_action(rng):
    for _ in range(100):
        F = Gate(3, 2, rng.permutation(9))
        s, t = tuple(rng.permutation(3).tolist()), tuple(rng.permutation(3).tolist())
        s_inv = tuple(int(x) for x in np.argsort(s))
        assert act_sigma(act_sigma(F, s), s_inv) == F
        assert act_sigma(act_sigma(F, s), t) == act_sigma(F, compose_symbol_perms(t, s))


def test_act_matches_oracle(rng):
    F = Gate(3, 2, rng.permutation(9))
    s = (1, 2, 0)
    d = oracles.gate_dict(F)
    got = oracles.gate_dict(act_sigma(F, s))
    for w, img in d.items():
        assert got[tuple(s[x] for x in w)] == tuple(s[x] for x in img)


def test_base_change_examples():
    assert base_change(identity_gate(2, 2)).is_identity()
    P = base_change(make_tau((0,), (1,), 2))
    assert P.k == 3 and P == make_tau((0,), (1,), 3)


def test_base_change_injective(rng):
    seen = {}
    for _ in range(200):
        k, n = int(rng.integers(2, 4)), int(rng.integers(1, 3))
        F = Gate(k, n, rng.permutation(k**n))
        P = base_change(F)
        assert seen.setdefault(P, F) == F
        d = oracles.gate_dict(P)
        for w, img in d.items():
            if k in w:
                assert img == w


def test_lift_circuits():
    empty = Circuit(3, 1, (0,), (), ())
    assert lift_circuit(empty).steps == () and lift_circuit(empty).k == 4
    C = synth_controlled_tau(W("11"), 1, 2, 3)
    assert C.arity == 3 and C.ancillas
    assert circuit_extract_gate(lift_circuit(C)) == base_change(circuit_extract_gate(C))
    fred = make_controlled((1,), make_swap((0,), (1,), 2))
    C = Circuit(2, 3, (0, 1, 2), (), (Placement(fred, (0, 1, 2)),))
    assert circuit_extract_gate(lift_circuit(C)) == base_change(fred)


def test_designated_inputs_shape():
    rows = designated_inputs(2)
    assert rows.shape == (8, 4)
    assert set(rows[:, :3].ravel().tolist()) == {0, 1} and set(rows[:, 3].tolist()) == {1}


def test_nonfingen_n1_by_hand():
    # wires a1, a2, b; rows with b = 2 and a_i in {1, 2}
    for i, controls in [(0, ()), (1, (0,)), (1, (1,))]:
        assert flip_mask([(i, controls)], 1).sum() in (0, 2, 4)
    assert flip_mask([(2, (0, 1))], 1).sum() == 1
    rep = nonfingen_certificate(1)
    assert rep.all_even and rep.top_count == 1


def test_nonfingen_n3():
    rep = nonfingen_certificate(3)
    assert rep.summary() == "all T_i even; T_4 count 1; UNREACHABLE_PARITY"
    assert len(rep.counts) == 1 + 4 + 6 + 4  # subsets of the 4 a-wires of size <= 3


def test_nonfingen_oracle_n2():
    """Brute force flips with a dict-based T_i on all designated inputs."""
    n = 2
    for i in range(n + 2):
        t = oracles.gate_dict(make_t(i, 3))
        for controls in combinations(range(n + 1), i):
            flips = 0
            for bits in product((0, 1), repeat=n + 1):
                a = [0 if b else 1 for b in bits]
                out = t[tuple(a[c] for c in controls) + (1,)]
                flips += out[-1] != 1
            if i <= n:
                assert flips % 2 == 0
            else:
                assert flips == 1


def test_nonfingen_budget():
    with pytest.raises(BudgetExceeded):
        nonfingen_certificate(20)


def test_literal_lift_only_agrees_on_old_alphabet():
    t = make_tau((0,), (1,), 2)
    C = Circuit(2, 2, (0, 1), (), (Placement(t, (0,)),))
    literal = circuit_extract_gate(lift_circuit(C, widen=False))
    wide = circuit_extract_gate(lift_circuit(C))
    P = base_change(circuit_extract_gate(C))
    assert wide == P
    assert literal != P
    assert literal((0, 2)) == (1, 2) and P((0, 2)) == (0, 2)
    for w in product(range(2), repeat=2):
        assert literal(w) == P(w)


def test_base_change_homomorphism(rng):
    for _ in range(30):
        k = int(rng.integers(2, 4))
        F, G = Gate(k, 2, rng.permutation(k**2)), Gate(k, 2, rng.permutation(k**2))
        H = Gate(k, 1, rng.permutation(k))
        assert base_change(F @ G) == base_change(F) @ base_change(G)
        assert circuit_extract_gate(
            lift_circuit(Circuit(k, 3, (0, 1, 2), (), (Placement(F, (0, 1)), Placement(H, (2,)))))
        ) == base_change(gate_tensor(F, H))


def test_action_commutes_with_operations(rng):
    lam = Partition.marked_split(3)
    for _ in range(30):
        F, G = Gate(3, 2, rng.permutation(9)), Gate(3, 2, rng.permutation(9))
        s = tuple(rng.permutation(3).tolist())
        assert act_sigma(F @ G, s) == act_sigma(F, s) @ act_sigma(G, s)
        assert act_sigma(gate_tensor(F, G), s) == gate_tensor(act_sigma(F, s), act_sigma(G, s))
        assert is_conservative_lambda(F, lam) == is_conservative_lambda(act_sigma(F, s), lam.relabel(s))


def test_parity_closed_under_composition(rng):
    n = 4
    for _ in range(50):
        seq = []
        for _ in range(int(rng.integers(1, 6))):
            i = int(rng.integers(0, n + 1))
            seq.append((i, tuple(sorted(rng.choice(n + 1, size=i, replace=False).tolist()))))
        assert flip_mask(seq, n).sum() % 2 == 0


def test_base_change_does_not_split_over_tensor():
    t = make_tau((0,), (1,), 2)
    lhs, rhs = base_change(gate_tensor(t, t)), gate_tensor(base_change(t), base_change(t))
    assert lhs((0, 2)) == (0, 2) and rhs((0, 2)) == (1, 2)
    assert lhs != rhs
