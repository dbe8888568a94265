from __future__ import annotations

from itertools import permutations

import pytest

import oracles
from revgate.analysis import Partition, is_conservative, is_conservative_lambda, is_mod_preserving, is_mod_respecting
from revgate.constructors import (
    make_cc,
    make_controlled,
    make_perm_gate,
    make_swap,
    make_t,
    make_tau,
    wire_permutation_of,
)
from revgate.core import CircuitBuilder, circuit_extract_gate, identity_gate, parse_word
from revgate.errors import EncodingError


def W(text, k=3):
    return parse_word(text, k)


def test_tau_examples():
    t = make_tau(W("12"), W("13"), 3)
    assert t(W("12")) == W("13") and t(W("13")) == W("12") and t(W("11")) == W("11")
    assert make_tau(W("12"), W("12"), 3).is_identity()
    assert oracles.gate_dict(t) == oracles.tau_dict(W("12"), W("13"), 3)
    with pytest.raises(EncodingError):
        make_tau(W("1"), W("12"), 3)


def test_t2_is_tau():
    assert make_tau(W("112"), W("113"), 3) == make_t(2, 3)


def test_swap_examples():
    s = make_swap((0,), (1,), 2)
    assert s((0, 1)) == (1, 0) and s((1, 0)) == (0, 1)
    assert s((0, 0)) == (0, 0) and s((1, 1)) == (1, 1)
    assert make_swap(W("12"), W("12"), 3).is_identity()
    assert make_swap(W("1"), W("23"), 3) == make_tau(W("123"), W("231"), 3)


def test_swap_conservative():
    for u in ("1", "12", "3"):
        for v in ("2", "31", ""):
            g = make_swap(W(u), parse_word(v or "-", 3), 3)
            assert is_conservative_lambda(g, Partition.singletons(3))


def test_controlled_examples():
    t = make_tau((0,), (1,), 2)
    assert make_controlled((), t) == t
    tof = make_controlled((1, 1), t)
    assert tof((1, 1, 0)) == (1, 1, 1) and tof((0, 1, 0)) == (0, 1, 0)
    fred = make_controlled((1,), make_swap((0,), (1,), 2))
    assert fred((1, 0, 1)) == (1, 1, 0)


def test_perm_examples():
    assert make_perm_gate((0, 1, 2), 3).is_identity()
    assert make_perm_gate((1, 0), 3)(W("12")) == W("21")


def test_perm_composition_all_pairs():
    count = 0
    for s in permutations(range(3)):
        for t in permutations(range(3)):
            rho = tuple(t[s[i]] for i in range(3))
            assert make_perm_gate(s, 2) @ make_perm_gate(t, 2) == make_perm_gate(rho, 2)
            count += 1
    assert count == 36


def test_wire_permutation_recognised():
    assert wire_permutation_of(make_perm_gate((2, 0, 1), 3)) == (2, 0, 1)
    assert wire_permutation_of(make_tau(W("12"), W("13"), 3)) is None


def test_cc_examples():
    cc2 = make_cc(2, 3)
    assert cc2(W("111")) == W("133") and cc2(W("133")) == W("111") and cc2(W("211")) == W("211")
    assert make_cc(1, 3)(W("11")) == W("13")
    assert cc2 == make_controlled((0,), make_tau(W("11"), W("33"), 3))


@pytest.mark.parametrize("m", range(1, 7))
def test_cc_mod_profile(m):
    cc = make_cc(m, 3)
    assert is_mod_preserving(cc, m)
    assert not is_mod_respecting(cc, m + 1)
    d = oracles.gate_dict(cc)
    assert oracles.preserves(d, 3, m) and not oracles.respects(d, 3, m + 1)


def test_t_examples():
    assert make_t(0, 3) == make_tau((1,), (2,), 3)
    t1 = make_t(1, 3)
    moved = [w for w, img in oracles.gate_dict(t1).items() if w != img]
    assert sorted(moved) == [W("12"), W("13")]


@pytest.mark.parametrize("j", range(4))
def test_t_generates_previous_by_ancilla(j):
    b = CircuitBuilder(3, j + 1)
    a = b.ancilla(0)
    b.apply(make_t(j + 1, 3), [a] + list(range(j + 1)))
    assert circuit_extract_gate(b.build()) == make_t(j, 3)


def test_identity_conservative():
    assert is_conservative(identity_gate(3, 2))
