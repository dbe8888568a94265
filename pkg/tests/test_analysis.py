from __future__ import annotations

from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from revgate.analysis import (
    Partition,
    class_label,
    classify_above_cons,
    conservation_witness,
    count_symbol,
    is_conservative,
    is_conservative_lambda,
    is_mod_preserving,
    is_mod_respecting,
    m_invariant,
    mod_profile,
    mod_witness,
)
from revgate.constructors import make_cc, make_swap, make_tau
from revgate.core import Gate, gate_tensor, identity_gate, parse_word
from revgate.errors import EncodingError, GateMismatchError, PreconditionError
from revgate.synth import one_swap


def W(text, k=3):
    return parse_word(text, k)


def random_gate(rng, k, n):
    return Gate(k, n, rng.permutation(k**n))


@st.composite
def gate_k3(draw, n_max=2):
    n = draw(st.integers(1, n_max))
    return Gate(3, n, np.array(draw(st.permutations(range(3**n)))))


def test_count_examples():
    assert count_symbol(W("121"), 2) == 0
    assert count_symbol(W("133"), 2) == 2
    assert count_symbol((), 2) == 0


def test_partition_parse_and_print():
    lam = Partition.parse("{{1,2},{3}}", 3)
    assert lam == Partition.parse("12|3", 3) == Partition.marked_split(3)
    assert str(lam) == "{{1,2},{3}}"
    assert Partition.singletons(3).refines(lam) and lam.refines(Partition.whole(3))
    with pytest.raises(EncodingError):
        Partition.parse("12|23", 3)


def test_conservation_examples(rng):
    for _ in range(5):
        assert is_conservative_lambda(random_gate(rng, 3, 2), Partition.whole(3))
    assert is_conservative_lambda(one_swap(0, 1, 3), Partition.singletons(3))
    cc2 = make_cc(2, 3)
    assert not is_conservative_lambda(cc2, Partition.marked_split(3))
    assert conservation_witness(cc2, Partition.marked_split(3)) == W("111")


@settings(max_examples=80, deadline=None)
@given(gate_k3())
def test_conservation_matches_oracle(F):
    d = oracles.gate_dict(F)
    for blocks in ([[0], [1], [2]], [[0, 1], [2]], [[0], [1, 2]], [[0, 2], [1]], [[0, 1, 2]]):
        lam = Partition(3, tuple(frozenset(b) for b in blocks))
        assert is_conservative_lambda(F, lam) == oracles.lam_conservative(d, blocks)
    assert is_conservative(F) == oracles.lam_conservative(d, [[0], [1], [2]])


def test_mod_profile_examples():
    assert mod_profile(make_swap(W("1"), W("3"), 3)).diffs == (0,)
    assert mod_profile(identity_gate(3, 2)).gcd_value == 0
    p = mod_profile(make_cc(2, 3))
    assert set(p.diffs) == {-2, 0, 2} and p.gcd_value == 2
    p = mod_profile(make_tau(W("1"), W("3"), 3))
    assert set(p.diffs) == {-1, 0, 1} and p.gcd_value == 1


def test_mod_predicates():
    cc2 = make_cc(2, 3)
    assert is_mod_preserving(cc2, 2) and not is_mod_respecting(cc2, 4)
    assert mod_witness(cc2, 4) is not None
    assert is_mod_preserving(make_cc(3, 3), 1)


def test_m_invariant_examples():
    assert m_invariant(identity_gate(3, 3)) == 0
    for m in range(1, 7):
        assert m_invariant(make_cc(m, 3)) == m


@settings(max_examples=80, deadline=None)
@given(gate_k3(), st.integers(1, 6))
def test_respecting_iff_preserving_k3(F, m):
    d = oracles.gate_dict(F)
    assert is_mod_respecting(F, m) == is_mod_preserving(F, m)
    assert is_mod_respecting(F, m) == oracles.respects(d, 3, m)
    assert m_invariant(F) == oracles.m_of(d, 3)


def test_respecting_fails_for_k2():
    t = make_tau((0,), (1,), 2)
    assert is_mod_respecting(t, 2) and not is_mod_preserving(t, 2)


@settings(max_examples=60, deadline=None)
@given(gate_k3(), gate_k3())
def test_tensor_gcd(F, G):
    assert m_invariant(gate_tensor(F, G)) == gcd(m_invariant(F), m_invariant(G))


def test_classify_examples():
    assert classify_above_cons([]) == 0 and class_label(0) == "CONS_{k-1,1}"
    assert classify_above_cons([make_cc(4, 3), make_cc(6, 3)]) == 2
    assert class_label(2) == "⟨CONS_{k-1,1}, CC_2⟩"
    assert classify_above_cons([make_tau(W("1"), W("3"), 3)]) == 1 and class_label(1) == "ALL"


def test_classify_errors():
    with pytest.raises(GateMismatchError):
        classify_above_cons([make_cc(2, 3), make_cc(2, 4)])
    with pytest.raises(PreconditionError):
        classify_above_cons([make_tau((0,), (1,), 2)])
