"""Recovering ``CC_m`` from a single gate with ``m(F) = m``, and the
single-generator combination of a finite gate set.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..analysis import Partition, count_diffs, m_invariant
from ..constructors import make_perm_gate, make_tau
from ..core import Circuit, CircuitBuilder, Gate, Placement, Word, decode, tensor_all
from ..errors import NoFixedPointError, NoWitnessError, PreconditionError
from .synthesis import lambda_route, synth_cons_lambda, transposition_circuit


def _representatives(F: Gate) -> list[tuple[int, Word]]:
    """``(d, word)`` for each distinct count change ``d``, word of smallest index."""
    diffs = count_diffs(F)
    values, first = np.unique(diffs, return_index=True)
    order = np.argsort(first)
    return [(int(values[i]), decode(int(first[i]), F.k, F.arity)) for i in order]


def _shortest_combination(items, target: int) -> list:
    """Fewest payloads whose values sum to ``target`` (breadth-first over partial sums).

    Partial sums never need to leave ``|s| <= |target| + max|value|``, since a
    valid multiset can always be ordered to stay inside that window.
    """
    items = [(v, p) for v, p in items if v != 0]
    if not items:
        raise NoWitnessError("all count differences are zero")
    bound = abs(target) + max(abs(v) for v, _ in items)
    frontier = {0: []}
    seen = {0}
    while frontier:
        nxt = {}
        for s, seq in frontier.items():
            for v, p in items:
                s2 = s + v
                if s2 == target:
                    return seq + [p]
                if abs(s2) <= bound and s2 not in seen and s2 not in nxt:
                    nxt[s2] = seq + [p]
        seen.update(nxt)
        frontier = nxt
    raise NoWitnessError(f"no combination of differences reaches {target}")


def find_tensor_witness(F: Gate) -> tuple[int, Word]:
    """``(t, w)`` with ``c_k(F^{(x)t}(w)) - c_k(w) = m(F)`` and ``t`` minimal."""
    m = m_invariant(F)
    if m == 0:
        raise NoWitnessError("m(F) = 0: the gate preserves the count of the marked symbol")
    blocks = _shortest_combination(_representatives(F), m)
    return len(blocks), tuple(s for b in blocks for s in b)


def _g_witness(F: Gate, m: int) -> list[tuple[Word, Word]]:
    """Blocks ``(x, x')`` with sum of ``d(x) - d(x')`` equal to ``m``.

    The changes of ``G`` are exactly the differences ``d(x) - d(x')`` of two
    changes of ``F``, so representatives of ``F`` suffice.
    """
    reps = _representatives(F)
    items, seen = [], set()
    for d1, x1 in reps:
        for d2, x2 in reps:
            if d1 - d2 not in seen:
                seen.add(d1 - d2)
                items.append((d1 - d2, (x1, x2)))
    return _shortest_combination(items, m)


def g_circuit(F: Gate) -> Circuit:
    """``G(x, y) = (F^{-1}(y), F(x))``: ``F (x) F^{-1}`` followed by the block swap."""
    a, k = F.arity, F.k
    bld = CircuitBuilder(k, 2 * a)
    bld.apply(F, range(a))
    for _ in range(F.order() - 1):
        bld.apply(F, range(a, 2 * a))
    swap = make_perm_gate((1, 0), k)
    for i in range(a):
        bld.apply(swap, (i, a + i))
    return bld.build()


def _sorted_word(c: int, n: int, k: int) -> Word:
    return (k - 1,) * c + (0,) * (n - c)


def _apply_swaps(word: Word, pairs) -> Word:
    for p, q in pairs:
        if word == p:
            word = q
        elif word == q:
            word = p
    return word


@lru_cache(maxsize=None)
def _controlled_positional_swap(k: int) -> Circuit:
    """Exchange wires 2 and 3 when wire 1 holds ``1``."""
    image = np.arange(k**3)
    for p in range(k):
        for q in range(k):
            image[p * k + q] = q * k + p
    lam = Partition.marked_split(k)
    return synth_cons_lambda(Gate(k, 3, image), lam)


@lru_cache(maxsize=None)
def _flag_swap(k: int, m: int) -> Circuit:
    """Swap wires ``z1, z2`` (last two) when ``c = 1`` and the middle is ``1^m`` or ``k^m``."""
    lam = Partition.marked_split(k)
    gate = None
    for mid in ((0,) * m, (k - 1,) * m):
        t = make_tau((0,) + mid + (0, 1), (0,) + mid + (1, 0), k)
        gate = t if gate is None else gate @ t
    return synth_cons_lambda(gate, lam)


def synth_cc_from_gate(F: Gate) -> Circuit:
    """A circuit over ``CONS_{k-1,1}`` plus ``F`` whose extract is ``CC_m``, ``m = m(F)``.

    Inputs are ``c`` followed by the ``m`` middle wires.
    """
    k, a = F.k, F.arity
    if k < 3:
        raise PreconditionError(f"synthesis needs k >= 3, got k={k}")
    m = m_invariant(F)
    if m == 0:
        raise NoWitnessError("m(F) = 0: the gate preserves the count of the marked symbol")
    blocks = _g_witness(F, m)
    t = len(blocks)
    n = 2 * a * t
    u = tuple(s for x, x2 in blocks for s in x + F(x2))
    v = tuple(s for x, x2 in blocks for s in x2 + F(x))
    mk = k - 1
    cu, cv = u.count(mk), v.count(mk)
    assert cv - cu == m
    u2, v2 = _sorted_word(cu, n, k), _sorted_word(cv, n, k)

    route = lambda_route(Partition.marked_split(k))
    h = CircuitBuilder(k, n)
    for p, q in ((u, u2), (v, v2)):
        if p != q:
            h.apply(transposition_circuit(route, p, q), range(n))
    H = h.build()

    G = g_circuit(F)
    r = CircuitBuilder(k, n).apply(H, range(n))
    for i in range(t):
        r.apply(G, range(2 * a * i, 2 * a * (i + 1)))
    R = r.apply(H, range(n)).build()

    zero = (0,) * a
    w = tuple(s for _ in range(t) for s in zero + F(zero))
    w2 = _apply_swaps(w, [(u, u2), (v, v2)])

    bld = CircuitBuilder(k, 1 + m)
    x = []
    for pos in range(n):
        if pos < cu:
            x.append(bld.ancilla(mk))
        elif pos < cv:
            x.append(1 + pos - cu)
        else:
            x.append(bld.ancilla(0))
    y = [bld.ancilla(s) for s in w2]
    z1, z2 = bld.ancilla(0), bld.ancilla(1)

    flag = _flag_swap(k, m)
    flag_wires = (0,) + tuple(range(1, 1 + m)) + (z1, z2)
    cswap = _controlled_positional_swap(k)
    exchange = [Placement(cswap, (z1, x[i], y[i])) for i in range(n)]
    bld.apply(flag, flag_wires)
    bld.extend(exchange)
    bld.apply(R, x)
    bld.extend(exchange)
    bld.apply(flag, flag_wires)
    return bld.build()


def combine_single_generator(gates) -> tuple[Gate, list[Circuit]]:
    """``F_1 (x) ... (x) F_n`` and, for each ``i``, a circuit recovering ``F_i``.

    The recovery circuit feeds fixed points of the other gates in as ancillas.
    """
    gates = list(gates)
    if not gates:
        raise PreconditionError("need at least one gate")
    k = gates[0].k
    fixed = []
    for i, g in enumerate(gates):
        fp = g.fixed_points()
        if fp.size == 0:
            raise NoFixedPointError(f"gate {i + 1} has no fixed point", index=i)
        fixed.append(decode(int(fp[0]), g.k, g.arity))
    combined = tensor_all(gates, k)
    total = combined.arity
    offsets = np.cumsum([0] + [g.arity for g in gates])
    recovery = []
    for i, g in enumerate(gates):
        lo, hi = int(offsets[i]), int(offsets[i + 1])
        ancillas = []
        for j, h in enumerate(gates):
            if j != i:
                ancillas += [(int(offsets[j]) + p, s) for p, s in enumerate(fixed[j])]
        recovery.append(
            Circuit(k, total, tuple(range(lo, hi)), tuple(ancillas), (Placement(combined, tuple(range(total))),))
        )
    return combined, recovery
