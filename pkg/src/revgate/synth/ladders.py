"""Controlled transpositions and controlled swaps built from the libraries.

Every builder returns a :class:`Circuit` whose inputs are the control wires
followed by the target wire(s).  Builders are cached, so repeated
sub-constructions are shared between circuits (and compiled to a table once).

Scratch symbols are the smallest legal ones.  Symbols are 0-based here, so
``0`` is the symbol written ``1`` in files and messages.
"""

from __future__ import annotations

from functools import lru_cache

from ..analysis import Partition
from ..constructors import make_symbol_tau, make_tau
from ..core import Circuit, CircuitBuilder
from ..errors import PreconditionError
from .library import block_pair, one_swap


def _empty(k: int, n: int) -> Circuit:
    return CircuitBuilder(k, n).build()


def _single(op, k: int, n: int) -> Circuit:
    return CircuitBuilder(k, n).apply(op, range(n)).build()


def _need_k3(k: int):
    if k < 3:
        raise PreconditionError(f"synthesis needs k >= 3, got k={k}")


def _conjugate(k: int, n: int, wire: int, a: int, b: int, inner: Circuit) -> Circuit:
    """``tau_{a,b}`` on ``wire``, then ``inner`` on all wires, then ``tau_{a,b}`` again."""
    if a == b:
        return inner
    t = make_symbol_tau(a, b, k)
    return CircuitBuilder(k, n).apply(t, (wire,)).apply(inner, range(n)).apply(t, (wire,)).build()


# ---------------------------------------------------------------------------
# ALL_GEN


@lru_cache(maxsize=None)
def tau_11_1c(k: int, c: int) -> Circuit:
    """``tau_{00,0c}`` on two wires."""
    if c == 0:
        return _empty(k, 2)
    base = _single(make_tau((0, 0), (0, 1), k), k, 2)
    return _conjugate(k, 2, 1, 1, c, base)


@lru_cache(maxsize=None)
def tau_1b_1c(k: int, b: int, c: int) -> Circuit:
    if b == c:
        return _empty(k, 2)
    if b == 0:
        return tau_11_1c(k, c)
    if c == 0:
        return tau_11_1c(k, b)
    return _conjugate(k, 2, 1, 0, b, tau_11_1c(k, c))


@lru_cache(maxsize=None)
def tau_ab_ac(k: int, a: int, b: int, c: int) -> Circuit:
    """``tau_{ab,ac}``, i.e. ``a``-controlled ``tau_{b,c}``."""
    return _conjugate(k, 2, 0, 0, a, tau_1b_1c(k, b, c))


@lru_cache(maxsize=None)
def tau_abc_abd(k: int, a: int, b: int, c: int, d: int) -> Circuit:
    """``tau_{abc,abd}`` with one ancilla ``w = 1``."""
    if c == d:
        return _empty(k, 3)
    bld = CircuitBuilder(k, 3)
    w = bld.ancilla(0)
    outer = [(tau_ab_ac(k, a, 0, 1), (0, w)), (tau_ab_ac(k, b, 1, 2), (1, w))]
    for op, wires in outer:
        bld.apply(op, wires)
    bld.apply(tau_ab_ac(k, 2, c, d), (w, 2))
    for op, wires in reversed(outer):
        bld.apply(op, wires)
    return bld.build()


@lru_cache(maxsize=None)
def _controlled_tau(k: int, w: tuple, a: int, b: int) -> Circuit:
    n = len(w)
    if a == b:
        return _empty(k, n + 1)
    if n == 0:
        return _single(make_symbol_tau(a, b, k), k, 1)
    if n == 1:
        return tau_ab_ac(k, w[0], a, b)
    if n == 2:
        return tau_abc_abd(k, w[0], w[1], a, b)
    bld = CircuitBuilder(k, n + 1)
    z = [bld.ancilla(0) for _ in range(n - 1)]
    rungs = [(tau_abc_abd(k, w[0], w[1], 0, 1), (0, 1, z[0]))]
    for i in range(2, n):
        rungs.append((tau_abc_abd(k, w[i], 1, 0, 1), (i, z[i - 2], z[i - 1])))
    for op, wires in rungs:
        bld.apply(op, wires)
    bld.apply(tau_ab_ac(k, 1, a, b), (z[-1], n))
    for op, wires in reversed(rungs):
        bld.apply(op, wires)
    return bld.build()


def synth_controlled_tau(w, a: int, b: int, k: int) -> Circuit:
    """``w``-controlled ``tau_{a,b}`` over ``ALL_GEN``; inputs are ``w``'s wires then the target."""
    _need_k3(k)
    return _controlled_tau(k, tuple(int(s) for s in w), int(a), int(b))


# ---------------------------------------------------------------------------
# CONS_GEN


@lru_cache(maxsize=None)
def swap2_cons(k: int, a: int, b: int) -> Circuit:
    """Two-wire ``SWAP_{a,b}`` from ``1-SWAP_{a,b}`` and a control ancilla ``1``."""
    if a == b:
        return _empty(k, 2)
    bld = CircuitBuilder(k, 2)
    c = bld.ancilla(0)
    return bld.apply(one_swap(a, b, k), (c, 0, 1)).build()


@lru_cache(maxsize=None)
def c_swap_cons(k: int, c: int, a: int, b: int) -> Circuit:
    if a == b:
        return _empty(k, 3)
    if c == 0:
        return _single(one_swap(a, b, k), k, 3)
    d = min(s for s in range(k) if s not in (0, c))
    bld = CircuitBuilder(k, 3)
    w = bld.ancilla(0)
    u = bld.ancilla(d)
    outer = [(swap2_cons(k, 0, d), (u, 0)), (swap2_cons(k, 0, c), (w, 0))]
    for op, wires in outer:
        bld.apply(op, wires)
    bld.apply(one_swap(a, b, k), (0, 1, 2))
    for op, wires in reversed(outer):
        bld.apply(op, wires)
    return bld.build()


@lru_cache(maxsize=None)
def _controlled_swap(k: int, w: tuple, a: int, b: int) -> Circuit:
    n = len(w)
    if a == b:
        return _empty(k, n + 2)
    if n == 1:
        return c_swap_cons(k, w[0], a, b)
    bld = CircuitBuilder(k, n + 2)
    z = [bld.ancilla(0)] + [bld.ancilla(1) for _ in range(n)]
    rungs = [(c_swap_cons(k, w[i], 0, 1), (i, z[i], z[i + 1])) for i in range(n)]
    for op, wires in rungs:
        bld.apply(op, wires)
    bld.apply(one_swap(a, b, k), (z[n], n, n + 1))
    for op, wires in reversed(rungs):
        bld.apply(op, wires)
    return bld.build()


def synth_controlled_swap(w, a: int, b: int, k: int) -> Circuit:
    """``w``-controlled ``SWAP_{a,b}`` over ``CONS_GEN``; inputs ``w``'s wires, then two targets."""
    _need_k3(k)
    return _controlled_swap(k, tuple(int(s) for s in w), int(a), int(b))


# ---------------------------------------------------------------------------
# LAMBDA_GEN for a partition with at least two blocks.
#
# Symbol 0 plays the role of the control symbol "o".  Exchanges between blocks
# come from the 1-SWAP gates between block minima, relabelled inside blocks;
# symbol changes inside a block are routed through a cross-block scratch
# symbol so that only the fixed gate tau_{aa,ab} per block is needed.


def _relabel_taus(k: int, pairs) -> list:
    """Single-wire taus ``t_1, t_2, ..`` whose product (``t_1`` first) maps each src to dst."""
    swaps: list[tuple[int, int]] = []

    def image(x):
        for a, b in swaps:
            x = b if x == a else a if x == b else x
        return x

    for src, dst in pairs:
        x = image(src)
        if x != dst:
            swaps.append((x, dst))
    return [make_symbol_tau(a, b, k) for a, b in swaps]


def _conjugate_relabel(k: int, n: int, wires, pairs, inner: Circuit) -> Circuit:
    """``pi^{-1}`` on ``wires``, ``inner``, then ``pi``, where ``pi`` maps src to dst."""
    taus = _relabel_taus(k, pairs)
    if not taus:
        return inner
    bld = CircuitBuilder(k, n)
    for t in reversed(taus):
        for wi in wires:
            bld.apply(t, (wi,))
    bld.apply(inner, range(n))
    for t in taus:
        for wi in wires:
            bld.apply(t, (wi,))
    return bld.build()


def _check_lambda(lam: Partition):
    _need_k3(lam.k)
    if lam.is_whole():
        raise PreconditionError("the cross-block constructions need at least two blocks")


@lru_cache(maxsize=None)
def o_swap(lam: Partition, p: int, q: int) -> Circuit:
    """``1-SWAP_{p,q}`` for ``p``, ``q`` in different blocks."""
    k = lam.k
    bp, bq = lam.block_of[p], lam.block_of[q]
    if bp > bq:
        p, q, bp, bq = q, p, bq, bp
    alpha, beta = min(lam.blocks[bp]), min(lam.blocks[bq])
    return _conjugate_relabel(k, 3, (1, 2), [(alpha, p), (beta, q)], _single(one_swap(alpha, beta, k), k, 3))


@lru_cache(maxsize=None)
def swap2_lambda(lam: Partition, p: int, q: int) -> Circuit:
    k = lam.k
    bld = CircuitBuilder(k, 2)
    c = bld.ancilla(0)
    return bld.apply(o_swap(lam, p, q), (c, 0, 1)).build()


@lru_cache(maxsize=None)
def c_swap_lambda(lam: Partition, c: int, p: int, q: int) -> Circuit:
    """``c-SWAP_{p,q}`` for a cross-block pair ``p``, ``q``."""
    k = lam.k
    if c == 0:
        return o_swap(lam, p, q)
    if lam.same_block(0, c):
        return _conjugate(k, 3, 0, 0, c, o_swap(lam, p, q))
    bld = CircuitBuilder(k, 3)
    t = bld.ancilla(0)
    bld.apply(swap2_lambda(lam, 0, c), (t, 0))
    bld.apply(o_swap(lam, p, q), (t, 1, 2))
    bld.apply(swap2_lambda(lam, 0, c), (t, 0))
    bld.apply(swap2_lambda(lam, p, q), (1, 2))
    return bld.build()


def scratch_symbol(lam: Partition) -> int:
    """Smallest symbol outside the block of ``0``."""
    return min(s for s in range(lam.k) if not lam.same_block(0, s))


@lru_cache(maxsize=None)
def w_swap_lambda(lam: Partition, w: tuple, p: int, q: int) -> Circuit:
    """``w``-controlled ``SWAP_{p,q}`` for a cross-block pair."""
    _check_lambda(lam)
    k, n = lam.k, len(w)
    if n == 0:
        return swap2_lambda(lam, p, q)
    if n == 1:
        return c_swap_lambda(lam, w[0], p, q)
    s = scratch_symbol(lam)
    bld = CircuitBuilder(k, n + 2)
    z = [bld.ancilla(0)] + [bld.ancilla(s) for _ in range(n)]
    rungs = [(c_swap_lambda(lam, w[i], 0, s), (i, z[i], z[i + 1])) for i in range(n)]
    for op, wires in rungs:
        bld.apply(op, wires)
    bld.apply(o_swap(lam, p, q), (z[n], n, n + 1))
    for op, wires in reversed(rungs):
        bld.apply(op, wires)
    return bld.build()


@lru_cache(maxsize=None)
def tau_aa_ab(lam: Partition, a: int, b: int) -> Circuit:
    """``tau_{aa,ab}`` for ``a != b`` in one block."""
    k = lam.k
    alpha, beta = block_pair(lam.blocks[lam.block_of[a]])
    inner = _single(make_tau((alpha, alpha), (alpha, beta), k), k, 2)
    return _conjugate_relabel(k, 2, (0, 1), [(alpha, a), (beta, b)], inner)


@lru_cache(maxsize=None)
def w_tau_lambda(lam: Partition, w: tuple, a: int, b: int) -> Circuit:
    """``w``-controlled ``tau_{a,b}`` for ``a``, ``b`` in one block.

    Ancillas ``z1 = a``, ``z2 = q`` with ``q`` outside the block: a controlled
    swap moves ``a`` onto ``z2`` exactly when the control matches, then
    ``tau_{aa,ab}`` acts on ``(z2, target)`` and the swap is undone.
    """
    _check_lambda(lam)
    k, n = lam.k, len(w)
    if a == b:
        return _empty(k, n + 1)
    if n == 0:
        return _single(make_symbol_tau(a, b, k), k, 1)
    q = min(s for s in range(k) if not lam.same_block(a, s))
    bld = CircuitBuilder(k, n + 1)
    z1, z2 = bld.ancilla(a), bld.ancilla(q)
    ctrl = w_swap_lambda(lam, w, a, q)
    cwires = tuple(range(n)) + (z1, z2)
    bld.apply(ctrl, cwires)
    bld.apply(tau_aa_ab(lam, a, b), (z2, n))
    bld.apply(ctrl, cwires)
    return bld.build()
