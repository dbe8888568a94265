"""Whole-gate synthesis over the four libraries.

A target is split into adjacent transpositions (see :mod:`.paths`) and each
transposition is lowered to a controlled gate placed on permuted wires.
"""

from __future__ import annotations

from ..analysis import Partition, conservation_witness, mod_witness
from ..constructors import make_cc
from ..core import Circuit, CircuitBuilder, Gate, Placement, Word, format_word
from ..errors import NotInClassError, PreconditionError
from .ladders import synth_controlled_swap, synth_controlled_tau, w_swap_lambda, w_tau_lambda
from .paths import Exchange, Hamming, LambdaMoves, ModMoves, chain, decompose_to_transpositions


def _others(n: int, skip) -> tuple:
    return tuple(i for i in range(n) if i not in skip)


def _diff(u, v) -> list[int]:
    return [i for i in range(len(u)) if u[i] != v[i]]


class _AllRoute:
    def __init__(self, k: int):
        self.k = k
        self.adjacency = Hamming(k)

    def elementary(self, u: Word, v: Word) -> list[Placement]:
        (p,) = _diff(u, v)
        rest = _others(len(u), (p,))
        w = tuple(u[i] for i in rest)
        return [Placement(synth_controlled_tau(w, u[p], v[p], self.k), rest + (p,))]


class _ConsRoute:
    def __init__(self, k: int):
        self.k = k
        self.adjacency = Exchange(k)

    def elementary(self, u, v):
        i, j = _diff(u, v)
        rest = _others(len(u), (i, j))
        w = tuple(u[x] for x in rest)
        return [Placement(synth_controlled_swap(w, u[i], u[j], self.k), rest + (i, j))]


class _LambdaRoute:
    def __init__(self, partition: Partition):
        self.k = partition.k
        self.partition = partition
        self.adjacency = LambdaMoves(partition)

    def elementary(self, u, v):
        d = _diff(u, v)
        rest = _others(len(u), d)
        w = tuple(u[x] for x in rest)
        if self.adjacency.kind(u, v) == "change":
            (p,) = d
            return [Placement(w_tau_lambda(self.partition, w, u[p], v[p]), rest + (p,))]
        i, j = d
        return [Placement(w_swap_lambda(self.partition, w, u[i], u[j]), rest + (i, j))]


def lambda_route(partition: Partition):
    """The route for ``CONS_lambda``; the two extreme partitions reuse ALL/CONS."""
    if partition.is_whole():
        return _AllRoute(partition.k)
    if partition.is_singletons():
        return _ConsRoute(partition.k)
    return _LambdaRoute(partition)


class _ModRoute:
    def __init__(self, m: int, k: int):
        self.k, self.m = k, m
        self.adjacency = ModMoves(m, k)
        self.lam = lambda_route(Partition.marked_split(k))
        self.cc = make_cc(m, k)

    def elementary(self, u, v):
        if self.lam.adjacency(u, v):
            return self.lam.elementary(u, v)
        mk = self.k - 1
        x, y = (u, v) if u.count(mk) < v.count(mk) else (v, u)
        S = _diff(x, y)
        x0 = tuple(0 if i in S else s for i, s in enumerate(x))
        out = transposition_placements(self.lam, x, x0)
        out.append(Placement(self._jump(x0, y), tuple(range(len(u)))))
        return out + transposition_placements(self.lam, x, x0)

    def _jump(self, x0: Word, y: Word) -> Circuit:
        """``tau_{x0,y}`` where ``x0`` has ``1^m`` and ``y`` has ``k^m`` on the changed positions."""
        n = len(x0)
        S = tuple(_diff(x0, y))
        R = _others(n, S)
        bld = CircuitBuilder(self.k, n)
        z = bld.ancilla(1)
        ctl = w_tau_lambda(self.lam.partition, tuple(x0[i] for i in R), 0, 1)
        bld.apply(ctl, R + (z,))
        bld.apply(self.cc, (z,) + S)
        bld.apply(ctl, R + (z,))
        return bld.build()


def transposition_placements(route, u: Word, v: Word) -> list[Placement]:
    out: list[Placement] = []
    if u == v:
        return out
    for a, b in chain(route.adjacency.path(u, v)):
        out.extend(route.elementary(a, b))
    return out


def transposition_circuit(route, u: Word, v: Word) -> Circuit:
    """A circuit over ``len(u)`` wires realising ``tau_{u,v}`` through ``route``."""
    return CircuitBuilder(route.k, len(u)).extend(transposition_placements(route, tuple(u), tuple(v))).build()


def _synthesize(F: Gate, route) -> Circuit:
    bld = CircuitBuilder(F.k, F.arity)
    for u, v in decompose_to_transpositions(F, route.adjacency):
        bld.extend(route.elementary(u, v))
    return bld.build()


def _need_k3(F: Gate):
    if F.k < 3:
        raise PreconditionError(f"synthesis needs k >= 3, got k={F.k}")


def synth_all(F: Gate) -> Circuit:
    _need_k3(F)
    return _synthesize(F, _AllRoute(F.k))


def synth_cons(F: Gate) -> Circuit:
    _need_k3(F)
    bad = conservation_witness(F, Partition.singletons(F.k))
    if bad is not None:
        raise NotInClassError(
            f"gate is not conservative: input {format_word(bad, F.k)} maps to {format_word(F(bad), F.k)}",
            witness=bad,
        )
    return _synthesize(F, _ConsRoute(F.k))


def synth_cons_lambda(F: Gate, partition: Partition) -> Circuit:
    _need_k3(F)
    if partition.k != F.k:
        raise PreconditionError(f"partition over {partition.k} symbols, gate over {F.k}")
    bad = conservation_witness(F, partition)
    if bad is not None:
        raise NotInClassError(
            f"gate is not conservative for {partition}: input {format_word(bad, F.k)} "
            f"maps to {format_word(F(bad), F.k)}",
            witness=bad,
        )
    return _synthesize(F, lambda_route(partition))


def synth_mod_preserving(F: Gate, m: int) -> Circuit:
    _need_k3(F)
    if m < 1:
        raise PreconditionError(f"modulus must be >= 1, got {m}")
    bad = mod_witness(F, m)
    if bad is not None:
        raise NotInClassError(
            f"gate is not mod-{m}-preserving: input {format_word(bad, F.k)} "
            f"maps to {format_word(F(bad), F.k)}",
            witness=bad,
        )
    return _synthesize(F, _ModRoute(m, F.k))
