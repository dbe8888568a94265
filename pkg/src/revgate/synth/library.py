"""The four generator libraries and the library-discipline check."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..analysis import Partition
from ..constructors import make_cc, make_controlled, make_swap, make_symbol_tau, make_tau, wire_permutation_of
from ..core import Circuit, Gate
from ..errors import PreconditionError


@dataclass(frozen=True, eq=False)
class GeneratorLibrary:
    name: str
    k: int
    gates: tuple  # tuple of (name, Gate)

    def __iter__(self):
        return iter(g for _, g in self.gates)

    def __getitem__(self, name: str) -> Gate:
        for n, g in self.gates:
            if n == name:
                return g
        raise KeyError(name)

    def names(self) -> list[str]:
        return [n for n, _ in self.gates]

    def admits(self, gate: Gate) -> bool:
        """Library member, or a wire permutation (those come for free)."""
        if gate.k != self.k:
            return False
        if gate in _gate_set(self):
            return True
        return wire_permutation_of(gate) is not None

    def with_gate(self, name: str, gate: Gate, new_name: str | None = None) -> GeneratorLibrary:
        return GeneratorLibrary(new_name or self.name, self.k, self.gates + ((name, gate),))


@lru_cache(maxsize=None)
def _gate_set(lib: GeneratorLibrary) -> frozenset:
    return frozenset(g for _, g in lib.gates)


def _need_k3(k: int):
    if k < 3:
        raise PreconditionError(f"these generating sets need k >= 3, got k={k}")


def one_swap(a: int, b: int, k: int) -> Gate:
    """``1-SWAP_{a,b}`` with the smaller symbol first (the gate is symmetric)."""
    a, b = sorted((a, b))
    return make_controlled((0,), make_swap((a,), (b,), k))


@lru_cache(maxsize=None)
def all_gen(k: int) -> GeneratorLibrary:
    _need_k3(k)
    gates = [(f"tau{a + 1}{b + 1}", make_symbol_tau(a, b, k)) for a in range(k) for b in range(a + 1, k)]
    gates.append(("tau11_12", make_tau((0, 0), (0, 1), k)))
    return GeneratorLibrary("ALL_GEN", k, tuple(gates))


@lru_cache(maxsize=None)
def cons_gen(k: int) -> GeneratorLibrary:
    _need_k3(k)
    gates = [(f"1-swap{a + 1}{b + 1}", one_swap(a, b, k)) for a in range(k) for b in range(a + 1, k)]
    return GeneratorLibrary("CONS_GEN", k, tuple(gates))


def block_pair(block) -> tuple[int, int]:
    """The two smallest symbols of a block (the pair used by the library)."""
    a, b = sorted(block)[:2]
    return a, b


@lru_cache(maxsize=None)
def lambda_gen(partition: Partition) -> GeneratorLibrary:
    k = partition.k
    _need_k3(k)
    gates = []
    for block in partition.blocks:
        syms = sorted(block)
        for i, a in enumerate(syms):
            for b in syms[i + 1 :]:
                gates.append((f"tau{a + 1}{b + 1}", make_symbol_tau(a, b, k)))
    for block in partition.blocks:
        if len(block) > 1:
            a, b = block_pair(block)
            gates.append((f"tau{a + 1}{a + 1}_{a + 1}{b + 1}", make_tau((a, a), (a, b), k)))
    blocks = partition.blocks
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            a, b = min(blocks[i]), min(blocks[j])
            gates.append((f"1-swap{a + 1}{b + 1}", one_swap(a, b, k)))
    return GeneratorLibrary(f"LAMBDA_GEN({partition})", k, tuple(gates))


@lru_cache(maxsize=None)
def mod_gen(m: int, k: int) -> GeneratorLibrary:
    base = lambda_gen(Partition.marked_split(k))
    return base.with_gate(f"cc{m}", make_cc(m, k), new_name=f"MOD_GEN({m})")


def library_violations(circuit: Circuit, library: GeneratorLibrary) -> list[Gate]:
    """Leaf gates of ``circuit`` (recursively) that the library does not admit."""
    bad: list[Gate] = []
    seen: set[int] = set()

    def walk(c: Circuit):
        if id(c) in seen:
            return
        seen.add(id(c))
        for step in c.steps:
            if isinstance(step.op, Gate):
                if not library.admits(step.op):
                    bad.append(step.op)
            else:
                walk(step.op)

    walk(circuit)
    return bad
