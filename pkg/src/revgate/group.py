"""Permutation-group oracles at a fixed width.

Generators act on the ``k**W`` encoded wire states.  Permutations are numpy
arrays ``p`` with ``p[x]`` the image of ``x``; products are read left to
right, ``mul(a, b) = b[a]`` (apply ``a`` first).  A word is a list of tokens
``+(i+1)`` / ``-(i+1)`` for generator ``i`` or its inverse, also read left to
right.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

import numpy as np

from .constructors import make_perm_gate
from .core import Circuit, Gate, Placement, all_words, apply_gate_columns, check_word, radix_powers
from .errors import BudgetExceeded, GateMismatchError

POINT_BUDGET = 100_000
WORD_BUDGET = 1_000_000


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return b[a]


def _inv(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(a.shape[0])
    return out


def expand_placement(gate: Gate, wires: Sequence[int], k: int, W: int) -> np.ndarray:
    """Full-width permutation of ``gate`` applied to ``wires``."""
    if gate.k != k:
        raise GateMismatchError(f"gate over {gate.k} symbols, group over {k}")
    state = all_words(k, W).astype(np.int64)
    apply_gate_columns(state, list(wires), gate)
    return state @ radix_powers(k, W)


@dataclass
class PlacementGroup:
    """The group generated by fixed placements plus all wire permutations."""

    k: int
    wires: int
    placements: list = field(default_factory=list)  # (Gate, wires)
    wire_perms: bool = True

    def __post_init__(self):
        npts = self.k**self.wires
        if npts > POINT_BUDGET:
            raise BudgetExceeded(f"{npts} points exceed the budget of {POINT_BUDGET}")
        self.placements = [(g, tuple(int(w) for w in ws)) for g, ws in self.placements]
        gens, names = [], []
        for g, ws in self.placements:
            if len(ws) != g.arity:
                raise GateMismatchError(f"gate of arity {g.arity} placed on {len(ws)} wires")
            gens.append(expand_placement(g, ws, self.k, self.wires))
            names.append((g, ws))
        if self.wire_perms:
            for i in range(self.wires - 1):
                swap = make_perm_gate((1, 0), self.k)
                gens.append(expand_placement(swap, (i, i + 1), self.k, self.wires))
                names.append((swap, (i, i + 1)))
        self.generators = gens
        self.generator_placements = names

    @classmethod
    def from_gates(cls, k: int, W: int, gates, everywhere: bool = False) -> PlacementGroup:
        """Place each gate on its first wires (or on every ordered wire tuple)."""
        placements = []
        for g in gates:
            if g.arity > W:
                continue
            if everywhere:
                placements += [(g, ws) for ws in permutations(range(W), g.arity)]
            else:
                placements.append((g, tuple(range(g.arity))))
        return cls(k, W, placements)

    @property
    def points(self) -> int:
        return self.k**self.wires

    def evaluate(self, word) -> np.ndarray:
        if isinstance(word, GroupWord):
            return word.evaluate()
        p = np.arange(self.points)
        invs: dict = {}
        for t in word:
            g = self.generators[abs(t) - 1]
            if t < 0:
                g = invs.setdefault(t, _inv(g))
            p = _mul(p, g)
        return p

    def word_gate(self, word) -> Gate:
        return Gate(self.k, self.wires, self.evaluate(word))

    def scope(self) -> str:
        return f"width {self.wires}, {len(self.generators)} generators"


def closure_bfs(group: PlacementGroup, element_cap: int = 100_000) -> set:
    """Every element of the generated group, as tuples; raises past ``element_cap``."""
    start = tuple(range(group.points))
    seen = {start}
    queue = deque([np.arange(group.points)])
    while queue:
        p = queue.popleft()
        for g in group.generators:
            q = _mul(p, g)
            key = tuple(q.tolist())
            if key not in seen:
                seen.add(key)
                if len(seen) > element_cap:
                    raise BudgetExceeded(f"closure exceeds {element_cap} elements")
                queue.append(q)
    return seen


class _Program:
    """Straight-line program over the generators; node ``None`` is the empty word.

    Chain words are products of products, so they are stored as a DAG and only
    expanded on request.
    """

    def __init__(self, generators):
        self.generators = generators
        self.nodes: list[tuple] = []
        self.lengths: list[int] = []
        self._inverse: dict = {}

    def _add(self, node, length):
        self.nodes.append(node)
        self.lengths.append(length)
        return len(self.nodes) - 1

    def gen(self, i: int) -> int:
        return self._add(("gen", i), 1)

    def mul(self, *parts):
        out = None
        for p in parts:
            if p is None:
                continue
            out = p if out is None else self._add(("mul", out, p), self.lengths[out] + self.lengths[p])
        return out

    def inv(self, a):
        if a is None:
            return None
        if a not in self._inverse:
            self._inverse[a] = self._add(("inv", a), self.lengths[a])
        return self._inverse[a]

    def length(self, a) -> int:
        return 0 if a is None else self.lengths[a]

    def tokens(self, a) -> list:
        out: list = []
        stack = [(a, False)]
        while stack:
            node, inverted = stack.pop()
            if node is None:
                continue
            kind = self.nodes[node]
            if kind[0] == "gen":
                out.append(-(kind[1] + 1) if inverted else kind[1] + 1)
            elif kind[0] == "inv":
                stack.append((kind[1], not inverted))
            else:
                first, second = (kind[2], kind[1]) if inverted else (kind[1], kind[2])
                stack.append((second, inverted))
                stack.append((first, inverted))
        return out


class GroupWord:
    """A factorisation witness; iterate or call :meth:`tokens` for the flat word."""

    def __init__(self, program: _Program, node, perm: np.ndarray):
        self.program, self.node, self._perm = program, node, perm

    @property
    def length(self) -> int:
        return self.program.length(self.node)

    def tokens(self) -> list:
        if self.length > WORD_BUDGET:
            raise BudgetExceeded(f"word of length {self.length} exceeds {WORD_BUDGET}")
        return self.program.tokens(self.node)

    def __iter__(self):
        return iter(self.tokens())

    def evaluate(self) -> np.ndarray:
        """The product, computed from the program (no expansion)."""
        memo: dict = {}
        gens = self.program.generators
        n = self._perm.shape[0]

        def value(a):
            if a is None:
                return np.arange(n)
            if a in memo:
                return memo[a]
            kind = self.program.nodes[a]
            if kind[0] == "gen":
                out = gens[kind[1]]
            elif kind[0] == "inv":
                out = _inv(value(kind[1]))
            else:
                out = _mul(value(kind[1]), value(kind[2]))
            memo[a] = out
            return out

        # nodes only refer to earlier nodes, so fill the memo bottom-up
        if self.node is not None:
            for a in range(self.node + 1):
                value(a)
        return value(self.node)


class _Level:
    """Basic orbit of one base point as a Schreier tree over the level's generators.

    The tree is only ever extended, so transversal elements of known points
    never change and Schreier generators checked once stay checked.
    """

    def __init__(self, point: int, n: int):
        self.point = point
        self.n = n
        self.gens: list[int] = []  # indices into the chain's strong generators
        self.parent: dict = {point: None}  # beta -> (previous point, strong index)
        self.checked: set = set()
        self._cache: dict = {point: (np.arange(n), np.arange(n), None)}

    def extend(self, strong):
        queue = deque(self.parent)
        while queue:
            x = queue.popleft()
            for si in self.gens:
                y = int(strong[si][0][x])
                if y not in self.parent:
                    self.parent[y] = (x, si)
                    queue.append(y)

    def transversal(self, beta: int, strong, program: _Program):
        """``(u, u^-1, node)`` with ``u[point] = beta``."""
        hit = self._cache.get(beta)
        if hit is not None:
            return hit
        x, si = self.parent[beta]
        u0, _, w0 = self.transversal(x, strong, program)
        p, w = strong[si]
        u = _mul(u0, p)
        out = (u, _inv(u), program.mul(w0, w))
        self._cache[beta] = out
        return out


class StabilizerChain:
    """Deterministic Schreier-Sims chain for a :class:`PlacementGroup`.

    ``base_prefix`` forces the first base points (used for slice constraints).
    New base points are chosen greedily: the moved point with the largest orbit
    under the whole group, ties to the smallest point.
    """

    def __init__(self, group: PlacementGroup, base_prefix: Sequence[int] = ()):
        self.group = group
        self.n = group.points
        self.program = _Program(group.generators)
        self.strong: list[tuple[np.ndarray, int]] = []
        ident = np.arange(self.n)
        for i, g in enumerate(group.generators):
            if not np.array_equal(g, ident):
                self.strong.append((g, self.program.gen(i)))
        self._orbit_size = self._full_orbit_sizes()
        self.levels: list[_Level] = [_Level(int(b), self.n) for b in base_prefix]
        for g, _ in self.strong:
            self._ensure_moved(g)
        for si, (g, _) in enumerate(self.strong):
            for lv in self.levels:
                lv.gens.append(si)
                if g[lv.point] != lv.point:
                    break
        for lv in self.levels:
            lv.extend(self.strong)
        self._schreier_sims()

    def _full_orbit_sizes(self) -> np.ndarray:
        label = np.full(self.n, -1)
        sizes = np.zeros(self.n, dtype=np.int64)
        for start in range(self.n):
            if label[start] >= 0:
                continue
            orbit = [start]
            label[start] = start
            i = 0
            while i < len(orbit):
                x = orbit[i]
                i += 1
                for g, _ in self.strong:
                    y = int(g[x])
                    if label[y] < 0:
                        label[y] = start
                        orbit.append(y)
            sizes[orbit] = len(orbit)
        return sizes

    def _ensure_moved(self, g: np.ndarray):
        """Append a base point if ``g`` fixes every current base point."""
        if all(g[lv.point] == lv.point for lv in self.levels):
            moved = np.flatnonzero(g != np.arange(self.n))
            best = moved[np.lexsort((moved, -self._orbit_size[moved]))[0]]
            self.levels.append(_Level(int(best), self.n))

    def strip(self, g: np.ndarray, start: int = 0):
        """Sift ``g``; returns (residue, level reached, transversal nodes used)."""
        nodes = []
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            beta = int(g[lv.point])
            if beta not in lv.parent:
                return g, j, nodes
            _, uinv, w = lv.transversal(beta, self.strong, self.program)
            g = uinv[g]
            nodes.append(w)
        return g, len(self.levels), nodes

    def _schreier_sims(self):
        ident = np.arange(self.n)
        prog = self.program
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            found = None
            for beta in list(lv.parent):
                for si in list(lv.gens):
                    if (beta, si) in lv.checked:
                        continue
                    s, sw = self.strong[si]
                    u, _, uw = lv.transversal(beta, self.strong, prog)
                    gamma = int(s[beta])
                    _, vinv, vw = lv.transversal(gamma, self.strong, prog)
                    sg = vinv[s[u]]
                    if not np.array_equal(sg, ident):
                        h, j, nodes = self.strip(sg, i + 1)
                        if j < len(self.levels) or not np.array_equal(h, ident):
                            hw = prog.mul(uw, sw, prog.inv(vw), *[prog.inv(w) for w in nodes])
                            found = (h, hw, j)
                            break
                    lv.checked.add((beta, si))
                if found:
                    break
            if found is None:
                i -= 1
                continue
            h, hw, j = found
            self.strong.append((h, hw))
            si = len(self.strong) - 1
            if j == len(self.levels):
                self._ensure_moved(h)
            for lv2 in self.levels[i + 1 : j + 1]:
                lv2.gens.append(si)
                lv2.extend(self.strong)
            i = j

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lv.parent) for lv in self.levels]

    def order(self) -> int:
        out = 1
        for s in self.orbit_sizes():
            out *= s
        return out

    def contains(self, candidate) -> tuple[bool, GroupWord | None]:
        """``(True, word)`` when ``candidate`` is in the group, else ``(False, None)``."""
        candidate = np.asarray(candidate, dtype=np.int64)
        h, j, nodes = self.strip(candidate)
        if j < len(self.levels) or not np.array_equal(h, np.arange(self.n)):
            return False, None
        return True, GroupWord(self.program, self.program.mul(*reversed(nodes)), candidate)


def group_membership(group: PlacementGroup, candidate) -> tuple[bool, GroupWord | None]:
    """Membership with a generator word (read left to right) when the answer is yes."""
    if isinstance(candidate, Gate):
        if candidate.k != group.k or candidate.arity != group.wires:
            raise GateMismatchError("candidate does not match the group width")
        candidate = candidate.image
    return StabilizerChain(group).contains(np.asarray(candidate))


def _slice_points(group: PlacementGroup, F: Gate, ancillas) -> tuple[list, list, list]:
    k, W = group.k, group.wires
    anc = {int(w): int(s) for w, s in ancillas}
    inputs = [w for w in range(W) if w not in anc]
    if len(inputs) != F.arity:
        raise GateMismatchError(f"{len(inputs)} free wires but the gate has arity {F.arity}")
    check_word(list(anc.values()), k)
    words = all_words(k, F.arity).astype(np.int64)
    state = np.empty((words.shape[0], W), dtype=np.int64)
    for w, s in anc.items():
        state[:, w] = s
    state[:, inputs] = words
    pts = state @ radix_powers(k, W)
    state[:, inputs] = all_words(k, F.arity)[F.image]
    return inputs, pts.tolist(), (state @ radix_powers(k, W)).tolist()


def implementable_with_ancillas(group: PlacementGroup, F: Gate, ancillas) -> Circuit | None:
    """A circuit over the group's generators realising ``F`` with the given ancillas.

    The chain is built with the slice points as its first base points, so the
    constraints ``g(p_i) = q_i`` are solved level by level without search.  A
    ``None`` is exact at this width and ancilla assignment only.
    """
    inputs, pts, targets = _slice_points(group, F, ancillas)
    chain = StabilizerChain(group, base_prefix=pts)
    remaining = list(targets)
    nodes = []
    for i, lv in enumerate(chain.levels[: len(pts)]):
        beta = remaining[i]
        if beta not in lv.parent:
            return None
        _, uinv, w = lv.transversal(beta, chain.strong, chain.program)
        remaining = [int(uinv[t]) for t in remaining]
        nodes.append(w)
    word = GroupWord(chain.program, chain.program.mul(*reversed(nodes)), np.arange(chain.n))
    return word_to_circuit(group, word.tokens(), inputs, ancillas)


def word_to_circuit(group: PlacementGroup, word, inputs, ancillas) -> Circuit:
    """Placements for ``word``; an inverse token repeats the generator ``order - 1`` times."""
    steps = []
    for t in word:
        gate, wires = group.generator_placements[abs(t) - 1]
        reps = 1 if t > 0 else gate.order() - 1
        steps += [Placement(gate, wires)] * reps
    return Circuit(group.k, group.wires, tuple(inputs), tuple((int(w), int(s)) for w, s in ancillas), tuple(steps))
