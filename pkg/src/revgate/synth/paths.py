"""Adjacency relations on words and the transposition decomposition.

A permutation is written as a product of transpositions of adjacent words.
Each cycle ``x -> F(x) -> F^2(x) ...`` becomes the list of pairs
``(x, F(x)), (x, F^2(x)), ...`` applied in order, and a non-adjacent pair with
path ``p0 .. pr`` becomes ``(p0 p1) .. (p_{r-1} p_r) (p_{r-2} p_{r-1}) .. (p0 p1)``.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Sequence

import numpy as np

from ..analysis import Partition
from ..core import Gate, Word, all_words, decode, encode
from ..errors import DisconnectedError, GateMismatchError


class Adjacency:
    """Base class: a symmetric relation on words of equal length."""

    def __call__(self, u: Word, v: Word) -> bool:
        raise NotImplementedError

    def path(self, u: Word, v: Word) -> list[Word]:
        """Words ``u = p0, ..., pr = v`` with consecutive words adjacent."""
        return bfs_path(self, u, v, self.k)


def bfs_path(adjacent: Callable, u: Word, v: Word, k: int) -> list[Word]:
    if u == v:
        return [u]
    words = [tuple(int(s) for s in row) for row in all_words(k, len(u))]
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in words:
            if y in prev or not adjacent(x, y):
                continue
            prev[y] = x
            if y == v:
                out = [v]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return out[::-1]
            queue.append(y)
    raise DisconnectedError(f"no path between {u} and {v}")


def _diff(u: Word, v: Word) -> list[int]:
    if len(u) != len(v):
        raise GateMismatchError("words of different length")
    return [i for i in range(len(u)) if u[i] != v[i]]


class Hamming(Adjacency):
    """Words at Hamming distance one."""

    def __init__(self, k: int):
        self.k = k

    def __call__(self, u, v):
        return len(_diff(u, v)) == 1

    def path(self, u, v):
        out, cur = [tuple(u)], list(u)
        for i in range(len(u)):
            if cur[i] != v[i]:
                cur[i] = v[i]
                out.append(tuple(cur))
        return out


class Exchange(Adjacency):
    """Words differing by exchanging the contents of two positions."""

    def __init__(self, k: int):
        self.k = k

    def __call__(self, u, v):
        d = _diff(u, v)
        return len(d) == 2 and u[d[0]] == v[d[1]] and u[d[1]] == v[d[0]]

    def path(self, u, v):
        if sorted(u) != sorted(v):
            raise DisconnectedError(f"{u} and {v} have different symbol counts")
        out, cur = [tuple(u)], list(u)
        for i in range(len(u)):
            if cur[i] != v[i]:
                j = next(j for j in range(i + 1, len(u)) if cur[j] == v[i])
                cur[i], cur[j] = cur[j], cur[i]
                out.append(tuple(cur))
        return out


class LambdaMoves(Adjacency):
    """One in-block symbol change, or an exchange of two cross-block symbols."""

    def __init__(self, partition: Partition):
        self.partition = partition
        self.k = partition.k

    def kind(self, u, v) -> str | None:
        d = _diff(u, v)
        lam = self.partition
        if len(d) == 1 and lam.same_block(u[d[0]], v[d[0]]):
            return "change"
        if len(d) == 2:
            i, j = d
            if u[i] == v[j] and u[j] == v[i] and not lam.same_block(u[i], u[j]):
                return "exchange"
        return None

    def __call__(self, u, v):
        return self.kind(u, v) is not None

    def path(self, u, v):
        lam = self.partition
        blk = lam.block_of
        if sorted(blk[s] for s in u) != sorted(blk[s] for s in v):
            raise DisconnectedError(f"{u} and {v} have different block counts")
        out, cur = [tuple(u)], list(u)
        n = len(u)
        # match the block pattern first, then fix symbols inside blocks
        for i in range(n):
            if blk[cur[i]] != blk[v[i]]:
                j = next(j for j in range(i + 1, n) if blk[cur[j]] == blk[v[i]] and blk[cur[j]] != blk[v[j]])
                cur[i], cur[j] = cur[j], cur[i]
                out.append(tuple(cur))
        for i in range(n):
            if cur[i] != v[i]:
                cur[i] = v[i]
                out.append(tuple(cur))
        return out


class ModMoves(Adjacency):
    """``LambdaMoves`` for ``{A \\ {k}, {k}}`` plus mod jumps.

    A mod jump changes exactly ``m`` positions, all of them from non-marked
    symbols to the marked symbol (or back).
    """

    def __init__(self, m: int, k: int):
        self.m, self.k = m, k
        self.marked = k - 1
        self.lam = LambdaMoves(Partition.marked_split(k))

    def is_jump(self, u, v) -> bool:
        d = _diff(u, v)
        if len(d) != self.m:
            return False
        mk = self.marked
        up = all(u[i] != mk and v[i] == mk for i in d)
        down = all(v[i] != mk and u[i] == mk for i in d)
        return up or down

    def __call__(self, u, v):
        return self.lam(u, v) or self.is_jump(u, v)

    def path(self, u, v):
        mk, m = self.marked, self.m
        cu, cv = u.count(mk), v.count(mk)
        if (cv - cu) % m:
            raise DisconnectedError(f"marked counts of {u} and {v} differ by a non-multiple of {m}")
        lo, hi = (u, v) if cu <= cv else (v, u)
        out, cur = [tuple(lo)], list(lo)
        while cur.count(mk) < hi.count(mk):
            free = [i for i in range(len(cur)) if cur[i] != mk]
            # prefer positions where the target holds the marked symbol
            free.sort(key=lambda i: (hi[i] != mk, i))
            for i in free[:m]:
                cur[i] = mk
            out.append(tuple(cur))
        out += self.lam.path(tuple(cur), hi)[1:]
        return out if cu <= cv else out[::-1]


def chain(path: Sequence[Word]) -> list[tuple[Word, Word]]:
    """Adjacent transpositions whose product (in order) swaps the path ends."""
    steps = [(path[i], path[i + 1]) for i in range(len(path) - 1)]
    return steps + steps[-2::-1] if steps else []


def decompose_to_transpositions(F: Gate, adjacency) -> list[tuple[Word, Word]]:
    """Adjacent transpositions ``(u, v)`` whose ordered application equals ``F``.

    ``adjacency`` is an :class:`Adjacency` or any symmetric predicate on words;
    plain predicates fall back to breadth-first search over all words.
    """
    k, n = F.k, F.arity
    if isinstance(adjacency, Adjacency):
        path_of = adjacency.path
    else:
        def path_of(u, v):
            return bfs_path(adjacency, u, v, k)
    out: list[tuple[Word, Word]] = []
    for cycle in F.cycles():
        if len(cycle) < 2:
            continue
        x = decode(cycle[0], k, n)
        for idx in cycle[1:]:
            y = decode(idx, k, n)
            out.extend(chain(path_of(x, y)))
    return out


def apply_transpositions(pairs, k: int, n: int) -> Gate:
    """Reference composition of transposition pairs (used by the tests)."""
    image = np.arange(k**n)
    for u, v in pairs:
        i, j = encode(u, k), encode(v, k)
        a, b = image == i, image == j
        image[a], image[b] = j, i
    return Gate(k, n, image)
