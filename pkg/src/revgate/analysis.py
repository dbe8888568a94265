"""Invariants of gates: symbol counts, lambda-conservativity, the mod-m
properties of the marked-symbol count and the invariant ``m(F)``.

The marked symbol defaults to the largest symbol ``k`` (internal ``k-1``).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .core import Gate, all_words, check_word, decode, parse_word
from .errors import EncodingError, GateMismatchError, PreconditionError


@dataclass(frozen=True)
class Partition:
    """A set partition of the alphabet ``0..k-1``; blocks are ordered by minimum."""

    k: int
    blocks: tuple

    def __post_init__(self):
        blocks = [frozenset(int(s) for s in b) for b in self.blocks]
        if any(not b for b in blocks):
            raise EncodingError("partition blocks must be nonempty")
        union = set().union(*blocks) if blocks else set()
        if union != set(range(self.k)) or sum(len(b) for b in blocks) != self.k:
            raise EncodingError(f"blocks must be disjoint and cover 1..{self.k}")
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=min)))

    @classmethod
    def singletons(cls, k: int) -> Partition:
        return cls(k, tuple(frozenset([s]) for s in range(k)))

    @classmethod
    def whole(cls, k: int) -> Partition:
        return cls(k, (frozenset(range(k)),))

    @classmethod
    def marked_split(cls, k: int, marked: int | None = None) -> Partition:
        """``{A \\ {marked}, {marked}}``; the default gives ``CONS_{k-1,1}``."""
        marked = k - 1 if marked is None else marked
        return cls(k, (frozenset(range(k)) - {marked}, frozenset([marked])))

    @classmethod
    def parse(cls, text: str, k: int) -> Partition:
        """Accept ``"{{1,2},{3}}"``, ``"{1,2},{3}"``, ``"12|3"``, ``"1,2|3"`` or ``"123"``."""
        text = text.strip()
        if "|" in text or "{" not in text:
            parts = text.split("|")
        else:
            parts = re.findall(r"\{([^{}]*)\}", text)
            if not parts:
                raise EncodingError(f"cannot parse partition {text!r}")
        blocks = []
        for part in parts:
            part = part.strip()
            if "," in part or k > 9:
                syms = [int(p) - 1 for p in part.split(",") if p.strip()]
            else:
                syms = [int(c) - 1 for c in part]
            blocks.append(frozenset(check_word(syms, k)))
        return cls(k, tuple(blocks))

    def __str__(self):
        return "{" + ",".join("{" + ",".join(str(s + 1) for s in sorted(b)) + "}" for b in self.blocks) + "}"

    @cached_property
    def block_of(self) -> tuple:
        out = [0] * self.k
        for i, b in enumerate(self.blocks):
            for s in b:
                out[s] = i
        return tuple(out)

    def same_block(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def is_singletons(self) -> bool:
        return len(self.blocks) == self.k

    def is_whole(self) -> bool:
        return len(self.blocks) == 1

    def refines(self, other: Partition) -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        return all(any(b <= c for c in other.blocks) for b in self.blocks)

    def relabel(self, sigma: Sequence[int]) -> Partition:
        """The image partition ``sigma(lambda)``."""
        return Partition(self.k, tuple(frozenset(sigma[s] for s in b) for b in self.blocks))


@dataclass(frozen=True)
class ModProfile:
    """``diffs`` = distinct values of ``c(F(w)) - c(w)``; ``gcd_value`` = their gcd."""

    diffs: tuple
    gcd_value: int


def count_symbol(w: Sequence[int], s: int) -> int:
    return sum(1 for x in w if x == s)


def _marked(F: Gate, marked: int | None) -> int:
    marked = F.k - 1 if marked is None else marked
    if not 0 <= marked < F.k:
        raise EncodingError(f"marked symbol {marked + 1} outside 1..{F.k}")
    return marked


def block_counts(k: int, n: int, partition: Partition) -> np.ndarray:
    """Row ``i``: per-block symbol counts of the word with index ``i``."""
    if partition.k != k:
        raise GateMismatchError(f"partition is over {partition.k} symbols, gate over {k}")
    lookup = np.asarray(partition.block_of, dtype=np.int64)
    blocks = lookup[all_words(k, n)]
    return np.stack([(blocks == b).sum(axis=1) for b in range(len(partition.blocks))], axis=1)


def conservation_witness(F: Gate, partition: Partition):
    """First input whose block counts change under ``F``, or ``None``."""
    counts = block_counts(F.k, F.arity, partition)
    bad = np.any(counts[F.image] != counts, axis=1)
    if not bad.any():
        return None
    return decode(int(np.flatnonzero(bad)[0]), F.k, F.arity)


def is_conservative_lambda(F: Gate, partition: Partition) -> bool:
    return conservation_witness(F, partition) is None


def is_conservative(F: Gate) -> bool:
    return is_conservative_lambda(F, Partition.singletons(F.k))


def count_diffs(F: Gate, marked: int | None = None) -> np.ndarray:
    """Per-input change ``c(F(w)) - c(w)`` of the marked-symbol count."""
    marked = _marked(F, marked)
    counts = (all_words(F.k, F.arity) == marked).sum(axis=1).astype(np.int64)
    return counts[F.image] - counts


def mod_profile(F: Gate, marked: int | None = None) -> ModProfile:
    diffs = np.unique(count_diffs(F, marked))
    return ModProfile(tuple(int(d) for d in diffs), math.gcd(*(abs(int(d)) for d in diffs)))


def is_mod_respecting(F: Gate, m: int, marked: int | None = None) -> bool:
    if m < 1:
        raise PreconditionError(f"modulus must be >= 1, got {m}")
    residues = count_diffs(F, marked) % m
    return bool(np.all(residues == residues[0]))


def is_mod_preserving(F: Gate, m: int, marked: int | None = None) -> bool:
    if m < 1:
        raise PreconditionError(f"modulus must be >= 1, got {m}")
    return bool(np.all(count_diffs(F, marked) % m == 0))


def mod_witness(F: Gate, m: int, marked: int | None = None):
    """First input whose marked count changes by a non-multiple of ``m``."""
    bad = np.flatnonzero(count_diffs(F, marked) % m != 0)
    if bad.size == 0:
        return None
    return decode(int(bad[0]), F.k, F.arity)


def m_invariant(F: Gate, marked: int | None = None) -> int:
    """Largest ``m`` with ``F`` mod-m-preserving; 0 when the count is preserved.

    This is the gcd of the count differences (``gcd`` of all zeros is 0).
    """
    return mod_profile(F, marked).gcd_value


def classify_above_cons(extra_gates: Iterable[Gate], marked: int | None = None) -> int:
    """``m`` with ``<CONS_{k-1,1}, extra_gates> = <CONS_{k-1,1}, CC_m>``.

    0 stands for ``CONS_{k-1,1}`` itself and 1 for ``ALL``.
    """
    gates = list(extra_gates)
    ks = {g.k for g in gates}
    if len(ks) > 1:
        raise GateMismatchError(f"gates over different alphabets: {sorted(ks)}")
    if ks and min(ks) < 3:
        raise PreconditionError("classification above CONS_{k-1,1} needs k >= 3")
    return math.gcd(*(m_invariant(g, marked) for g in gates)) if gates else 0


def class_label(m: int) -> str:
    if m == 0:
        return "CONS_{k-1,1}"
    if m == 1:
        return "ALL"
    return f"⟨CONS_{{k-1,1}}, CC_{m}⟩"


def parse_symbol(text: str, k: int) -> int:
    (s,) = parse_word(text, k)
    return s
