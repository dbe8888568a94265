"""Structural maps: the symbol-permutation action, the base change to a larger
alphabet, and the parity certificate that ``<T_j : j >= 0>`` is not finitely
generated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .constructors import make_t
from .core import (
    Circuit,
    Gate,
    Placement,
    all_words,
    apply_gate_columns,
    check_table_size,
    flatten_circuit,
    radix_powers,
)
from .errors import BudgetExceeded, EncodingError, PreconditionError
from .group import expand_placement

DESIGNATED_BUDGET = 1 << 16


def _check_sigma(sigma: Sequence[int], k: int) -> np.ndarray:
    sigma = np.asarray([int(s) for s in sigma], dtype=np.int64)
    if sorted(sigma.tolist()) != list(range(k)):
        raise EncodingError(f"not a permutation of the {k} symbols: {[s + 1 for s in sigma.tolist()]}")
    return sigma


def word_map(sigma: Sequence[int], k: int, n: int) -> np.ndarray:
    """Index table of ``(a_1..a_n) -> (sigma(a_1)..sigma(a_n))``."""
    sigma = _check_sigma(sigma, k)
    return sigma[all_words(k, n)] @ radix_powers(k, n)


def act_sigma(F: Gate, sigma: Sequence[int]) -> Gate:
    """``F^sigma = sigma o F o sigma^{-1}`` applied symbolwise.

    With this convention ``act_sigma(act_sigma(F, s), t) == act_sigma(F, t o s)``
    where ``(t o s)[a] = t[s[a]]``.
    """
    S = word_map(sigma, F.k, F.arity)
    S_inv = np.empty_like(S)
    S_inv[S] = np.arange(S.shape[0])
    return Gate(F.k, F.arity, S[F.image[S_inv]])


def compose_symbol_perms(t: Sequence[int], s: Sequence[int]) -> tuple:
    """``t o s`` (apply ``s`` first)."""
    return tuple(int(t[x]) for x in s)


def base_change(F: Gate) -> Gate:
    """Lift to ``k + 1`` symbols: words containing the new symbol are fixed."""
    k, n = F.k, F.arity
    big = all_words(k + 1, n).astype(np.int64)
    image = np.arange(big.shape[0])
    inside = np.all(big < k, axis=1)
    small_idx = big[inside] @ radix_powers(k, n)
    out_words = all_words(k, n)[F.image[small_idx]].astype(np.int64)
    image[inside] = out_words @ radix_powers(k + 1, n)
    label = f"lift {F.label}" if F.label else None
    return Gate(k + 1, n, image, label=label)


def _literal_lift(C: Circuit) -> Circuit:
    memo: dict = {}

    def lift(c: Circuit) -> Circuit:
        if id(c) in memo:
            return memo[id(c)]
        steps = []
        for st in c.steps:
            if isinstance(st.op, Gate):
                key = id(st.op)
                if key not in memo:
                    memo[key] = base_change(st.op)
                steps.append(Placement(memo[key], st.wires))
            else:
                steps.append(Placement(lift(st.op), st.wires))
        out = Circuit(c.k + 1, c.wire_count, c.inputs, c.ancillas, tuple(steps))
        memo[id(c)] = out
        return out

    return lift(C)


def lift_circuit(C: Circuit, widen: bool = True) -> Circuit:
    """Carry a circuit to ``k + 1`` symbols.

    By default each step of the flattened circuit is first read as a gate on the
    whole register (identity on the other wires) and then base-changed, so a new
    symbol on any wire freezes every step and ``extract(lift(C))`` equals
    ``base_change(extract(C))``.  ``widen=False`` swaps each placed gate for its
    own base change; that circuit only agrees with ``C`` on words over the old
    alphabet.
    """
    if not widen:
        return _literal_lift(C)
    flat = flatten_circuit(C)
    W = flat.wire_count
    check_table_size(flat.k + 1, W)
    memo: dict = {}
    steps = []
    for st in flat.steps:
        key = (id(st.op), st.wires)
        if key not in memo:
            wide = Gate(flat.k, W, expand_placement(st.op, st.wires, flat.k, W))
            memo[key] = base_change(wide)
        steps.append(Placement(memo[key], tuple(range(W))))
    return Circuit(flat.k + 1, W, flat.inputs, flat.ancillas, tuple(steps))


# ---------------------------------------------------------------------------
# Parity certificate


ASSUMPTIONS = (
    "ancillas initialised to 1 only feed the first inputs of T_i (a 1 never changes)",
    "ancillas initialised to 2 or 3 only feed the last input of T_i and can be dropped",
    "ancillas initialised above 3 are never touched and can be dropped",
    "T_i placements whose last input is not b commute past the rest and can be dropped",
)


@dataclass
class NonFinGenReport:
    n: int
    k: int
    designated: int
    counts: list = field(default_factory=list)  # (i, control wires, flips)
    top_count: int = -1

    @property
    def all_even(self) -> bool:
        return all(c % 2 == 0 for _, _, c in self.counts)

    @property
    def flag(self) -> str:
        return "UNREACHABLE_PARITY" if self.all_even and self.top_count == 1 else "INCONCLUSIVE"

    def summary(self) -> str:
        head = "all T_i even" if self.all_even else "odd T_i count found"
        return f"{head}; T_{self.n + 1} count {self.top_count}; {self.flag}"

    def lines(self) -> list[str]:
        out = ["assumptions (reduced normal form):"]
        out += [f"  - {a}" for a in ASSUMPTIONS]
        out.append(f"wires a_1..a_{self.n + 1}, b; {self.designated} designated inputs; k={self.k}")
        by_i: dict = {}
        for i, _, c in self.counts:
            by_i.setdefault(i, set()).add(c)
        for i in sorted(by_i):
            out.append(f"T_{i}: flip counts {sorted(by_i[i])}")
        out.append(self.summary())
        return out


def designated_inputs(n: int, k: int = 3) -> np.ndarray:
    """Rows ``(a_1..a_{n+1}, b)``: ``a_i = 1`` where bit ``i`` is set, else ``2``; ``b = 2``."""
    N = 1 << (n + 1)
    bits = (np.arange(N)[:, None] >> np.arange(n + 1)[None, :]) & 1
    rows = np.empty((N, n + 2), dtype=np.int64)
    rows[:, : n + 1] = np.where(bits == 1, 0, 1)
    rows[:, n + 1] = 1
    return rows


@lru_cache(maxsize=None)
def _t_gate(i: int, k: int) -> Gate:
    return make_t(i, k)


def flip_mask(placements, n: int, k: int = 3) -> np.ndarray:
    """Designated inputs whose ``b`` changes after applying ``(i, controls)`` placements in order."""
    state = designated_inputs(n, k)
    b = n + 1
    start = state[:, b].copy()
    for i, controls in placements:
        apply_gate_columns(state, tuple(controls) + (b,), _t_gate(i, k))
    return state[:, b] != start


def nonfingen_certificate(n: int, k: int = 3) -> NonFinGenReport:
    """Scan every placement of ``T_0..T_n`` (last input ``b``) and ``T_{n+1}``."""
    if k < 3:
        raise PreconditionError(f"the T_j family needs k >= 3, got {k}")
    if n < 0:
        raise PreconditionError(f"n must be >= 0, got {n}")
    if (1 << (n + 1)) > DESIGNATED_BUDGET:
        raise BudgetExceeded(f"2^{n + 1} designated inputs exceed the budget {DESIGNATED_BUDGET}")
    report = NonFinGenReport(n=n, k=k, designated=1 << (n + 1))
    for i in range(n + 1):
        for controls in combinations(range(n + 1), i):
            report.counts.append((i, controls, int(flip_mask([(i, controls)], n, k).sum())))
    report.top_count = int(flip_mask([(n + 1, tuple(range(n + 1)))], n, k).sum())
    return report
