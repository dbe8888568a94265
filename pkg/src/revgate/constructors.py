"""Named gate families: transpositions, swaps, controlled gates, wire
permutations, the classifying gates ``CC_m`` and the family ``T_j``.

All words are internal (0-based) tuples.  Every constructor records a text
descriptor in ``Gate.label`` so that circuits can be written out readably.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import (
    Gate,
    all_words,
    check_table_size,
    check_word,
    encode,
    format_word,
    identity_gate,
    radix_powers,
)
from .errors import EncodingError, GateMismatchError


def make_tau(u: Sequence[int], v: Sequence[int], k: int) -> Gate:
    """The transposition exchanging words ``u`` and ``v`` (identity when equal)."""
    u = check_word(u, k)
    v = check_word(v, k, len(u))
    n = len(u)
    image = np.arange(check_table_size(k, n))
    i, j = encode(u, k), encode(v, k)
    image[i], image[j] = j, i
    return Gate(k, n, image, label=f"tau {format_word(u, k)} {format_word(v, k)}")


def make_swap(u: Sequence[int], v: Sequence[int], k: int) -> Gate:
    """``SWAP_{u,v} = tau_{uv, vu}``; ``u`` and ``v`` may have different lengths."""
    u, v = check_word(u, k), check_word(v, k)
    g = make_tau(u + v, v + u, k)
    return g.with_label(f"swap {format_word(u, k)} {format_word(v, k)}")


def make_controlled(w: Sequence[int], F: Gate) -> Gate:
    """``w-F``: apply ``F`` to the suffix when the prefix equals ``w``."""
    k = F.k
    w = check_word(w, k)
    n = len(w) + F.arity
    image = np.arange(check_table_size(k, n))
    block = encode(w, k) * F.size
    image[block : block + F.size] = block + F.image
    label = f"ctrl {format_word(w, k)} {F.label}" if F.label else None
    return Gate(k, n, image, label=label)


def format_positions(sigma: Sequence[int]) -> str:
    return format_word(sigma, 9 if len(sigma) <= 9 else 10)


def make_perm_gate(sigma: Sequence[int], k: int) -> Gate:
    """Wire permutation ``P_sigma``: ``(a_1..a_n) -> (a_sigma(1)..a_sigma(n))``.

    ``sigma`` is given 0-based, so output position ``i`` takes input position
    ``sigma[i]``.
    """
    sigma = tuple(int(s) for s in sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise EncodingError(f"not a permutation of positions: {[s + 1 for s in sigma]}")
    size = check_table_size(k, n)
    if n == 0:
        return identity_gate(k, 0).with_label("perm -")
    words = all_words(k, n).astype(np.int64)
    image = words[:, list(sigma)] @ radix_powers(k, n)
    assert image.shape == (size,)
    return Gate(k, n, image, label=f"perm {format_positions(sigma)}")


def make_cc(m: int, k: int) -> Gate:
    """``CC_m = 1-tau_{1^m, k^m}``: the classifying gate above ``CONS_{k-1,1}``."""
    if m < 1:
        raise EncodingError(f"CC_m needs m >= 1, got {m}")
    if k < 2:
        raise EncodingError(f"alphabet size must be >= 2, got {k}")
    g = make_controlled((0,), make_tau((0,) * m, (k - 1,) * m, k))
    return g.with_label(f"cc {m}")


def make_t(j: int, k: int) -> Gate:
    """``T_j = tau_{1^j 2, 1^j 3}`` (arity ``j + 1``)."""
    if k < 3:
        raise EncodingError(f"T_j needs k >= 3, got {k}")
    if j < 0:
        raise EncodingError(f"T_j needs j >= 0, got {j}")
    g = make_tau((0,) * j + (1,), (0,) * j + (2,), k)
    return g.with_label(f"t {j}")


def make_symbol_tau(a: int, b: int, k: int) -> Gate:
    """Single-wire ``tau_{a,b}``."""
    return make_tau((a,), (b,), k)


def wire_permutation_of(gate: Gate) -> tuple | None:
    """Return ``sigma`` if ``gate`` equals ``make_perm_gate(sigma)``, else ``None``."""
    n, k = gate.arity, gate.k
    if n == 0:
        return ()
    sigma = [None] * n
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        out = gate(unit)
        if sum(out) != 1:
            return None
        sigma[out.index(1)] = i
    if None in sigma:
        return None
    try:
        candidate = make_perm_gate(sigma, k)
    except (EncodingError, GateMismatchError):
        return None
    return tuple(sigma) if candidate == gate else None
