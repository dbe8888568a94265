"""Independent reference implementations used to cross-check the package.

Everything here works on plain dicts and tuples and never calls the package's
simulators or encoders.
"""

from __future__ import annotations

from collections import deque
from itertools import product
from math import gcd


def words(k, n):
    return list(product(range(k), repeat=n))


def index(word, k):
    i = 0
    for s in word:
        i = i * k + s
    return i


def gate_dict(gate):
    """word -> word from a Gate's table, decoding by repeated division."""
    out = {}
    for w in words(gate.k, gate.arity):
        j = int(gate.image[index(w, gate.k)])
        img = []
        for _ in range(gate.arity):
            img.append(j % gate.k)
            j //= gate.k
        out[w] = tuple(reversed(img))
    return out


def tau_dict(u, v, k):
    d = {w: w for w in words(k, len(u))}
    d[tuple(u)], d[tuple(v)] = tuple(v), tuple(u)
    return d


def run_circuit(circuit, assignment):
    """Step-by-step simulation of an arbitrary (possibly nested) circuit.

    Returns the full final wire state, or raises ValueError if any ancilla,
    nested or not, is not restored.
    """
    state = [None] * circuit.wire_count
    for w, s in zip(circuit.inputs, assignment):
        state[w] = s
    for w, s in circuit.ancillas:
        state[w] = s
    for step in circuit.steps:
        vals = tuple(state[w] for w in step.wires)
        if hasattr(step.op, "steps"):
            full = run_circuit(step.op, vals)
            new = tuple(full[w] for w in step.op.inputs)
        else:
            new = gate_dict_cached(step.op)[vals]
        for w, s in zip(step.wires, new):
            state[w] = s
    for w, s in circuit.ancillas:
        if state[w] != s:
            raise ValueError(f"ancilla {w} not restored")
    return state


_cache: dict = {}


def gate_dict_cached(gate):
    key = (gate.k, gate.arity, gate.image.tobytes())
    if key not in _cache:
        _cache[key] = gate_dict(gate)
    return _cache[key]


def extract(circuit):
    out = {}
    for w in words(circuit.k, len(circuit.inputs)):
        st = run_circuit(circuit, w)
        out[w] = tuple(st[i] for i in circuit.inputs)
    return out


def count(word, s):
    return sum(1 for x in word if x == s)


def m_of(d, k):
    """gcd of the changes in the count of the last symbol."""
    g = 0
    for w, img in d.items():
        g = gcd(g, abs(count(img, k - 1) - count(w, k - 1)))
    return g


def respects(d, k, m):
    if m == 0:
        return True
    return len({(count(img, k - 1) - count(w, k - 1)) % m for w, img in d.items()}) == 1


def preserves(d, k, m):
    return all((count(img, k - 1) - count(w, k - 1)) % m == 0 for w, img in d.items()) if m else True


def lam_conservative(d, blocks):
    of = {s: i for i, b in enumerate(blocks) for s in b}
    for w, img in d.items():
        if sorted(of[s] for s in w) != sorted(of[s] for s in img):
            return False
    return True


def bfs_order(gens):
    """Size of the group generated by permutations given as tuples."""
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    q = deque([ident])
    while q:
        p = q.popleft()
        for g in gens:
            r = tuple(g[x] for x in p)
            if r not in seen:
                seen.add(r)
                q.append(r)
    return len(seen)
