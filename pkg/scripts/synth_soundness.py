"""Synthesize seeded random targets over each library and verify every circuit.

Reports gate counts (flattened leaves) and wire counts per library.
"""

from __future__ import annotations

import argparse
import time
from itertools import product

import numpy as np

from revgate.analysis import Partition
from revgate.config import SoundnessConfig, add_config_arguments, config_from_args
from revgate.core import Gate, circuit_extract_gate, flatten_circuit
from revgate.synth import (
    all_gen,
    cons_gen,
    lambda_gen,
    library_violations,
    mod_gen,
    synth_all,
    synth_cons,
    synth_cons_lambda,
    synth_mod_preserving,
)


def class_preserving(rng, k, n, key):
    """Random gate permuting words inside each class of ``key``."""
    words = list(product(range(k), repeat=n))
    classes: dict = {}
    for i, w in enumerate(words):
        classes.setdefault(key(w), []).append(i)
    image = np.arange(len(words))
    for idx in classes.values():
        image[idx] = rng.permutation(idx)
    return Gate(k, n, image)


def mod_preserving(rng, k, n, m):
    return class_preserving(rng, k, n, lambda w: w.count(k - 1) % m)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    add_config_arguments(ap, SoundnessConfig)
    args = config_from_args(SoundnessConfig, ap.parse_args())
    m = args.modulus
    rng = np.random.default_rng(args.seed)
    k, n = args.k, args.arity
    lam = Partition.marked_split(k)
    jobs = [
        ("ALL", lambda: Gate(k, n, rng.permutation(k**n)), synth_all, all_gen(k)),
        ("CONS", lambda: class_preserving(rng, k, n, lambda w: tuple(sorted(w))), synth_cons, cons_gen(k)),
        (
            f"CONS_{lam}",
            lambda: class_preserving(rng, k, n, lambda w: tuple(sorted(lam.block_of[s] for s in w))),
            lambda F: synth_cons_lambda(F, lam),
            lambda_gen(lam),
        ),
        (f"MOD_{m}", lambda: mod_preserving(rng, k, n, m), lambda F: synth_mod_preserving(F, m), mod_gen(m, k)),
    ]
    failures = 0
    for name, make, synth, lib in jobs:
        t0 = time.perf_counter()
        leaves, wires = [], []
        for _ in range(args.count):
            F = make()
            C = synth(F)
            if circuit_extract_gate(C) != F or library_violations(C, lib):
                failures += 1
            flat = flatten_circuit(C)
            leaves.append(len(flat.steps))
            wires.append(flat.wire_count)
        print(
            f"{name:18s} {args.count} targets ok  gates mean {np.mean(leaves):8.1f} max {max(leaves):6d}"
            f"  wires max {max(wires):3d}  ({time.perf_counter() - t0:.2f} s)"
        )
    print("all verified" if not failures else f"{failures} FAILURES")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
