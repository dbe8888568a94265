"""Constructive synthesis over the ALL, CONS, CONS_lambda and mod-m libraries."""

from .ccgen import combine_single_generator, find_tensor_witness, g_circuit, synth_cc_from_gate
from .ladders import synth_controlled_swap, synth_controlled_tau
from .library import (
    GeneratorLibrary,
    all_gen,
    cons_gen,
    lambda_gen,
    library_violations,
    mod_gen,
    one_swap,
)
from .paths import (
    Adjacency,
    Exchange,
    Hamming,
    LambdaMoves,
    ModMoves,
    apply_transpositions,
    decompose_to_transpositions,
)
from .synthesis import (
    lambda_route,
    synth_all,
    synth_cons,
    synth_cons_lambda,
    synth_mod_preserving,
    transposition_circuit,
)

__all__ = [
    "Adjacency",
    "Exchange",
    "GeneratorLibrary",
    "Hamming",
    "LambdaMoves",
    "ModMoves",
    "all_gen",
    "apply_transpositions",
    "combine_single_generator",
    "cons_gen",
    "decompose_to_transpositions",
    "find_tensor_witness",
    "g_circuit",
    "lambda_gen",
    "lambda_route",
    "library_violations",
    "mod_gen",
    "one_swap",
    "synth_all",
    "synth_cc_from_gate",
    "synth_cons",
    "synth_cons_lambda",
    "synth_controlled_swap",
    "synth_controlled_tau",
    "synth_mod_preserving",
    "transposition_circuit",
]
