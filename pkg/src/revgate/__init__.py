"""Reversible gates over a finite alphabet: tables, circuits, synthesis,
invariants and permutation-group checks."""

from __future__ import annotations

from .analysis import (
    Partition,
    class_label,
    classify_above_cons,
    conservation_witness,
    is_conservative,
    is_conservative_lambda,
    is_mod_preserving,
    is_mod_respecting,
    m_invariant,
    mod_profile,
)
from .constructors import make_cc, make_controlled, make_perm_gate, make_swap, make_symbol_tau, make_t, make_tau
from .core import (
    Circuit,
    CircuitBuilder,
    Gate,
    Placement,
    circuit_extract_gate,
    circuit_full_gate,
    circuit_simulate,
    decode,
    encode,
    format_word,
    gate_compose,
    gate_inverse,
    gate_tensor,
    identity_gate,
    parse_word,
)
from .errors import (RevGateError, EncodingError, GateMismatchError, TableSizeError, CircuitError, AncillaViolation, NotInClassError, DisconnectedError, NoWitnessError, NoFixedPointError, BudgetExceeded, PreconditionError)
from .formats import parse_circuit, parse_descriptor, parse_gate, serialize_circuit, serialize_gate
from .group import PlacementGroup, StabilizerChain, closure_bfs, group_membership, implementable_with_ancillas
from .lattice import act_sigma, base_change, lift_circuit, nonfingen_certificate
from .synth import (
    synth_all,
    synth_cc_from_gate,
    synth_cons,
    synth_cons_lambda,
    synth_mod_preserving,
)

__version__ = "0.1.0"
