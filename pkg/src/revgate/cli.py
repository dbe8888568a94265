"""Command line front end.

Exit codes: 0 success, 1 semantic negative (mismatch, non-membership, class
failure), 2 input error (parse failures, bad arguments, budgets).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analysis, group, lattice, synth
from .core import circuit_extract_gate, decode, format_word, parse_word
from .errors import AncillaViolation, BudgetExceeded, NotInClassError, RevGateError
from .formats import (
    compact_descriptor,
    parse_descriptor,
    read_circuit,
    read_gate,
    serialize_circuit,
    serialize_gate,
)

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class UsageError(RevGateError):
    pass


def _out(text: str, path=None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    gate = parse_descriptor(args.descriptor, args.k)
    _out(serialize_gate(gate), args.output)
    return OK


def cmd_synth(args) -> int:
    F = read_gate(args.target)
    lib = args.library
    try:
        if lib == "all":
            C = synth.synth_all(F)
        elif lib == "cons":
            C = synth.synth_cons(F)
        elif lib == "lambda":
            if args.arg is None:
                raise UsageError("library 'lambda' needs a partition, e.g. 12|3")
            C = synth.synth_cons_lambda(F, analysis.Partition.parse(args.arg, F.k))
        elif lib == "mod":
            if args.arg is None:
                raise UsageError("library 'mod' needs a modulus")
            C = synth.synth_mod_preserving(F, int(args.arg))
        elif lib == "cc":
            C = synth.synth_cc_from_gate(F)
        else:
            raise UsageError(f"unknown library {lib!r}")
    except NotInClassError as exc:
        print(f"not in class: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness input {format_word(exc.witness, F.k)}")
        return NEGATIVE
    _out(serialize_circuit(C), args.output)
    return OK


def first_mismatch(got, want):
    bad = np.flatnonzero(got.image != want.image)
    return None if bad.size == 0 else int(bad[0])


def cmd_verify(args) -> int:
    C = read_circuit(args.circuit)
    want = read_gate(args.gate)
    if want.k != C.k or want.arity != C.arity:
        print(f"FAIL: circuit has k={C.k}, {C.arity} inputs; gate has k={want.k}, arity {want.arity}")
        return NEGATIVE
    try:
        got = circuit_extract_gate(C)
    except AncillaViolation as exc:
        print(f"FAIL: {exc}")
        return NEGATIVE
    i = first_mismatch(got, want)
    if i is not None:
        w = decode(i, C.k, C.arity)
        print(
            f"FAIL: input {format_word(w, C.k)} maps to {format_word(got(w), C.k)}, "
            f"expected {format_word(want(w), C.k)}"
        )
        return NEGATIVE
    print(f"OK: circuit realises the gate on all {C.k ** C.arity} inputs, ancillas restored")
    return OK


def cmd_analyze(args) -> int:
    F = read_gate(args.gate)
    marked = None
    if args.marked is not None:
        marked = analysis.parse_symbol(args.marked, F.k)
    partitions = [analysis.Partition.parse(p, F.k) for p in args.partition] or [
        analysis.Partition.marked_split(F.k, marked)
    ]
    prof = analysis.mod_profile(F, marked)
    m = prof.gcd_value
    every = analysis.is_conservative(F)
    verdicts = []
    for lam in partitions:
        wit = analysis.conservation_witness(F, lam)
        verdicts.append((lam, wit))
    if every:
        head = f"m(F)={m}; conservative for every partition"
    else:
        bad = [str(lam) for lam, wit in verdicts if wit is not None]
        good = [str(lam) for lam, wit in verdicts if wit is None]
        parts = [f"m(F)={m}"]
        if bad:
            parts.append("not conservative for " + ", ".join(bad))
        if good:
            parts.append("conservative for " + ", ".join(good))
        head = "; ".join(parts)
    print(head)
    print(f"k={F.k} arity={F.arity}")
    print("bijective: yes")
    print("count differences: " + " ".join(str(d) for d in prof.diffs))
    for lam, wit in verdicts:
        if wit is None:
            print(f"{lam}: conservative")
        else:
            print(f"{lam}: not conservative (input {format_word(wit, F.k)} -> {format_word(F(wit), F.k)})")
    return OK


def lattice_dot(depth: int, highlight: int | None = None) -> str:
    """Hasse diagram of the classes above ``CONS_{k-1,1}`` for ``m = 1..depth``."""
    lines = ["digraph classes {", "  rankdir=TB;"]

    def name(m):
        return "CONS" if m == 0 else f"m{m}"

    def label(m):
        return analysis.class_label(m).replace('"', '\\"')

    for m in [*range(1, depth + 1), 0]:
        style = ", style=bold" if m == highlight else ""
        lines.append(f'  {name(m)} [label="{label(m)}"{style}];')
    for m in range(1, depth + 1):
        covers = [m * p for p in range(2, depth // m + 1) if _is_prime(p)]
        for c in covers:
            lines.append(f"  {name(m)} -> {name(c)};")
        if not covers:
            lines.append(f"  {name(m)} -> CONS [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def cmd_classify(args) -> int:
    gates = [read_gate(p) for p in args.gates]
    m = analysis.classify_above_cons(gates)
    print(f"{m} {analysis.class_label(m)}")
    if args.lattice_depth:
        sys.stdout.write(lattice_dot(args.lattice_depth, m))
    return OK


def _generators(args):
    gates = [compact_descriptor(tok, args.k) for tok in (args.gen or [])]
    gates += [read_gate(p) for p in (args.gen_file or [])]
    for g in gates:
        if g.k != args.k:
            raise UsageError(f"generator over {g.k} symbols, expected {args.k}")
    return gates


def _build_group(args):
    return group.PlacementGroup.from_gates(args.k, args.wires, _generators(args), everywhere=args.everywhere)


def cmd_closure(args) -> int:
    G = _build_group(args)
    elements = group.closure_bfs(G, args.cap)
    chain = group.StabilizerChain(G)
    print(f"order {len(elements)}")
    print(f"stabilizer chain order {chain.order()} (base {[b for b in chain.base]}); {G.scope()}")
    return OK if chain.order() == len(elements) else NEGATIVE


def _candidate(args):
    if args.candidate:
        return read_gate(args.candidate)
    if args.candidate_desc:
        return parse_descriptor(args.candidate_desc, args.k)
    raise UsageError("give --candidate FILE or --candidate-desc DESCRIPTOR")


def cmd_member(args) -> int:
    G = _build_group(args)
    F = _candidate(args)
    if args.ancilla:
        anc = []
        for item in args.ancilla:
            wire, _, sym = item.partition(":")
            anc.append((int(wire), analysis.parse_symbol(sym, args.k)))
        C = group.implementable_with_ancillas(G, F, anc)
        where = f"{G.scope()}, ancillas " + ", ".join(f"{w}:{s + 1}" for w, s in anc)
        if C is None:
            print(f"not implementable at {where} (fixed-width result)")
            return NEGATIVE
        print(f"implementable at {where}")
        _out(serialize_circuit(C), args.output)
        return OK
    if F.arity != args.wires:
        raise UsageError(f"candidate arity {F.arity} differs from --wires {args.wires}")
    ok, word = group.group_membership(G, F)
    if not ok:
        print(f"member: no ({G.scope()})")
        return NEGATIVE
    print(f"member: yes ({G.scope()}); word length {word.length}")
    if word.length <= 200:
        print("word: " + " ".join(str(t) for t in word.tokens()))
    return OK


def cmd_nonfingen(args) -> int:
    rep = lattice.nonfingen_certificate(args.n, args.k)
    if args.verbose:
        for line in rep.lines()[:-1]:
            print(line)
    print(rep.summary())
    return OK if rep.flag == "UNREACHABLE_PARITY" else NEGATIVE


def cmd_lift(args) -> int:
    if bool(args.gate) == bool(args.circuit):
        raise UsageError("give exactly one of --gate or --circuit")
    if args.gate:
        _out(serialize_gate(lattice.base_change(read_gate(args.gate))), args.output)
    else:
        _out(serialize_circuit(lattice.lift_circuit(read_circuit(args.circuit))), args.output)
    return OK


def cmd_act(args) -> int:
    F = read_gate(args.gate)
    sigma = parse_word(args.sigma, F.k)
    _out(serialize_gate(lattice.act_sigma(F, sigma)), args.output)
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="revgate", description="Reversible gate synthesis and analysis")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a builtin gate as a GateFile")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("descriptor", nargs="+")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("synth", help="synthesize a circuit over a generator library")
    s.add_argument("target")
    s.add_argument("library", choices=["all", "cons", "lambda", "mod", "cc"])
    s.add_argument("arg", nargs="?", help="partition for lambda, modulus for mod")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("verify", help="check a circuit against a gate")
    s.add_argument("circuit")
    s.add_argument("gate")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("analyze", help="invariants of a gate")
    s.add_argument("gate")
    s.add_argument("--partition", action="append", default=[])
    s.add_argument("--marked")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("classify", help="class generated above CONS_{k-1,1}")
    s.add_argument("gates", nargs="*")
    s.add_argument("--lattice-depth", type=int, default=0)
    s.set_defaults(func=cmd_classify)

    for name, func, help_ in (
        ("closure", cmd_closure, "order of the group generated at a fixed width"),
        ("member", cmd_member, "membership / ancilla implementability at a fixed width"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--wires", type=int, required=True)
        s.add_argument("--gen", nargs="*", help="compact generators, e.g. tau12 t1 cc2")
        s.add_argument("--gen-file", nargs="*")
        s.add_argument("--everywhere", action="store_true", help="place generators on every wire tuple")
        s.set_defaults(func=func)
        if name == "closure":
            s.add_argument("--cap", type=int, default=100_000)
        else:
            s.add_argument("--candidate")
            s.add_argument("--candidate-desc", nargs="+")
            s.add_argument("--ancilla", nargs="*", help="WIRE:SYMBOL pairs")
            s.add_argument("-o", "--output")

    s = sub.add_parser("nonfingen", help="parity certificate for the T_j family")
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_nonfingen)

    s = sub.add_parser("lift", help="base change to one more symbol")
    s.add_argument("--gate")
    s.add_argument("--circuit")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("act", help="apply a symbol permutation to a gate")
    s.add_argument("--gate", required=True)
    s.add_argument("--sigma", required=True, help="images of 1..k, e.g. 321")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_act)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotInClassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NEGATIVE
    except (RevGateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
