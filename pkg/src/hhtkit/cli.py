"""Command-line front door.

Subcommands wire the parser, proof kernel, instantiation and the two model
checkers into a pipeline: an accepted proof plus an exact instantiation is
certified by exhaustive validity checking of the instance.  Bounded-depth
instantiation is a labeled approximation and never certifies.

Exit codes: 0 success/valid (exact mode only), 1 rejected or countermodel
or non-certifying, 2 usage, format or resource errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import (
    BudgetExceeded,
    ConclusionNotClosed,
    ConclusionNotFirstOrder,
    HhtError,
    ParseError,
    ProofError,
)
from .herbrand import (
    DEFAULT_BUDGET,
    herbrand_base,
    hht_valid_bruteforce,
    render_herbrand_countermodel,
)
from .instantiation import EXACT, Bounded, universe, validate, instantiate
from .kernel import check_proof, conclusion_for_pipeline
from .parser import (
    parse_formula_file,
    parse_proof_file,
    parse_prop_file,
    parse_subst_file,
)
from .render import render_justification
from .semantics import (
    DEFAULT_ATOM_LIMIT,
    STATE_NAMES,
    ht_valid,
    render_countermodel,
)
from .syntax import (
    eliminate_restrictors,
    formula_to_text,
    prop_atoms,
    prop_node_count,
    prop_to_text,
    rank,
)

BUDGET_ENV = "HHTKIT_BUDGET"


def _budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
        if value <= 0:
            raise ValueError
    except ValueError:
        raise HhtError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    return value


def _atom_limit() -> int:
    # one budget knob: with the env var set, allow as many atoms as fit in
    # that many enumerated interpretations
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_ATOM_LIMIT
    budget = _budget()
    n = 0
    while 3 ** (n + 1) <= budget:
        n += 1
    return max(1, n)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


class _Report:
    def __init__(self, command: str, as_json: bool):
        self.data: dict = {"command": command}
        self.as_json = as_json
        self.lines: list[str] = []

    def say(self, text: str) -> None:
        self.lines.append(text)

    def emit(self, exit_code: int) -> int:
        self.data["exit"] = exit_code
        if self.as_json:
            print(json.dumps(self.data, indent=2))
        else:
            print("\n".join(self.lines))
        return exit_code


def _stage(report: _Report, name: str, started: float, **fields) -> float:
    seconds = round(time.perf_counter() - started, 6)
    fields["seconds"] = seconds
    report.data[name] = fields
    return seconds


def _mode_from_args(args) -> tuple:
    if getattr(args, "depth", None) is not None:
        return Bounded(args.depth), f"bounded depth {args.depth} (non-validity-preserving)"
    return EXACT, "exact"


def _cmd_check_proof(args, report: _Report) -> int:
    t0 = time.perf_counter()
    proof = parse_proof_file(_read(args.proof_file))
    try:
        conclusion = check_proof(proof)
    except ProofError as e:
        claimed = ""
        if 1 <= e.line <= len(proof.lines):
            claimed = render_justification(proof.lines[e.line - 1].justification)
        _stage(report, "proof", t0, verdict="rejected", line=e.line,
               kind=type(e).__name__, reason=e.reason, justification=claimed)
        report.say(f"proof: REJECTED at line {e.line}: {type(e).__name__}: {e.reason}")
        if claimed:
            report.say(f"claimed justification: {claimed}")
        return report.emit(1)
    _stage(report, "proof", t0, verdict="accepted", level=proof.level.value,
           lines=len(proof.lines), conclusion=formula_to_text(conclusion))
    report.say(f"proof: accepted (level {proof.level.value}, {len(proof.lines)} lines)")
    report.say(f"conclusion: {formula_to_text(conclusion)}")
    return report.emit(0)


def _cmd_eliminate(args, report: _Report) -> int:
    _, f = parse_formula_file(_read(args.formula_file))
    out = formula_to_text(eliminate_restrictors(f))
    report.data["formula"] = out
    report.say(out)
    return report.emit(0)


def _instance_stats(instance) -> dict:
    return {
        "atoms": len(prop_atoms(instance)),
        "rank": rank(instance),
        "nodes": prop_node_count(instance),
    }


def _cmd_instantiate(args, report: _Report) -> int:
    sig, f = parse_formula_file(_read(args.formula_file))
    subst = parse_subst_file(_read(args.subst_file))
    if subst.signature != sig:
        raise HhtError("formula and substitution files declare different signatures")
    mode, mode_label = _mode_from_args(args)
    t0 = time.perf_counter()
    missing = validate(subst, f, mode)
    if missing:
        report.data["missing"] = list(missing)
        report.say("substitution is missing entries for: " + ", ".join(missing))
        return report.emit(2)
    instance = instantiate(subst, f, mode)
    stats = _instance_stats(instance)
    _stage(report, "instantiation", t0, mode=mode_label, **stats)
    report.data["instance"] = prop_to_text(instance)
    report.say(f"mode: {mode_label}")
    report.say(f"instance: {prop_to_text(instance)}")
    report.say(f"atoms={stats['atoms']} rank={stats['rank']} nodes={stats['nodes']}")
    return report.emit(0)


def _states(counter, atoms) -> dict[str, str]:
    return {a: STATE_NAMES[counter.atom_state(a)] for a in atoms}


def _validity_verdict(report: _Report, instance, label: str) -> tuple[int, bool]:
    t0 = time.perf_counter()
    counter = ht_valid(instance, atom_limit=_atom_limit())
    atoms = sorted(prop_atoms(instance))
    if counter is None:
        secs = _stage(report, "validity", t0, verdict="valid")
        report.say(f"validity: HT-valid ({label}) [{secs * 1000:.1f} ms]")
        return 0, True
    secs = _stage(report, "validity", t0, verdict="countermodel",
                  countermodel=_states(counter, atoms))
    report.say(f"validity: countermodel found ({label}) [{secs * 1000:.1f} ms]")
    report.say(render_countermodel(counter, atoms))
    return 1, False


def _cmd_ht_valid(args, report: _Report, countermodel_view: bool = False) -> int:
    f = parse_prop_file(_read(args.prop_file))
    t0 = time.perf_counter()
    counter = ht_valid(f, atom_limit=_atom_limit())
    atoms = sorted(prop_atoms(f))
    if counter is None:
        _stage(report, "validity", t0, verdict="valid")
        report.say("HT-valid" if not countermodel_view else "no countermodel: formula is HT-valid")
        return report.emit(0)
    _stage(report, "validity", t0, verdict="countermodel",
           countermodel=_states(counter, atoms))
    if not countermodel_view:
        report.say("countermodel found:")
    report.say(render_countermodel(counter, atoms))
    return report.emit(1)


def _cmd_herbrand_check(args, report: _Report) -> int:
    sig, f = parse_formula_file(_read(args.formula_file))
    budget = args.budget if args.budget is not None else _budget()
    mode, mode_label = _mode_from_args(args)
    t0 = time.perf_counter()
    counter = hht_valid_bruteforce(sig, f, mode, budget)
    base = herbrand_base(sig, universe(sig, mode))
    if counter is None:
        _stage(report, "validity", t0, verdict="valid", mode=mode_label)
        report.say(f"valid over all interpretations ({mode_label})")
        if mode != EXACT:
            report.say("bounded mode: non-validity-preserving")
        return report.emit(0 if mode == EXACT else 1)
    rendering = render_herbrand_countermodel(counter, base)
    _stage(report, "validity", t0, verdict="countermodel", mode=mode_label)
    report.say(f"countermodel found ({mode_label}):")
    report.say(rendering)
    return report.emit(1)


def _cmd_pipeline(args, report: _Report) -> int:
    t0 = time.perf_counter()
    proof = parse_proof_file(_read(args.proof_file))
    try:
        check_proof(proof)
    except ProofError as e:
        claimed = ""
        if 1 <= e.line <= len(proof.lines):
            claimed = render_justification(proof.lines[e.line - 1].justification)
        _stage(report, "proof", t0, verdict="rejected", line=e.line,
               kind=type(e).__name__, reason=e.reason, justification=claimed)
        report.say(f"proof: REJECTED at line {e.line}: {type(e).__name__}: {e.reason}")
        if claimed:
            report.say(f"claimed justification: {claimed}")
        return report.emit(1)
    try:
        conclusion = conclusion_for_pipeline(proof)
    except (ConclusionNotFirstOrder, ConclusionNotClosed) as e:
        _stage(report, "proof", t0, verdict="rejected", kind=type(e).__name__,
               reason=str(e))
        report.say(f"proof: conclusion unusable: {type(e).__name__}: {e}")
        return report.emit(1)
    secs = _stage(report, "proof", t0, verdict="accepted", level=proof.level.value,
                  lines=len(proof.lines), conclusion=formula_to_text(conclusion))
    report.say(f"proof: accepted (level {proof.level.value}, "
               f"{len(proof.lines)} lines) [{secs * 1000:.1f} ms]")
    report.say(f"conclusion: {formula_to_text(conclusion)}")

    subst = parse_subst_file(_read(args.subst_file))
    if subst.signature != proof.signature:
        raise HhtError("proof and substitution files declare different signatures")
    mode, mode_label = _mode_from_args(args)
    t1 = time.perf_counter()
    missing = validate(subst, conclusion, mode)
    if missing:
        report.data["missing"] = list(missing)
        report.say("substitution is missing entries for: " + ", ".join(missing))
        return report.emit(2)
    instance = instantiate(subst, conclusion, mode)
    stats = _instance_stats(instance)
    secs = _stage(report, "instantiation", t1, mode=mode_label, **stats)
    report.say(f"instantiation: {mode_label}; atoms={stats['atoms']} "
               f"rank={stats['rank']} nodes={stats['nodes']} [{secs * 1000:.1f} ms]")

    code, valid = _validity_verdict(report, instance, mode_label)
    exact = mode == EXACT
    certifying = exact and valid
    report.data["certifying"] = certifying
    if certifying:
        report.say("certificate: VALID (accepted proof + exact instance)")
        return report.emit(0)
    if valid:
        report.say("certificate: NOT CERTIFYING (bounded mode: non-validity-preserving)")
        return report.emit(1)
    if not exact:
        report.say("certificate: NOT CERTIFYING (bounded mode: non-validity-preserving)")
    else:
        report.say("certificate: FAILED (countermodel for an exact instance "
                   "of an accepted conclusion)")
    return report.emit(1)


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a machine-readable report")
    ap = argparse.ArgumentParser(
        prog="hhtkit",
        description="check Hilbert-style proofs and certify instances by "
        "exhaustive two-world model checking",
    )
    ap.add_argument("--json", action="store_true", dest="json_global",
                    help=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-proof", parents=[common], help="verify a proof file")
    p.add_argument("proof_file")

    p = sub.add_parser("instantiate", parents=[common],
                       help="compute the instance of a formula")
    p.add_argument("formula_file")
    p.add_argument("subst_file")
    p.add_argument("--depth", type=int, default=None,
                   help="bounded universe depth (approximate)")

    p = sub.add_parser("ht-valid", parents=[common],
                       help="exhaustively check a propositional formula")
    p.add_argument("prop_file")

    p = sub.add_parser("countermodel", parents=[common], help="search for a countermodel")
    p.add_argument("prop_file")

    p = sub.add_parser("eliminate-restrictors", parents=[common],
                       help="unfold generalized variables")
    p.add_argument("formula_file")

    p = sub.add_parser("herbrand-check", parents=[common],
                       help="brute-force validity over ground-term models")
    p.add_argument("formula_file")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--depth", type=int, default=None,
                   help="bounded universe depth (approximate)")

    p = sub.add_parser("pipeline", parents=[common],
                       help="proof -> instance -> validity certificate")
    p.add_argument("proof_file")
    p.add_argument("subst_file")
    p.add_argument("--depth", type=int, default=None,
                   help="bounded universe depth (approximate, never certifies)")
    return ap


def run(argv: list[str] | None = None) -> int:
    ap = build_arg_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    report = _Report(args.command, args.json or args.json_global)
    handlers = {
        "check-proof": _cmd_check_proof,
        "instantiate": _cmd_instantiate,
        "ht-valid": _cmd_ht_valid,
        "countermodel": lambda a, r: _cmd_ht_valid(a, r, countermodel_view=True),
        "eliminate-restrictors": _cmd_eliminate,
        "herbrand-check": _cmd_herbrand_check,
        "pipeline": _cmd_pipeline,
    }
    try:
        return handlers[args.command](args, report)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ParseError, BudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (HhtError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
