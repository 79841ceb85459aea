"""Substitutions mapping ground atoms to propositional formulas, and the
instance operation turning a closed first-order formula (restrictors
allowed) into a propositional formula.

Exact mode requires every function constant to be nullary, so the term
universe is finite and the instance is faithful.  Bounded mode truncates
the universe at a term depth and is not validity-preserving; every consumer
labels its results accordingly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    InfiniteUniverse,
    NotClosed,
    NotFirstOrder,
    SubstitutionError,
    UnmappedAtom,
)
from .syntax import (
    BOT,
    TOP,
    Atom,
    Binary,
    Equals,
    Falsum,
    FnApp,
    FOFormula,
    GenVar,
    GroundAtom,
    PAnd,
    PImp,
    POr,
    PropFormula,
    Quant,
    Signature,
    Term,
    Var,
    const,
    formula_to_text,
    free_variables,
    ground_atom_to_text,
    is_first_order,
    substitute_term,
    term_to_text,
)


@dataclass(frozen=True)
class Exact:
    pass


@dataclass(frozen=True)
class Bounded:
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")


InstantiationMode = Exact | Bounded

EXACT = Exact()


def term_depth(t: Term) -> int:
    match t:
        case FnApp(_, args) if args:
            return 1 + max(term_depth(a) for a in args)
        case _:
            return 0


def ground_terms(sig: Signature, depth: int) -> tuple[Term, ...]:
    """All ground terms of depth <= `depth`, sorted by (depth, text)."""
    layers: list[list[Term]] = [[const(c) for c in sig.object_constants()]]
    pool: list[Term] = list(layers[0])
    for _ in range(depth):
        prev = pool[:]
        layer: list[Term] = []
        for name, arity in sig.nonnullary_functions():
            for args in itertools.product(prev, repeat=arity):
                t = FnApp(name, args)
                if term_depth(t) == len(layers):
                    layer.append(t)
        layers.append(layer)
        pool.extend(layer)
    return tuple(sorted(pool, key=lambda t: (term_depth(t), term_to_text(t))))


def universe(sig: Signature, mode: InstantiationMode) -> tuple[Term, ...]:
    if isinstance(mode, Exact):
        extra = sig.nonnullary_functions()
        if extra:
            names = ", ".join(f"{n}/{a}" for n, a in extra)
            raise InfiniteUniverse(
                f"exact mode needs a nullary-only signature (found {names})"
            )
        return tuple(const(c) for c in sig.object_constants())
    return ground_terms(sig, mode.depth)


class Substitution:
    """Total map from ground atoms to propositional formulas, represented
    by explicit entries plus optional per-predicate defaults.

    Entries and defaults for restrictor predicates must be `top` or `bot`.
    """

    def __init__(
        self,
        signature: Signature,
        entries: Mapping[GroundAtom, PropFormula] = (),
        defaults: Mapping[str, PropFormula] = (),
    ):
        self.signature = signature
        self.entries = dict(entries.items() if isinstance(entries, Mapping) else entries)
        self.defaults = dict(defaults.items() if isinstance(defaults, Mapping) else defaults)
        for atom, image in self.entries.items():
            arity = signature.predicate_arity(atom.pred)
            if arity is None:
                raise SubstitutionError(f"unknown predicate {atom.pred}")
            if arity != len(atom.args):
                raise SubstitutionError(
                    f"arity mismatch for {ground_atom_to_text(atom)} (expected {arity} args)"
                )
            if signature.is_restrictor(atom.pred) and image not in (TOP, BOT):
                raise SubstitutionError(
                    f"restrictor atom {ground_atom_to_text(atom)} must map to top or bot"
                )
        for pred, image in self.defaults.items():
            if signature.predicate_arity(pred) is None:
                raise SubstitutionError(f"unknown predicate {pred}")
            if signature.is_restrictor(pred) and image not in (TOP, BOT):
                raise SubstitutionError(f"restrictor default {pred} must be top or bot")

    def lookup(self, atom: GroundAtom) -> PropFormula:
        got = self.entries.get(atom)
        if got is not None:
            return got
        got = self.defaults.get(atom.pred)
        if got is not None:
            return got
        raise UnmappedAtom(ground_atom_to_text(atom))


def lookup(subst: Substitution, atom: GroundAtom) -> PropFormula:
    return subst.lookup(atom)


def _check_preconditions(f: FOFormula) -> None:
    free = free_variables(f)
    if free:
        names = sorted(getattr(v, "name", str(v)) for v in free)
        raise NotClosed(f"free variables: {', '.join(names)}")
    if not is_first_order(f):
        raise NotFirstOrder(formula_to_text(f))


def instantiate(
    subst: Substitution, f: FOFormula, mode: InstantiationMode = EXACT
) -> PropFormula:
    """Compute the instance of a closed first-order formula.

    Equality of ground terms maps to top/bot by syntactic identity;
    quantifiers expand to set conjunctions/disjunctions over the mode's
    universe; quantifiers over generalized variables range over exactly the
    tuples whose restrictor images are all top.
    """
    _check_preconditions(f)
    terms = universe(subst.signature, mode)
    return _instantiate(subst, f, terms, None)


def validate(
    subst: Substitution, f: FOFormula, mode: InstantiationMode = EXACT
) -> tuple[str, ...]:
    """Report every reachable atom lacking an entry and default, sorted.

    Tuples whose restrictor guard cannot be evaluated contribute the guard
    atom itself; their bodies are skipped, matching where `instantiate`
    would fail first.
    """
    _check_preconditions(f)
    terms = universe(subst.signature, mode)
    missing: set[str] = set()
    _instantiate(subst, f, terms, missing)
    return tuple(sorted(missing))


def _instantiate(
    subst: Substitution,
    f: FOFormula,
    terms: tuple[Term, ...],
    missing: set[str] | None,
) -> PropFormula:
    def image(atom: GroundAtom) -> PropFormula:
        try:
            return subst.lookup(atom)
        except UnmappedAtom:
            if missing is None:
                raise
            missing.add(ground_atom_to_text(atom))
            return BOT

    def guard_ok(items: tuple, choice: tuple[Term, ...]) -> bool:
        ok = True
        for (_, restrictor), t in zip(items, choice):
            got = image(GroundAtom(restrictor, (t,)))
            if got != TOP:
                ok = False
        return ok

    def rec(g: FOFormula) -> PropFormula:
        match g:
            case Falsum():
                return BOT
            case Equals(l, r):
                return TOP if l == r else BOT
            case Atom(pred, args):
                return image(GroundAtom(pred, args))
            case Binary("&", l, r):
                return PAnd((rec(l), rec(r)))
            case Binary("|", l, r):
                return POr((rec(l), rec(r)))
            case Binary("->", l, r):
                return PImp(rec(l), rec(r))
            case Quant(kind, Var() as v, body):
                children = (rec(substitute_term(body, v, t)) for t in terms)
                return PAnd(children) if kind == "forall" else POr(children)
            case Quant(kind, GenVar(items) as gv, body):
                children = []
                for choice in itertools.product(terms, repeat=len(items)):
                    if not guard_ok(items, choice):
                        continue
                    inst = body
                    for v, t in zip(gv.variables(), choice):
                        inst = substitute_term(inst, v, t)
                    children.append(rec(inst))
                return PAnd(children) if kind == "forall" else POr(children)
        raise TypeError(f"unexpected formula node: {g!r}")

    return rec(f)


def herbrand_base(sig: Signature, terms: Iterable[Term]) -> tuple[GroundAtom, ...]:
    """All ground predicate-constant atoms over the given universe, sorted
    by rendered text."""
    terms = tuple(terms)
    atoms = []
    for pred, arity in sig.predicates:
        for args in itertools.product(terms, repeat=arity):
            atoms.append(GroundAtom(pred, args))
    return tuple(sorted(atoms, key=ground_atom_to_text))
