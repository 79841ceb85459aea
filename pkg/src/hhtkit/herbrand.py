"""Two-world models over the ground-term universe of a first-order
signature: collapse of extended terms via function tables, the satisfaction
relation including second-order quantification over concrete function and
predicate names, brute-force validity, and the model transfer from a
substitution plus a propositional interpretation.

Second-order quantifiers range over names represented directly by their
extensions: a function name is a total table over the universe, and a
predicate name is a persistent pair of relation extensions.  Enumerating
names therefore means enumerating extensions, which explodes quickly; every
entry point estimates the work first and refuses over-budget runs with the
computed count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import BudgetExceeded, NotClosed
from .instantiation import (
    EXACT,
    InstantiationMode,
    Substitution,
    herbrand_base,
    instantiate,
    universe,
)
from .semantics import HTInterpretation, World, satisfies
from .syntax import (
    Atom,
    Binary,
    Equals,
    Falsum,
    FnApp,
    FnNameApp,
    FnVarApp,
    FOFormula,
    FuncVar,
    GroundAtom,
    PredVar,
    Quant,
    Signature,
    Term,
    Var,
    eliminate_restrictors,
    free_variables,
    ground_atom_to_text,
)

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class FunctionName:
    """A concrete total function on the universe, acting as its own name."""

    arity: int
    table: tuple[tuple[tuple[Term, ...], Term], ...]

    def apply(self, args: tuple[Term, ...]) -> Term:
        for key, value in self.table:
            if key == args:
                return value
        raise KeyError(args)


@dataclass(frozen=True)
class PredicateName:
    """A persistent pair of relation extensions (here included in there)."""

    arity: int
    here: frozenset[tuple[Term, ...]]
    there: frozenset[tuple[Term, ...]]

    def __post_init__(self):
        if not self.here <= self.there:
            raise ValueError("here extension must be a subset of there")

    def world(self, w: World) -> frozenset[tuple[Term, ...]]:
        return self.here if w == World.H else self.there


@dataclass(frozen=True)
class HerbrandInterpretation:
    """Pair of ground-atom sets over the Herbrand base, here inside there."""

    signature: Signature
    here: frozenset[GroundAtom]
    there: frozenset[GroundAtom]

    def __post_init__(self):
        if not self.here <= self.there:
            raise ValueError("here must be a subset of there")

    def world(self, w: World) -> frozenset[GroundAtom]:
        return self.here if w == World.H else self.there

    def atom_state(self, atom: GroundAtom) -> str:
        if atom in self.here:
            return "both"
        if atom in self.there:
            return "there-only"
        return "absent"


def hat_eval(t: Term) -> Term:
    """Collapse a ground extended term to a plain ground term by applying
    function tables; plain constants and constructors map to themselves."""
    return _hat(t, {})


def _hat(t: Term, env: Mapping) -> Term:
    match t:
        case Var():
            got = env.get(t)
            if got is None:
                raise NotClosed(f"unbound variable {t.name}")
            return got
        case FnApp(fn, args):
            return FnApp(fn, tuple(_hat(a, env) for a in args))
        case FnNameApp(name, args):
            return name.apply(tuple(_hat(a, env) for a in args))
        case FnVarApp(v, args):
            got = env.get(v)
            if got is None:
                raise NotClosed(f"unbound function variable {v.name}")
            return got.apply(tuple(_hat(a, env) for a in args))
    raise TypeError(f"not a term: {t!r}")


def all_function_names(terms: tuple[Term, ...], arity: int) -> Iterator[FunctionName]:
    keys = tuple(itertools.product(terms, repeat=arity))
    for values in itertools.product(terms, repeat=len(keys)):
        yield FunctionName(arity, tuple(zip(keys, values)))


def all_predicate_names(terms: tuple[Term, ...], arity: int) -> Iterator[PredicateName]:
    keys = tuple(itertools.product(terms, repeat=arity))
    for states in itertools.product((0, 1, 2), repeat=len(keys)):
        here = frozenset(k for k, s in zip(keys, states) if s == 2)
        there = frozenset(k for k, s in zip(keys, states) if s != 0)
        yield PredicateName(arity, here, there)


def count_function_names(universe_size: int, arity: int) -> int:
    return universe_size ** (universe_size**arity)


def count_predicate_names(universe_size: int, arity: int) -> int:
    return 3 ** (universe_size**arity)


def estimate_cost(f: FOFormula, universe_size: int) -> int:
    """Worst-case satisfaction checks for one interpretation."""
    match f:
        case Falsum() | Equals() | Atom():
            return 1
        case Binary("->", l, r):
            return 2 * (estimate_cost(l, universe_size) + estimate_cost(r, universe_size)) + 1
        case Binary(_, l, r):
            return estimate_cost(l, universe_size) + estimate_cost(r, universe_size) + 1
        case Quant(_, binder, body):
            inner = estimate_cost(body, universe_size)
            if isinstance(binder, PredVar):
                return count_predicate_names(universe_size, binder.arity) * inner + 1
            if isinstance(binder, FuncVar):
                return count_function_names(universe_size, binder.arity) * inner + 1
            # object variable or generalized variable (per bound variable)
            width = 1 if isinstance(binder, Var) else len(binder.items)
            return universe_size**width * inner + 1
    raise TypeError(f"not a formula: {f!r}")


def h_satisfies(
    j: HerbrandInterpretation,
    w: World,
    f: FOFormula,
    mode: InstantiationMode = EXACT,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Satisfaction of a closed (possibly second-order) formula.

    Object quantifiers range over the universe of `mode`; function and
    predicate quantifiers range over all names of matching arity.  With a
    Bounded mode the verdict is a truncated approximation.
    """
    f = eliminate_restrictors(f)
    terms = universe(j.signature, mode)
    cost = estimate_cost(f, len(terms))
    if cost > budget:
        raise BudgetExceeded(cost, budget)
    if free_variables(f):
        raise NotClosed("satisfaction is defined for closed formulas")
    return _sat(j, w, f, terms, {})


def _sat(
    j: HerbrandInterpretation,
    w: World,
    f: FOFormula,
    terms: tuple[Term, ...],
    env: dict,
) -> bool:
    match f:
        case Falsum():
            return False
        case Equals(l, r):
            return _hat(l, env) == _hat(r, env)
        case Atom(pred, args):
            hatted = tuple(_hat(a, env) for a in args)
            if isinstance(pred, PredVar):
                name = env.get(pred)
                if name is None:
                    raise NotClosed(f"unbound predicate variable {pred.name}")
                return hatted in name.world(w)
            if isinstance(pred, PredicateName):
                return hatted in pred.world(w)
            return GroundAtom(pred, hatted) in j.world(w)
        case Binary("&", l, r):
            return _sat(j, w, l, terms, env) and _sat(j, w, r, terms, env)
        case Binary("|", l, r):
            return _sat(j, w, l, terms, env) or _sat(j, w, r, terms, env)
        case Binary("->", l, r):
            for w2 in (World.H, World.T):
                if w2 >= w and _sat(j, w2, l, terms, env) and not _sat(j, w2, r, terms, env):
                    return False
            return True
        case Quant(kind, binder, body):
            if isinstance(binder, Var):
                domain: Iterable = terms
            elif isinstance(binder, FuncVar):
                domain = all_function_names(terms, binder.arity)
            elif isinstance(binder, PredVar):
                domain = all_predicate_names(terms, binder.arity)
            else:
                raise TypeError("generalized variables must be eliminated first")
            shadowed = env.get(binder)
            want_all = kind == "forall"
            result = want_all
            for d in domain:
                env[binder] = d
                hit = _sat(j, w, body, terms, env)
                if hit != want_all:
                    result = not want_all
                    break
            if shadowed is None:
                env.pop(binder, None)
            else:
                env[binder] = shadowed
            return result
    raise TypeError(f"not a formula: {f!r}")


def enumerate_herbrand(
    sig: Signature, base: tuple[GroundAtom, ...]
) -> Iterator[HerbrandInterpretation]:
    """All interpretations over the base in canonical order: atoms sorted by
    rendered text, per-atom states absent < there-only < both, first atom
    most significant."""
    for states in itertools.product((0, 1, 2), repeat=len(base)):
        here = frozenset(a for a, s in zip(base, states) if s == 2)
        there = frozenset(a for a, s in zip(base, states) if s != 0)
        yield HerbrandInterpretation(sig, here, there)


def hht_valid_bruteforce(
    sig: Signature,
    f: FOFormula,
    mode: InstantiationMode = EXACT,
    budget: int = DEFAULT_BUDGET,
) -> HerbrandInterpretation | None:
    """Check satisfaction at world h under every interpretation over the
    Herbrand base; None when valid, else the first failure in canonical
    order.  Exact mode is the real thing; Bounded mode is a labeled,
    non-validity-preserving approximation."""
    f = eliminate_restrictors(f)
    terms = universe(sig, mode)
    base = herbrand_base(sig, terms)
    cost = (3 ** len(base)) * estimate_cost(f, len(terms))
    if cost > budget:
        raise BudgetExceeded(cost, budget)
    if free_variables(f):
        raise NotClosed("validity checking needs a closed formula")
    for j in enumerate_herbrand(sig, base):
        if not _sat(j, World.H, f, terms, {}):
            return j
    return None


def render_herbrand_countermodel(
    j: HerbrandInterpretation, base: Iterable[GroundAtom]
) -> str:
    lines = []
    for atom in sorted(set(base), key=ground_atom_to_text):
        lines.append(f"{ground_atom_to_text(atom)}: {j.atom_state(atom)}")
    return "\n".join(lines)


def lift(subst: Substitution, i: HTInterpretation) -> HerbrandInterpretation:
    """Build the interpretation that satisfies a ground atom at a world
    exactly when `i` satisfies the atom's image under the substitution."""
    sig = subst.signature
    terms = universe(sig, EXACT)
    base = herbrand_base(sig, terms)
    here = []
    there = []
    for atom in base:
        image = subst.lookup(atom)
        if satisfies(i, World.H, image):
            here.append(atom)
        if satisfies(i, World.T, image):
            there.append(atom)
    return HerbrandInterpretation(sig, frozenset(here), frozenset(there))


def lifting_check(
    subst: Substitution,
    i: HTInterpretation,
    f: FOFormula,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Whether satisfaction of `f` under the lifted interpretation agrees
    with satisfaction of the instance under `i`, at both worlds."""
    j = lift(subst, i)
    instance = instantiate(subst, f, EXACT)
    for w in (World.H, World.T):
        if h_satisfies(j, w, f, EXACT, budget) != satisfies(i, w, instance):
            return False
    return True
