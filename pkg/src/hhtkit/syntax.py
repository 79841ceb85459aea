"""Syntax of signatures, terms, first/second-order formulas, and
finitely-represented infinitary propositional formulas.

First-order formulas keep `&`, `|`, `->` and `bot` primitive; `not F`,
`F <-> G`, `top` and `t1 != t2` are abbreviations introduced by the parser
and re-sugared by the printer.  Propositional conjunctions/disjunctions are
sets of children (duplicate-free by construction), so `top` is the empty
conjunction and `bot` the empty disjunction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import CaptureViolation, SignatureError

# ---------------------------------------------------------------------------
# signatures

@dataclass(frozen=True)
class Signature:
    """Function and predicate constants with arities, plus restrictor flags.

    Nullary function constants are the object constants.  Invariants: at
    least one object constant, restrictors are unary predicates, and no name
    is both a function and a predicate constant.
    """

    functions: tuple[tuple[str, int], ...]
    predicates: tuple[tuple[str, int], ...]
    restrictors: frozenset[str]

    @staticmethod
    def make(
        functions: Mapping[str, int] | Iterable[tuple[str, int]] = (),
        predicates: Mapping[str, int] | Iterable[tuple[str, int]] = (),
        restrictors: Iterable[str] = (),
    ) -> "Signature":
        fns = dict(functions.items() if isinstance(functions, Mapping) else functions)
        preds = dict(predicates.items() if isinstance(predicates, Mapping) else predicates)
        rs = frozenset(restrictors)
        for name, arity in list(fns.items()) + list(preds.items()):
            if arity < 0:
                raise SignatureError(f"negative arity for {name}")
        if not any(a == 0 for a in fns.values()):
            raise SignatureError("signature must contain at least one object constant")
        clash = set(fns) & set(preds)
        if clash:
            raise SignatureError(f"names used as both function and predicate constants: {sorted(clash)}")
        for r in rs:
            if preds.get(r) != 1:
                raise SignatureError(f"restrictor {r} must be a declared unary predicate")
        return Signature(
            tuple(sorted(fns.items())),
            tuple(sorted(preds.items())),
            rs,
        )

    def function_arity(self, name: str) -> int | None:
        return dict(self.functions).get(name)

    def predicate_arity(self, name: str) -> int | None:
        return dict(self.predicates).get(name)

    def is_restrictor(self, name: str) -> bool:
        return name in self.restrictors

    def object_constants(self) -> tuple[str, ...]:
        return tuple(n for n, a in self.functions if a == 0)

    def nonnullary_functions(self) -> tuple[tuple[str, int], ...]:
        return tuple((n, a) for n, a in self.functions if a > 0)


# ---------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class PredVar:
    """Second-order predicate variable with a declared arity."""

    name: str
    arity: int


@dataclass(frozen=True)
class FuncVar:
    """Second-order function variable with a declared arity."""

    name: str
    arity: int


@dataclass(frozen=True)
class FnApp:
    """Application of a function constant; nullary applications are constants."""

    fn: str
    args: tuple = ()


@dataclass(frozen=True)
class FnVarApp:
    var: FuncVar
    args: tuple


@dataclass(frozen=True)
class FnNameApp:
    """Application of a concrete function table (see herbrand.FunctionName)."""

    name: object
    args: tuple


Term = Union[Var, FnApp, FnVarApp, FnNameApp]


def const(name: str) -> FnApp:
    return FnApp(name, ())


def term_variables(t: Term) -> frozenset:
    """Object and function variables occurring in a term."""
    match t:
        case Var():
            return frozenset((t,))
        case FnApp(_, args) | FnNameApp(_, args):
            out: frozenset = frozenset()
            for a in args:
                out |= term_variables(a)
            return out
        case FnVarApp(v, args):
            out = frozenset((v,))
            for a in args:
                out |= term_variables(a)
            return out
    raise TypeError(f"not a term: {t!r}")


def term_is_ground(t: Term) -> bool:
    return not term_variables(t)


def term_is_first_order(t: Term) -> bool:
    """True when the term is built from object variables and signature
    function constants only (no function variables or concrete tables)."""
    match t:
        case Var():
            return True
        case FnApp(_, args):
            return all(term_is_first_order(a) for a in args)
        case _:
            return False


# ---------------------------------------------------------------------------
# first/second-order formulas

@dataclass(frozen=True)
class Falsum:
    pass


BOTTOM = Falsum()


@dataclass(frozen=True)
class Equals:
    left: Term
    right: Term


@dataclass(frozen=True)
class Atom:
    """Predicate application. `pred` is a predicate-constant name, a
    PredVar, or (during Herbrand evaluation) a concrete PredicateName."""

    pred: object
    args: tuple = ()


@dataclass(frozen=True)
class Binary:
    op: str  # "&", "|" or "->"
    left: "FOFormula"
    right: "FOFormula"


@dataclass(frozen=True)
class GenVar:
    """Generalized variable: nonempty list of (variable, restrictor) pairs
    with distinct variables."""

    items: tuple[tuple[Var, str], ...]

    def __post_init__(self):
        if len(self.items) < 1:
            raise ValueError("generalized variable needs at least one item")
        names = [v.name for v, _ in self.items]
        if len(set(names)) != len(names):
            raise ValueError("generalized variable requires distinct variables")

    def variables(self) -> tuple[Var, ...]:
        return tuple(v for v, _ in self.items)


Binder = Union[Var, GenVar, PredVar, FuncVar]


@dataclass(frozen=True)
class Quant:
    kind: str  # "forall" | "exists"
    binder: Binder
    body: "FOFormula"


FOFormula = Union[Falsum, Equals, Atom, Binary, Quant]

TRUTH = Binary("->", BOTTOM, BOTTOM)


def conj(left: FOFormula, right: FOFormula) -> Binary:
    return Binary("&", left, right)


def disj(left: FOFormula, right: FOFormula) -> Binary:
    return Binary("|", left, right)


def impl(left: FOFormula, right: FOFormula) -> Binary:
    return Binary("->", left, right)


def neg(f: FOFormula) -> Binary:
    return Binary("->", f, BOTTOM)


def iff(left: FOFormula, right: FOFormula) -> Binary:
    return conj(impl(left, right), impl(right, left))


def conj_all(formulas: Iterable[FOFormula]) -> FOFormula:
    """Left-associated chain; empty input yields `top`."""
    items = list(formulas)
    if not items:
        return TRUTH
    out = items[0]
    for f in items[1:]:
        out = conj(out, f)
    return out


def binder_variables(binder: Binder) -> frozenset:
    if isinstance(binder, GenVar):
        return frozenset(binder.variables())
    return frozenset((binder,))


def free_variables(f: FOFormula) -> frozenset:
    """Free object, predicate and function variables of a formula."""
    match f:
        case Falsum():
            return frozenset()
        case Equals(l, r):
            return term_variables(l) | term_variables(r)
        case Atom(p, args):
            out = frozenset((p,)) if isinstance(p, PredVar) else frozenset()
            for a in args:
                out |= term_variables(a)
            return out
        case Binary(_, l, r):
            return free_variables(l) | free_variables(r)
        case Quant(_, binder, body):
            return free_variables(body) - binder_variables(binder)
    raise TypeError(f"not a formula: {f!r}")


def is_closed(f: FOFormula) -> bool:
    return not free_variables(f)


def is_first_order(f: FOFormula) -> bool:
    """True when no predicate or function variable occurs, bound or free.
    Generalized variables are allowed."""

    def term_ok(t: Term) -> bool:
        match t:
            case Var():
                return True
            case FnApp(_, args) | FnNameApp(_, args):
                return all(term_ok(a) for a in args)
            case FnVarApp():
                return False
        return False

    match f:
        case Falsum():
            return True
        case Equals(l, r):
            return term_ok(l) and term_ok(r)
        case Atom(p, args):
            return not isinstance(p, PredVar) and all(term_ok(a) for a in args)
        case Binary(_, l, r):
            return is_first_order(l) and is_first_order(r)
        case Quant(_, binder, body):
            if isinstance(binder, (PredVar, FuncVar)):
                return False
            return is_first_order(body)
    raise TypeError(f"not a formula: {f!r}")


def formula_depth(f: FOFormula) -> int:
    """Connective/quantifier nesting depth; atoms have depth 0."""
    match f:
        case Falsum() | Equals() | Atom():
            return 0
        case Binary(_, l, r):
            return 1 + max(formula_depth(l), formula_depth(r))
        case Quant(_, _, body):
            return 1 + formula_depth(body)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# substitution of terms for object variables

def _term_subst(t: Term, mapping: Mapping[Var, Term]) -> Term:
    match t:
        case Var():
            return mapping.get(t, t)
        case FnApp(fn, args):
            return FnApp(fn, tuple(_term_subst(a, mapping) for a in args))
        case FnVarApp(v, args):
            return FnVarApp(v, tuple(_term_subst(a, mapping) for a in args))
        case FnNameApp(name, args):
            return FnNameApp(name, tuple(_term_subst(a, mapping) for a in args))
    raise TypeError(f"not a term: {t!r}")


def substitute_terms(
    f: FOFormula,
    mapping: Mapping[Var, Term],
    *,
    require_substitutable: bool = True,
) -> FOFormula:
    """Simultaneously substitute terms for free object variables.

    With `require_substitutable` (the default) a quantifier that would
    capture a variable of a replacement term raises CaptureViolation;
    otherwise the capture is performed literally.
    """
    if not mapping:
        return f
    match f:
        case Falsum():
            return f
        case Equals(l, r):
            return Equals(_term_subst(l, mapping), _term_subst(r, mapping))
        case Atom(p, args):
            return Atom(p, tuple(_term_subst(a, mapping) for a in args))
        case Binary(op, l, r):
            return Binary(
                op,
                substitute_terms(l, mapping, require_substitutable=require_substitutable),
                substitute_terms(r, mapping, require_substitutable=require_substitutable),
            )
        case Quant(kind, binder, body):
            bound = binder_variables(binder)
            inner = {v: t for v, t in mapping.items() if v not in bound}
            if not inner:
                return f
            if require_substitutable:
                free_below = free_variables(body)
                for v, t in inner.items():
                    if v in free_below and bound & term_variables(t):
                        captured = sorted(
                            x.name for x in bound & term_variables(t) if not isinstance(x, (PredVar, FuncVar))
                        ) or sorted(str(x) for x in bound & term_variables(t))
                        raise CaptureViolation(
                            f"substituting for {v.name} would capture {', '.join(captured)}"
                        )
            return Quant(
                kind,
                binder,
                substitute_terms(body, inner, require_substitutable=require_substitutable),
            )
    raise TypeError(f"not a formula: {f!r}")


def substitute_term(
    f: FOFormula, v: Var, t: Term, *, require_substitutable: bool = True
) -> FOFormula:
    return substitute_terms(f, {v: t}, require_substitutable=require_substitutable)


def substitutable(f: FOFormula, v: Var, t: Term) -> bool:
    try:
        substitute_term(f, v, t)
    except CaptureViolation:
        return False
    return True


def substitute_sovar(
    f: FOFormula, v: PredVar | FuncVar, w, *, require_substitutable: bool = True
) -> FOFormula:
    """Substitute `w` (a variable of the same kind, or a concrete
    function/predicate name) for free occurrences of the second-order
    variable `v`."""

    w_is_var = isinstance(w, (PredVar, FuncVar))

    def sub_term(t: Term) -> Term:
        match t:
            case Var():
                return t
            case FnApp(fn, args):
                return FnApp(fn, tuple(sub_term(a) for a in args))
            case FnVarApp(fv, args):
                new_args = tuple(sub_term(a) for a in args)
                if fv == v:
                    if isinstance(w, FuncVar):
                        return FnVarApp(w, new_args)
                    return FnNameApp(w, new_args)
                return FnVarApp(fv, new_args)
            case FnNameApp(name, args):
                return FnNameApp(name, tuple(sub_term(a) for a in args))
        raise TypeError(f"not a term: {t!r}")

    def rec(g: FOFormula) -> FOFormula:
        match g:
            case Falsum():
                return g
            case Equals(l, r):
                return Equals(sub_term(l), sub_term(r))
            case Atom(p, args):
                new_args = tuple(sub_term(a) for a in args)
                if p == v:
                    return Atom(w, new_args)
                return Atom(p, new_args)
            case Binary(op, l, r):
                return Binary(op, rec(l), rec(r))
            case Quant(kind, binder, body):
                bound = binder_variables(binder)
                if v in bound:
                    return g
                if w_is_var and require_substitutable and w in bound and v in free_variables(body):
                    raise CaptureViolation(
                        f"substituting {w.name} for {v.name} under a binder of {w.name}"
                    )
                return Quant(kind, binder, rec(body))
        raise TypeError(f"not a formula: {g!r}")

    return rec(f)


def apply_pred_abstraction(
    g: FOFormula, p: PredVar, params: tuple[Var, ...], body: FOFormula
) -> FOFormula:
    """Replace every atom p(t1,...,tn) in `g` by body[params := ts].

    Raises CaptureViolation when a free variable of `body` (other than the
    parameters) would be captured at an occurrence site, or when an argument
    term is not substitutable for its parameter in `body`.
    """
    if len(params) != p.arity:
        raise ValueError("parameter count must match the predicate variable arity")
    spare = free_variables(body) - set(params)

    def rec(f: FOFormula, scope: frozenset) -> FOFormula:
        match f:
            case Falsum() | Equals():
                return f
            case Atom(pred, args):
                if pred == p:
                    captured = scope & spare
                    if captured:
                        names = sorted(getattr(x, "name", str(x)) for x in captured)
                        raise CaptureViolation(
                            f"abstraction body variable(s) {', '.join(names)} would be captured"
                        )
                    return substitute_terms(body, dict(zip(params, args)))
                return f
            case Binary(op, l, r):
                return Binary(op, rec(l, scope), rec(r, scope))
            case Quant(kind, binder, inner):
                if p in binder_variables(binder):
                    return f
                return Quant(kind, binder, rec(inner, scope | binder_variables(binder)))
        raise TypeError(f"not a formula: {f!r}")

    return rec(g, frozenset())


# ---------------------------------------------------------------------------
# restrictor elimination and closure

def eliminate_restrictors(f: FOFormula) -> FOFormula:
    """Unfold generalized variables into guarded plain quantifiers."""
    match f:
        case Falsum() | Equals() | Atom():
            return f
        case Binary(op, l, r):
            return Binary(op, eliminate_restrictors(l), eliminate_restrictors(r))
        case Quant(kind, binder, body):
            body = eliminate_restrictors(body)
            if not isinstance(binder, GenVar):
                return Quant(kind, binder, body)
            guard = conj_all(Atom(r, (v,)) for v, r in binder.items)
            core = impl(guard, body) if kind == "forall" else conj(guard, body)
            for v in reversed(binder.variables()):
                core = Quant(kind, v, core)
            return core
    raise TypeError(f"not a formula: {f!r}")


def universal_closure(f: FOFormula) -> FOFormula:
    """Quantify all free variables universally (second-order outermost)."""

    def key(v):
        if isinstance(v, PredVar):
            return (0, v.name, v.arity)
        if isinstance(v, FuncVar):
            return (1, v.name, v.arity)
        return (2, v.name, 0)

    for v in sorted(free_variables(f), key=key, reverse=True):
        f = Quant("forall", v, f)
    return f


# ---------------------------------------------------------------------------
# ground atoms

@dataclass(frozen=True)
class GroundAtom:
    """Closed predicate-constant atom (equality excluded by construction)."""

    pred: str
    args: tuple = ()

    def __post_init__(self):
        for a in self.args:
            if not term_is_ground(a):
                raise ValueError(f"ground atom argument contains variables: {a!r}")


# ---------------------------------------------------------------------------
# infinitary propositional formulas

@dataclass(frozen=True, init=False)
class PAtom:
    name: str

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)


@dataclass(frozen=True, init=False)
class PAnd:
    items: frozenset

    def __init__(self, items: Iterable = ()):
        object.__setattr__(self, "items", frozenset(items))


@dataclass(frozen=True, init=False)
class POr:
    items: frozenset

    def __init__(self, items: Iterable = ()):
        object.__setattr__(self, "items", frozenset(items))


@dataclass(frozen=True)
class PImp:
    left: "PropFormula"
    right: "PropFormula"


PropFormula = Union[PAtom, PAnd, POr, PImp]

TOP = PAnd(())
BOT = POr(())


def pconj(*items: PropFormula) -> PAnd:
    return PAnd(items)


def pdisj(*items: PropFormula) -> POr:
    return POr(items)


def pneg(f: PropFormula) -> PImp:
    return PImp(f, BOT)


def piff(left: PropFormula, right: PropFormula) -> PAnd:
    return PAnd((PImp(left, right), PImp(right, left)))


def rank(f: PropFormula) -> int:
    """Nesting rank: atoms are rank 0; a set or implication node has the
    smallest rank strictly greater than the ranks of all its children."""
    memo: dict[int, int] = {}

    def rec(g: PropFormula) -> int:
        got = memo.get(id(g))
        if got is not None:
            return got
        match g:
            case PAtom():
                r = 0
            case PAnd(items) | POr(items):
                r = max((rec(c) for c in items), default=-1) + 1
            case PImp(l, rgt):
                r = max(rec(l), rec(rgt)) + 1
            case _:
                raise TypeError(f"not a propositional formula: {g!r}")
        memo[id(g)] = r
        return r

    return rec(f)


def prop_atoms(f: PropFormula) -> frozenset[str]:
    match f:
        case PAtom(name):
            return frozenset((name,))
        case PAnd(items) | POr(items):
            out: frozenset[str] = frozenset()
            for c in items:
                out |= prop_atoms(c)
            return out
        case PImp(l, r):
            return prop_atoms(l) | prop_atoms(r)
    raise TypeError(f"not a propositional formula: {f!r}")


def prop_node_count(f: PropFormula) -> int:
    """Number of distinct structural nodes (shared subterms counted once)."""
    seen: set[int] = set()

    def rec(g: PropFormula) -> int:
        if id(g) in seen:
            return 0
        seen.add(id(g))
        match g:
            case PAtom():
                return 1
            case PAnd(items) | POr(items):
                return 1 + sum(rec(c) for c in items)
            case PImp(l, r):
                return 1 + rec(l) + rec(r)
        raise TypeError(f"not a propositional formula: {g!r}")

    return rec(f)


# ---------------------------------------------------------------------------
# printers (ASCII, re-parseable)

def term_to_text(t: Term) -> str:
    match t:
        case Var(name):
            return name
        case FnApp(fn, args):
            if not args:
                return fn
            return f"{fn}({','.join(term_to_text(a) for a in args)})"
        case FnVarApp(v, args):
            return f"{v.name}({','.join(term_to_text(a) for a in args)})"
        case FnNameApp(name, args):
            return f"{name!r}({','.join(term_to_text(a) for a in args)})"
    raise TypeError(f"not a term: {t!r}")


_LEVEL_IFF = 0
_LEVEL_IMP = 1
_LEVEL_OR = 2
_LEVEL_AND = 3
_LEVEL_UNARY = 4
_LEVEL_ATOM = 5


def _binder_to_text(binder: Binder) -> str:
    match binder:
        case Var(name):
            return name
        case GenVar(items):
            inner = ", ".join(f"{v.name}:{r}" for v, r in items)
            return f"({inner})"
        case PredVar(name, arity):
            return f"{name}/{arity}"
        case FuncVar(name, arity):
            return f"{name}^{arity}"
    raise TypeError(f"not a binder: {binder!r}")


def formula_to_text(f: FOFormula) -> str:
    def wrap(text: str, level: int, ctx: int) -> str:
        return f"({text})" if level < ctx else text

    def rec(g: FOFormula, ctx: int) -> str:
        if g == TRUTH:
            return "top"
        match g:
            case Falsum():
                return "bot"
            case Equals(l, r):
                return f"{term_to_text(l)} = {term_to_text(r)}"
            case Atom(p, args):
                name = p.name if isinstance(p, PredVar) else str(p)
                if not args:
                    return name
                return f"{name}({','.join(term_to_text(a) for a in args)})"
            case Binary("->", Equals(l, r), Falsum()):
                return f"{term_to_text(l)} != {term_to_text(r)}"
            case Binary("->", inner, Falsum()):
                return wrap(f"not {rec(inner, _LEVEL_UNARY)}", _LEVEL_UNARY, ctx)
            case Binary("&", Binary("->", a, b), Binary("->", b2, a2)) if a == a2 and b == b2:
                text = f"{rec(a, _LEVEL_IFF)} <-> {rec(b, _LEVEL_IMP)}"
                return wrap(text, _LEVEL_IFF, ctx)
            case Binary("->", l, r):
                text = f"{rec(l, _LEVEL_IMP + 1)} -> {rec(r, _LEVEL_IMP)}"
                return wrap(text, _LEVEL_IMP, ctx)
            case Binary("|", l, r):
                text = f"{rec(l, _LEVEL_OR)} | {rec(r, _LEVEL_OR + 1)}"
                return wrap(text, _LEVEL_OR, ctx)
            case Binary("&", l, r):
                text = f"{rec(l, _LEVEL_AND)} & {rec(r, _LEVEL_AND + 1)}"
                return wrap(text, _LEVEL_AND, ctx)
            case Quant(kind, binder, body):
                text = f"{kind} {_binder_to_text(binder)} {rec(body, _LEVEL_UNARY)}"
                return wrap(text, _LEVEL_UNARY, ctx)
        raise TypeError(f"not a formula: {g!r}")

    return rec(f, _LEVEL_IFF)


def ground_atom_to_text(a: GroundAtom) -> str:
    if not a.args:
        return a.pred
    return f"{a.pred}({','.join(term_to_text(t) for t in a.args)})"


def prop_to_text(f: PropFormula) -> str:
    match f:
        case PAtom(name):
            return name
        case PAnd(items):
            if not items:
                return "top"
            return "And{" + "; ".join(sorted(prop_to_text(c) for c in items)) + "}"
        case POr(items):
            if not items:
                return "bot"
            return "Or{" + "; ".join(sorted(prop_to_text(c) for c in items)) + "}"
        case PImp(l, r):
            left = prop_to_text(l)
            if isinstance(l, PImp):
                left = f"({left})"
            return f"{left} -> {prop_to_text(r)}"
    raise TypeError(f"not a propositional formula: {f!r}")
