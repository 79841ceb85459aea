"""Two-world (here/there) interpretations, satisfaction, exhaustive
validity checking with canonical countermodels, and the three-valued
evaluator used as an independent fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator

from .errors import BudgetExceeded
from .syntax import PAnd, PAtom, PImp, POr, PropFormula, prop_atoms

DEFAULT_ATOM_LIMIT = 20

ABSENT, THERE_ONLY, BOTH = 0, 1, 2
STATE_NAMES = {ABSENT: "absent", THERE_ONLY: "there-only", BOTH: "both"}


class World(IntEnum):
    """The two worlds, ordered h < t."""

    H = 0
    T = 1


@dataclass(frozen=True)
class HTInterpretation:
    """Pair of atom sets with here a subset of there."""

    here: frozenset[str]
    there: frozenset[str]

    def __post_init__(self):
        if not self.here <= self.there:
            raise ValueError("here must be a subset of there")

    @staticmethod
    def of(here: Iterable[str], there: Iterable[str]) -> "HTInterpretation":
        return HTInterpretation(frozenset(here), frozenset(there))

    def world(self, w: World) -> frozenset[str]:
        return self.here if w == World.H else self.there

    def atom_state(self, atom: str) -> int:
        if atom in self.here:
            return BOTH
        if atom in self.there:
            return THERE_ONLY
        return ABSENT


def satisfies(i: HTInterpretation, w: World, f: PropFormula) -> bool:
    """Literal recursive satisfaction; the implication clause quantifies
    over both worlds w' >= w."""
    match f:
        case PAtom(name):
            return name in i.world(w)
        case PAnd(items):
            return all(satisfies(i, w, g) for g in items)
        case POr(items):
            return any(satisfies(i, w, g) for g in items)
        case PImp(l, r):
            for w2 in (World.H, World.T):
                if w2 >= w and satisfies(i, w2, l) and not satisfies(i, w2, r):
                    return False
            return True
    raise TypeError(f"not a propositional formula: {f!r}")


def models(i: HTInterpretation, f: PropFormula) -> bool:
    return satisfies(i, World.H, f)


def g3_eval(i: HTInterpretation, f: PropFormula) -> int:
    """Three-valued evaluation: 0 false, 1 there-only, 2 here.

    Agrees with `satisfies`: value 2 iff satisfied at h, value >= 1 iff
    satisfied at t.
    """
    values = {a: i.atom_state(a) for a in prop_atoms(f)}
    return _g3(f, values, {})


def _g3(f: PropFormula, values: dict[str, int], memo: dict[int, int]) -> int:
    got = memo.get(id(f))
    if got is not None:
        return got
    match f:
        case PAtom(name):
            v = values[name]
        case PAnd(items):
            v = 2
            for g in items:
                v = min(v, _g3(g, values, memo))
                if v == 0:
                    break
        case POr(items):
            v = 0
            for g in items:
                v = max(v, _g3(g, values, memo))
                if v == 2:
                    break
        case PImp(l, r):
            vl = _g3(l, values, memo)
            vr = _g3(r, values, memo)
            v = 2 if vl <= vr else vr
        case _:
            raise TypeError(f"not a propositional formula: {f!r}")
    memo[id(f)] = v
    return v


def enumerate_interpretations(atoms: Iterable[str]) -> Iterator[HTInterpretation]:
    """All interpretations over the given atoms in canonical order: atoms
    sorted lexicographically, per-atom states counted absent < there-only <
    both, first atom most significant."""
    for _, i in _enumerate_states(sorted(atoms)):
        yield i


def _enumerate_states(atoms: list[str]) -> Iterator[tuple[dict[str, int], HTInterpretation]]:
    n = len(atoms)
    states = [0] * n
    while True:
        here = frozenset(a for a, s in zip(atoms, states) if s == BOTH)
        there = frozenset(a for a, s in zip(atoms, states) if s != ABSENT)
        yield dict(zip(atoms, states)), HTInterpretation(here, there)
        j = n - 1
        while j >= 0 and states[j] == 2:
            states[j] = 0
            j -= 1
        if j < 0:
            return
        states[j] += 1


def ht_valid(
    f: PropFormula,
    atom_limit: int = DEFAULT_ATOM_LIMIT,
    *,
    evaluator: str = "g3",
) -> HTInterpretation | None:
    """Exhaustively check validity over the atoms occurring in `f`.

    Returns None when valid, otherwise the first failing interpretation in
    canonical order.  `evaluator` picks the three-valued fast path ("g3") or
    the literal satisfaction recursion ("literal"); both define the same
    relation.
    """
    atoms = sorted(prop_atoms(f))
    if len(atoms) > atom_limit:
        raise BudgetExceeded(3 ** len(atoms), 3 ** atom_limit, "interpretations")
    if evaluator == "g3":
        for values, i in _enumerate_states(atoms):
            if _g3(f, values, {}) != 2:
                return i
        return None
    if evaluator == "literal":
        for i in enumerate_interpretations(atoms):
            if not satisfies(i, World.H, f):
                return i
        return None
    raise ValueError(f"unknown evaluator {evaluator!r}")


def render_countermodel(i: HTInterpretation, atoms: Iterable[str]) -> str:
    """One `atom: state` line per atom, sorted lexicographically."""
    lines = []
    for a in sorted(set(atoms)):
        lines.append(f"{a}: {STATE_NAMES[i.atom_state(a)]}")
    return "\n".join(lines)


def classical_eval(true_atoms: frozenset[str], f: PropFormula) -> bool:
    """Ordinary two-valued evaluation; used to cross-check the collapse of
    the two worlds when here equals there."""
    match f:
        case PAtom(name):
            return name in true_atoms
        case PAnd(items):
            return all(classical_eval(true_atoms, g) for g in items)
        case POr(items):
            return any(classical_eval(true_atoms, g) for g in items)
        case PImp(l, r):
            return (not classical_eval(true_atoms, l)) or classical_eval(true_atoms, r)
    raise TypeError(f"not a propositional formula: {f!r}")


__all__ = [
    "World",
    "HTInterpretation",
    "satisfies",
    "models",
    "g3_eval",
    "ht_valid",
    "enumerate_interpretations",
    "render_countermodel",
    "classical_eval",
    "DEFAULT_ATOM_LIMIT",
]
