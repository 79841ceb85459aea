import random

import pytest

import gen
from hhtkit.errors import (
    InfiniteUniverse,
    NotClosed,
    NotFirstOrder,
    UnmappedAtom,
)
from hhtkit.instantiation import (
    Bounded,
    Substitution,
    ground_terms,
    instantiate,
    validate,
)
from hhtkit.parser import parse_formula_text, parse_subst_file
from hhtkit.semantics import World, satisfies
from hhtkit.syntax import (
    BOT,
    TOP,
    FnApp,
    GroundAtom,
    PAnd,
    PAtom,
    PImp,
    POr,
    Signature,
    const,
    eliminate_restrictors,
    formula_depth,
    prop_atoms,
    rank,
)

SIG2 = Signature.make({"c1": 0, "c2": 0}, {"P": 1, "Q": 0})
SIG2R = Signature.make({"c1": 0, "c2": 0, "c3": 0}, {"P": 1, "R": 1}, {"R"})


def subst_p(sig, q=False):
    entries = {
        GroundAtom("P", (const(c),)): PAtom(f"f_{c}") for c in sig.object_constants()
    }
    if q:
        entries[GroundAtom("Q", ())] = PAtom("g")
    return Substitution(sig, entries)


def test_lookup_entry_default_missing():
    s = parse_subst_file(
        "const a, b. pred P/1. restrictor R/1.\nP(a) := u; default R := bot;"
    )
    assert s.lookup(GroundAtom("P", (const("a"),))) == PAtom("u")
    assert s.lookup(GroundAtom("R", (const("b"),))) == BOT
    with pytest.raises(UnmappedAtom):
        s.lookup(GroundAtom("P", (const("b"),)))


def test_instance_of_distribution_equivalence():
    s = subst_p(SIG2, q=True)
    f = parse_formula_text("exists x P(x) & Q <-> exists x (P(x) & Q)", SIG2)
    got = instantiate(s, f)
    family = POr((PAtom("f_c1"), PAtom("f_c2")))
    lhs = PAnd((family, PAtom("g")))
    rhs = POr((PAnd((PAtom("f_c1"), PAtom("g"))), PAnd((PAtom("f_c2"), PAtom("g")))))
    assert got == PAnd((PImp(lhs, rhs), PImp(rhs, lhs)))


def test_equality_clauses():
    s = subst_p(SIG2)
    assert instantiate(s, parse_formula_text("c1 = c1", SIG2)) == TOP
    assert instantiate(s, parse_formula_text("c1 = c2", SIG2)) == BOT


def test_restricted_forall_carves_index_set():
    entries = {
        GroundAtom("P", (const(c),)): PAtom(f"f_{c}")
        for c in ("c1", "c2", "c3")
    }
    entries[GroundAtom("R", (const("c1"),))] = BOT
    entries[GroundAtom("R", (const("c2"),))] = TOP
    entries[GroundAtom("R", (const("c3"),))] = TOP
    s = Substitution(SIG2R, entries)
    f = parse_formula_text("forall x P(x) -> forall (x:R) P(x)", SIG2R)
    got = instantiate(s, f)
    assert got == PImp(
        PAnd((PAtom("f_c1"), PAtom("f_c2"), PAtom("f_c3"))),
        PAnd((PAtom("f_c2"), PAtom("f_c3"))),
    )


def test_restricted_pair_distributes_over_product():
    sig = Signature.make(
        {"a1": 0, "a2": 0, "b1": 0},
        {"P": 1, "Q": 1, "R1": 1, "R2": 1},
        {"R1", "R2"},
    )
    entries = {}
    for c in sig.object_constants():
        entries[GroundAtom("P", (const(c),))] = PAtom(f"f_{c}")
        entries[GroundAtom("Q", (const(c),))] = PAtom(f"g_{c}")
        entries[GroundAtom("R1", (const(c),))] = TOP if c.startswith("a") else BOT
        entries[GroundAtom("R2", (const(c),))] = TOP if c.startswith("b") else BOT
    s = Substitution(sig, entries)
    f = parse_formula_text(
        "exists (x:R1) P(x) & exists (y:R2) Q(y) <-> exists (x:R1, y:R2) (P(x) & Q(y))",
        sig,
    )
    got = instantiate(s, f)
    lhs = PAnd((POr((PAtom("f_a1"), PAtom("f_a2"))), POr((PAtom("g_b1"),))))
    rhs = POr((
        PAnd((PAtom("f_a1"), PAtom("g_b1"))),
        PAnd((PAtom("f_a2"), PAtom("g_b1"))),
    ))
    assert got == PAnd((PImp(lhs, rhs), PImp(rhs, lhs)))


def test_empty_restricted_sets_give_units():
    entries = {GroundAtom("P", (const(c),)): PAtom("u") for c in ("c1", "c2", "c3")}
    for c in ("c1", "c2", "c3"):
        entries[GroundAtom("R", (const(c),))] = BOT
    s = Substitution(SIG2R, entries)
    assert instantiate(s, parse_formula_text("forall (x:R) P(x)", SIG2R)) == TOP
    assert instantiate(s, parse_formula_text("exists (x:R) P(x)", SIG2R)) == BOT


def test_quantifier_over_non_occurring_variable_collapses():
    s = subst_p(SIG2, q=True)
    f = parse_formula_text("forall x Q", SIG2)
    got = instantiate(s, f)
    assert got == PAnd((PAtom("g"),))
    assert got == PAnd((instantiate(s, parse_formula_text("Q", SIG2)),))


def test_preconditions():
    s = subst_p(SIG2)
    with pytest.raises(NotClosed):
        instantiate(s, parse_formula_text("P(x)", SIG2))
    with pytest.raises(NotFirstOrder):
        instantiate(s, parse_formula_text("forall p/1 p(c1)", SIG2))


def test_exact_mode_refuses_function_constants():
    sig = Signature.make({"a": 0, "s": 1}, {"P": 1})
    s = Substitution(sig, {GroundAtom("P", (const("a"),)): PAtom("u")})
    with pytest.raises(InfiniteUniverse):
        instantiate(s, parse_formula_text("forall x P(x)", sig))


def test_bounded_universe_terms():
    sig = Signature.make({"a": 0, "s": 1}, {"P": 1})
    terms = ground_terms(sig, 2)
    a = const("a")
    assert terms == (a, FnApp("s", (a,)), FnApp("s", (FnApp("s", (a,)),)))


def test_unmapped_atom_names_offender():
    s = subst_p(SIG2)  # no Q entry
    f = parse_formula_text("exists x P(x) & Q", SIG2)
    with pytest.raises(UnmappedAtom) as err:
        instantiate(s, f)
    assert "Q" in str(err.value)
    assert validate(s, f) == ("Q",)


def test_validate_empty_report_when_total():
    s = subst_p(SIG2, q=True)
    f = parse_formula_text("exists x P(x) & Q <-> exists x (P(x) & Q)", SIG2)
    assert validate(s, f) == ()


def test_validate_bounded_reaches_pushed_terms():
    sig = Signature.make({"a": 0, "s": 1}, {"P": 1})
    f = parse_formula_text("forall x (P(x) -> P(s(x)))", sig)
    entries = {}
    t = const("a")
    for _ in range(3):
        entries[GroundAtom("P", (t,))] = PAtom("u")
        t = FnApp("s", (t,))
    s = Substitution(sig, entries)
    # depth-2 universe pushes one application deeper: s(s(s(a))) is missing
    assert validate(s, f, Bounded(2)) == ("P(s(s(s(a))))",)
    entries[GroundAtom("P", (t,))] = PAtom("u")
    assert validate(Substitution(sig, entries), f, Bounded(2)) == ()


def test_restrictor_coherence_small_cases():
    rng = random.Random(41)
    for _ in range(120):
        f = gen.rand_formula(rng, SIG2R, depth=3, restrictor_share=0.6)
        s = gen.rand_substitution(rng, SIG2R)
        direct = instantiate(s, f)
        unfolded = instantiate(s, eliminate_restrictors(f))
        atoms = prop_atoms(direct) | prop_atoms(unfolded)
        for i in gen.all_interpretations_over(atoms):
            for w in World:
                assert satisfies(i, w, direct) == satisfies(i, w, unfolded)


def test_instance_rank_bound():
    rng = random.Random(43)
    for _ in range(200):
        f = gen.rand_formula(rng, SIG2R, depth=3, restrictor_share=0.3)
        s = gen.rand_substitution(rng, SIG2R)
        inst = instantiate(s, f)
        max_range_rank = max(
            (rank(img) for img in s.entries.values()), default=0
        )
        assert rank(inst) <= max_range_rank + formula_depth(f)


def test_instance_atoms_come_from_range():
    rng = random.Random(47)
    for _ in range(100):
        f = gen.rand_formula(rng, SIG2R, depth=3, restrictor_share=0.3)
        s = gen.rand_substitution(rng, SIG2R)
        inst = instantiate(s, f)
        range_atoms = set()
        for img in s.entries.values():
            range_atoms |= prop_atoms(img)
        assert prop_atoms(inst) <= range_atoms
