import random

import pytest

import gen
from hhtkit.errors import BudgetExceeded
from hhtkit.parser import parse_prop_text
from hhtkit.semantics import (
    HTInterpretation,
    World,
    classical_eval,
    enumerate_interpretations,
    g3_eval,
    ht_valid,
    models,
    render_countermodel,
    satisfies,
)
from hhtkit.syntax import PAnd, PAtom, POr, prop_atoms


def prop(text):
    return parse_prop_text(text)


def test_interpretation_invariant():
    with pytest.raises(ValueError):
        HTInterpretation.of(["p"], [])


def test_atom_satisfaction():
    i = HTInterpretation.of(["p"], ["p"])
    assert satisfies(i, World.H, prop("p"))


def test_double_negation_hand_evaluated():
    # hand evaluation of the clauses at <{}, {p}>: "not p" fails at h because
    # p holds at t; hence "not not p" holds at h while p itself does not
    i = HTInterpretation.of([], ["p"])
    assert satisfies(i, World.H, prop("not not p")) is True
    assert satisfies(i, World.H, prop("p")) is False


def test_empty_set_clauses():
    for i in (HTInterpretation.of([], []), HTInterpretation.of(["p"], ["p"])):
        for w in World:
            assert satisfies(i, w, PAnd(()))
            assert not satisfies(i, w, POr(()))


def test_models_examples():
    assert models(HTInterpretation.of([], ["p"]), prop("p | not p")) is False
    assert models(HTInterpretation.of([], []), prop("not p")) is True
    assert models(HTInterpretation.of([], []), PAnd(())) is True


def test_ht_valid_hosoi_with_enumeration_oracle():
    # independent oracle: evaluate the three-valued tables directly over all
    # nine interpretations of {p, q}
    f = prop("p | (p -> q) | not q")
    for i in gen.all_interpretations_over(["p", "q"]):
        assert g3_eval(i, f) == 2
    assert ht_valid(f) is None
    assert ht_valid(f, evaluator="literal") is None


def test_ht_valid_canonical_countermodel():
    cm = ht_valid(prop("p | not p"))
    assert cm == HTInterpretation.of([], ["p"])
    assert render_countermodel(cm, ["p"]) == "p: there-only"
    assert ht_valid(prop("p | not p"), evaluator="literal") == cm


def test_ht_valid_top_iff_not_bot():
    assert ht_valid(prop("top <-> not bot")) is None


def test_ht_valid_first_failure_is_minimal():
    # with two atoms the canonical order counts q fastest (p most significant)
    f = prop("q | not q | p")
    cm = ht_valid(f)
    assert cm == HTInterpretation.of([], ["q"])


def test_budget_guard():
    atoms = [f"a{i:02d}" for i in range(21)]
    f = POr(tuple(PAtom(a) for a in atoms))
    with pytest.raises(BudgetExceeded):
        ht_valid(f)
    assert ht_valid(f, atom_limit=21) is not None


def test_g3_tables():
    i = HTInterpretation.of([], ["p"])
    assert g3_eval(i, prop("p")) == 1
    assert g3_eval(i, prop("not not p")) == 2
    assert g3_eval(i, POr(())) == 0
    assert g3_eval(i, PAnd(())) == 2
    assert g3_eval(i, prop("p -> p")) == 2
    assert g3_eval(HTInterpretation.of(["p"], ["p"]), prop("p")) == 2


def test_persistence_and_g3_agreement_randomized():
    rng = random.Random(23)
    for _ in range(2000):
        f = gen.rand_prop(rng, depth=3)
        i = gen.rand_interpretation(rng)
        sat_h = satisfies(i, World.H, f)
        sat_t = satisfies(i, World.T, f)
        if sat_h:
            assert sat_t, "h-satisfaction must persist to t"
        v = g3_eval(i, f)
        assert sat_h == (v == 2)
        assert sat_t == (v >= 1)


def test_classical_collapse_randomized():
    rng = random.Random(29)
    for _ in range(1000):
        f = gen.rand_prop(rng, depth=3)
        total = frozenset(a for a in gen.SIGMA_ATOMS if rng.random() < 0.5)
        i = HTInterpretation(total, total)
        assert satisfies(i, World.H, f) == classical_eval(total, f)


def test_satisfaction_ignores_non_occurring_atoms():
    rng = random.Random(31)
    for _ in range(500):
        f = gen.rand_prop(rng, depth=3, atoms=("u", "v"))
        i = gen.rand_interpretation(rng, atoms=("u", "v"))
        extra = HTInterpretation.of(
            set(i.here) | {"zz"}, set(i.there) | {"zz", "zy"}
        )
        for w in World:
            assert satisfies(i, w, f) == satisfies(extra, w, f)


def test_enumeration_order_and_count():
    seq = list(enumerate_interpretations(["b", "a"]))
    assert len(seq) == 9
    assert seq[0] == HTInterpretation.of([], [])
    # least significant digit is the lexicographically last atom
    assert seq[1] == HTInterpretation.of([], ["b"])
    assert seq[3] == HTInterpretation.of([], ["a"])
    assert seq[8] == HTInterpretation.of(["a", "b"], ["a", "b"])


def test_evaluators_agree_on_first_countermodel():
    rng = random.Random(39)
    disagreements = 0
    for _ in range(400):
        f = gen.rand_prop(rng, depth=3)
        got_g3 = ht_valid(f, evaluator="g3")
        got_lit = ht_valid(f, evaluator="literal")
        assert got_g3 == got_lit
        if got_g3 is not None:
            disagreements += 1
    assert disagreements > 50  # the sample includes plenty of invalid formulas


def test_ht_valid_implies_classical_validity():
    rng = random.Random(37)
    checked = 0
    for _ in range(400):
        f = gen.rand_prop(rng, depth=3)
        if ht_valid(f) is not None:
            continue
        checked += 1
        atoms = sorted(prop_atoms(f))
        for bits in range(2 ** len(atoms)):
            total = frozenset(a for k, a in enumerate(atoms) if bits >> k & 1)
            assert classical_eval(total, f)
    assert checked > 10
