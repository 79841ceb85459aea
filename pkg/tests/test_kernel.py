import pytest

from hhtkit.errors import (
    ConclusionNotClosed,
    ConclusionNotFirstOrder,
    ForwardReference,
    LevelViolation,
    MPMismatch,
    SchemaMismatch,
    SideConditionViolation,
)
from hhtkit.kernel import (
    ByAxiom,
    ByMP,
    Proof,
    ProofLine,
    TheoryLevel,
    build_axiom_instance,
    check_proof,
    conclusion_for_pipeline,
    list_schemas,
)
from hhtkit.parser import parse_formula_text, parse_proof_file
from hhtkit.syntax import (
    FnApp,
    FuncVar,
    PredVar,
    Signature,
    Var,
    formula_to_text,
)

SIG = Signature.make({"a": 0, "b": 0, "s": 1}, {"P": 1, "Q": 0})


def fof(text):
    return parse_formula_text(text, SIG)


def identity_proof(target_text="P(a)"):
    A = target_text
    text = f"""const a, b. fn s/1. pred P/1, Q/0.
level HHT;
1: {A} -> ({A} -> {A}) -> {A} by axiom k with F := {A}, G := {A} -> {A};
2: ({A} -> ({A} -> {A}) -> {A}) -> ({A} -> {A} -> {A}) -> {A} -> {A} by axiom s with F := {A}, G := {A} -> {A}, H := {A};
3: ({A} -> {A} -> {A}) -> {A} -> {A} by mp 1 2;
4: {A} -> {A} -> {A} by axiom k with F := {A}, G := {A};
5: {A} -> {A} by mp 4 3;
"""
    return parse_proof_file(text)


def test_identity_derivation_accepted():
    proof = identity_proof()
    assert formula_to_text(check_proof(proof)) == "P(a) -> P(a)"
    assert formula_to_text(conclusion_for_pipeline(proof)) == "P(a) -> P(a)"


def test_checker_is_deterministic():
    proof = identity_proof()
    assert check_proof(proof) == check_proof(identity_proof())


def test_mp_mismatch_reported_with_line():
    lines = identity_proof().lines
    bad = Proof(SIG, TheoryLevel.HHT, lines[:2] + (ProofLine(fof("Q"), ByMP(1, 2)),))
    with pytest.raises(MPMismatch) as err:
        check_proof(bad)
    assert err.value.line == 3


def test_forward_reference():
    bad = Proof(SIG, TheoryLevel.HHT, (ProofLine(fof("Q"), ByMP(1, 2)),))
    with pytest.raises(ForwardReference):
        check_proof(bad)


def test_schema_mismatch_on_wrong_binding():
    line = ProofLine(fof("not not P(a) -> P(a)"), ByAxiom.of("efq", F=fof("P(a)")))
    with pytest.raises(SchemaMismatch):
        check_proof(Proof(SIG, TheoryLevel.HHT, (line,)))


def test_forall_elim_capture_side_condition():
    # instantiating with a term whose variable the body quantifies is refused
    body = fof("exists y (P(x) & P(y))")
    just = ByAxiom.of("forall-elim", x=Var("x"), F=body, t=Var("y"))
    inst = fof("forall x exists y (P(x) & P(y)) -> exists y (P(y) & P(y))")
    with pytest.raises(SideConditionViolation):
        check_proof(Proof(SIG, TheoryLevel.HHT, (ProofLine(inst, just),)))


def test_gen_all_side_condition():
    text = """const a. pred P/1, Q/0.
level HHT;
1: P(x) -> P(x) -> P(x) by axiom k with F := P(x), G := P(x);
2: P(x) -> forall x (P(x) -> P(x)) by gen-all 1 x;
"""
    with pytest.raises(SideConditionViolation) as err:
        check_proof(parse_proof_file(text))
    assert err.value.line == 2


def test_gen_all_accepts_closed_antecedent():
    text = """const a. pred P/1, Q/0.
level HHT;
1: P(x) -> Q -> P(x) by axiom k with F := P(x), G := Q;
2: Q -> P(x) -> Q by axiom k with F := Q, G := P(x);
3: Q -> forall x (P(x) -> Q) by gen-all 2 x;
"""
    proof = parse_proof_file(text)
    assert formula_to_text(check_proof(proof)) == "Q -> forall x (P(x) -> Q)"


def test_level_gating():
    comp = ByAxiom.of("comprehension", p=PredVar("p", 1), xs=[Var("x")], F=fof("P(x)"))
    inst = build_axiom_instance(SIG, "comprehension", comp.as_dict())
    proof = Proof(SIG, TheoryLevel.HHT, (ProofLine(inst, comp),))
    with pytest.raises(LevelViolation):
        check_proof(proof)
    assert check_proof(Proof(SIG, TheoryLevel.HHT2, (ProofLine(inst, comp),))) == inst


def test_dca_needs_top_level():
    dca = ByAxiom.of("dca", p=PredVar("p", 1), x=Var("x"))
    inst = build_axiom_instance(SIG, "dca", dca.as_dict())
    with pytest.raises(LevelViolation):
        check_proof(Proof(SIG, TheoryLevel.HHT2, (ProofLine(inst, dca),)))
    assert check_proof(Proof(SIG, TheoryLevel.HHT2_DCA, (ProofLine(inst, dca),))) == inst


def test_second_order_formula_rejected_at_base_level():
    f = fof("forall p/1 (p(a) -> p(a))")
    proof = Proof(SIG, TheoryLevel.HHT, (ProofLine(f, ByAxiom.of("k")),))
    with pytest.raises(LevelViolation):
        check_proof(proof)


def test_comprehension_side_conditions():
    with pytest.raises(SideConditionViolation):
        bad = ByAxiom.of(
            "comprehension", p=PredVar("p", 1), xs=[Var("x")],
            F=parse_formula_text("p(x)", SIG),
        )
        inst = fof("P(a)")  # shape is checked after the side condition
        check_proof(Proof(SIG, TheoryLevel.HHT2, (ProofLine(inst, bad),)))


def test_choice_requires_positive_arity():
    just = ByAxiom.of(
        "choice", p=PredVar("p", 1), f=FuncVar("g", 0), xs=[Var("y")]
    )
    with pytest.raises(SideConditionViolation):
        check_proof(Proof(SIG, TheoryLevel.HHT2, (ProofLine(fof("Q"), just),)))


def test_choice_instance_shape():
    just = ByAxiom.of(
        "choice", p=PredVar("p", 2), f=FuncVar("g", 1), xs=[Var("x"), Var("y")]
    )
    inst = build_axiom_instance(SIG, "choice", just.as_dict())
    assert formula_to_text(inst) == (
        "forall x exists y p(x,y) -> exists g^1 forall x p(x,g(x))"
    )


def test_cet_distinct():
    just = ByAxiom.of("cet-distinct", f="s", g="a", ss=[Var("x1")], ts=[])
    inst = build_axiom_instance(SIG, "cet-distinct", just.as_dict())
    assert formula_to_text(inst) == "s(x1) != a"
    with pytest.raises(SideConditionViolation):
        build_axiom_instance(
            SIG, "cet-distinct", ByAxiom.of("cet-distinct", f="a", g="a").as_dict()
        )


def test_cet_inject():
    just = ByAxiom.of("cet-inject", f="s", ss=[Var("x1")], ts=[Var("y1")])
    inst = build_axiom_instance(SIG, "cet-inject", just.as_dict())
    assert formula_to_text(inst) == "s(x1) = s(y1) -> x1 = y1"
    with pytest.raises(SideConditionViolation):
        build_axiom_instance(SIG, "cet-inject", {"f": "a", "ss": (), "ts": ()})


def test_cet_acyclic():
    t = FnApp("s", (FnApp("s", (Var("x"),)),))
    inst = build_axiom_instance(SIG, "cet-acyclic", {"t": t, "x": Var("x")})
    assert formula_to_text(inst) == "s(s(x)) != x"
    with pytest.raises(SideConditionViolation):
        build_axiom_instance(SIG, "cet-acyclic", {"t": Var("x"), "x": Var("x")})
    with pytest.raises(SideConditionViolation):
        build_axiom_instance(SIG, "cet-acyclic", {"t": FnApp("s", (Var("y"),)), "x": Var("x")})


def test_cet_acyclic_rejects_function_variable_terms():
    # a term through a function variable need not keep x as a subterm once
    # the variable is resolved to a concrete table, so the instance below is
    # genuinely refutable and the schema must refuse it
    from hhtkit.herbrand import hht_valid_bruteforce
    from hhtkit.syntax import FnVarApp, universal_closure

    h = FuncVar("h", 1)
    t = FnVarApp(h, (Var("x"),))
    with pytest.raises(SideConditionViolation):
        build_axiom_instance(SIG, "cet-acyclic", {"t": t, "x": Var("x")})
    sig = Signature.make({"a": 0, "b": 0}, {})
    refutable = universal_closure(parse_formula_text("h(x) != x", sig))
    assert hht_valid_bruteforce(sig, refutable) is not None


def test_dec_eq_defaults():
    inst = build_axiom_instance(SIG, "dec-eq", {})
    assert formula_to_text(inst) == "x = y | x != y"


def test_dca_shape_matches_sorted_constructors():
    inst = build_axiom_instance(SIG, "dca", {"p": PredVar("p", 1), "x": Var("x")})
    assert formula_to_text(inst) == (
        "forall p/1 (p(a) & p(b) & forall x (p(x) -> p(s(x))) -> forall x p(x))"
    )


def test_schema_inventory_counts():
    base = list_schemas(TheoryLevel.HHT)
    assert len(base) == 19
    assert [s.schema_id for s in base[:2]] == ["k", "s"]
    so = list_schemas(TheoryLevel.HHT2)
    assert len(so) == 24
    full = list_schemas(TheoryLevel.HHT2_DCA)
    assert len(full) == 25
    assert full[-1].schema_id == "dca"


def test_conclusion_gates():
    f = fof("forall p/1 (p(a) -> p(a))")
    proof = Proof(SIG, TheoryLevel.HHT2, (ProofLine(f, ByAxiom.of("k")),))
    with pytest.raises(ConclusionNotFirstOrder):
        conclusion_for_pipeline(proof)
    g = fof("P(x)")
    proof2 = Proof(SIG, TheoryLevel.HHT, (ProofLine(g, ByAxiom.of("k")),))
    with pytest.raises(ConclusionNotClosed):
        conclusion_for_pipeline(proof2)


def test_restrictor_lines_checked_after_elimination():
    sig = Signature.make({"a": 0}, {"P": 1, "R": 1}, {"R"})
    text = """const a. pred P/1. restrictor R/1.
level HHT;
1: forall (x:R) P(x) -> R(a) -> P(a) by axiom forall-elim with x := x, F := R(x) -> P(x), t := a;
"""
    proof = parse_proof_file(text)
    got = check_proof(proof)
    assert formula_to_text(got) == "forall (x:R) P(x) -> R(a) -> P(a)"


def test_so_gen_rule():
    text = """const a. pred P/1, Q/0.
level HHT2;
1: p(a) -> Q -> p(a) by axiom k with F := p(a), G := Q;
2: Q -> p(a) -> Q by axiom k with F := Q, G := p(a);
3: Q -> forall p/1 (p(a) -> Q) by so-gen 2 p/1;
"""
    proof = parse_proof_file(text)
    assert formula_to_text(check_proof(proof)) == "Q -> forall p/1 (p(a) -> Q)"
