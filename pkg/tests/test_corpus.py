import pytest

from hhtkit.corpus import cases, load_text
from hhtkit.errors import SchemaMismatch
from hhtkit.instantiation import EXACT, Bounded, instantiate, validate
from hhtkit.kernel import TheoryLevel, check_proof, conclusion_for_pipeline
from hhtkit.parser import parse_proof_file, parse_prop_file, parse_subst_file
from hhtkit.semantics import classical_eval, ht_valid
from hhtkit.syntax import prop_atoms

PIPELINE = [c for c in cases() if c.proof and c.expect_proof == "accepted"]
PROPS = [c for c in cases() if c.prop]


@pytest.mark.parametrize("case", PIPELINE, ids=lambda c: c.name)
def test_corpus_proof_accepted_and_instance_behaves(case):
    proof = parse_proof_file(load_text(case.proof))
    check_proof(proof)
    conclusion = conclusion_for_pipeline(proof)
    subst = parse_subst_file(load_text(case.subst))
    assert subst.signature == proof.signature
    mode = EXACT if case.depth is None else Bounded(case.depth)
    assert validate(subst, conclusion, mode) == ()
    instance = instantiate(subst, conclusion, mode)
    counter = ht_valid(instance)
    if case.expect_instance == "valid":
        assert counter is None
        assert ht_valid(instance, evaluator="literal") is None
    else:
        assert counter is not None


def test_example7_must_run_bounded():
    case = next(c for c in cases() if c.name == "example7")
    assert case.depth is not None
    proof = parse_proof_file(load_text(case.proof))
    assert proof.level == TheoryLevel.HHT2_DCA


@pytest.mark.parametrize("case", PROPS, ids=lambda c: c.name)
def test_prop_corpus(case):
    f = parse_prop_file(load_text(case.prop))
    counter = ht_valid(f)
    if case.expect_instance == "valid":
        assert counter is None
    else:
        assert counter is not None


def test_classical_axiom_rejected_with_schema_mismatch():
    proof = parse_proof_file(load_text("classical.proof"))
    with pytest.raises(SchemaMismatch) as err:
        check_proof(proof)
    assert err.value.line == 1


def test_accepted_conclusions_valid_under_random_substitutions():
    # the pipeline guarantee: an accepted proof plus any exact substitution
    # never yields a refutable instance
    import random

    import gen

    rng = random.Random(97)
    for case in PIPELINE:
        if case.depth is not None:
            continue
        proof = parse_proof_file(load_text(case.proof))
        conclusion = conclusion_for_pipeline(proof)
        for _ in range(5):
            subst = gen.rand_substitution(rng, proof.signature)
            assert ht_valid(instantiate(subst, conclusion)) is None, case.name


def test_valid_corpus_instances_are_classically_valid():
    for case in PIPELINE:
        if case.expect_instance != "valid":
            continue
        proof = parse_proof_file(load_text(case.proof))
        conclusion = conclusion_for_pipeline(proof)
        subst = parse_subst_file(load_text(case.subst))
        mode = EXACT if case.depth is None else Bounded(case.depth)
        instance = instantiate(subst, conclusion, mode)
        atoms = sorted(prop_atoms(instance))
        for bits in range(2 ** len(atoms)):
            total = frozenset(a for k, a in enumerate(atoms) if bits >> k & 1)
            assert classical_eval(total, instance)
