"""hhtkit: finite Hilbert-style proofs checked against exhaustive
two-world model checking of their propositional instances."""

from .errors import (
    BudgetExceeded,
    CaptureViolation,
    ConclusionNotClosed,
    ConclusionNotFirstOrder,
    ForwardReference,
    HhtError,
    InfiniteUniverse,
    LevelViolation,
    MPMismatch,
    NotClosed,
    NotFirstOrder,
    ParseError,
    ProofError,
    SchemaMismatch,
    SideConditionViolation,
    SignatureError,
    SubstitutionError,
    UnmappedAtom,
)
from .instantiation import (
    EXACT,
    Bounded,
    Exact,
    Substitution,
    ground_terms,
    herbrand_base,
    instantiate,
    lookup,
    universe,
    validate,
)
from .kernel import (
    ByAxiom,
    ByGenAll,
    ByGenEx,
    ByMP,
    BySOGen,
    BySOGenEx,
    Proof,
    ProofLine,
    TheoryLevel,
    check_proof,
    conclusion_for_pipeline,
    list_schemas,
)
from .semantics import (
    HTInterpretation,
    World,
    g3_eval,
    ht_valid,
    models,
    render_countermodel,
    satisfies,
)
from .herbrand import (
    FunctionName,
    HerbrandInterpretation,
    PredicateName,
    h_satisfies,
    hat_eval,
    hht_valid_bruteforce,
    lift,
    lifting_check,
)
from .syntax import (
    Atom,
    Binary,
    Equals,
    Falsum,
    FnApp,
    FOFormula,
    FuncVar,
    GenVar,
    GroundAtom,
    PAnd,
    PAtom,
    PImp,
    POr,
    PredVar,
    PropFormula,
    Quant,
    Signature,
    Var,
    eliminate_restrictors,
    formula_to_text,
    free_variables,
    prop_to_text,
    rank,
    substitutable,
    substitute_term,
)

__version__ = "0.1.0"
