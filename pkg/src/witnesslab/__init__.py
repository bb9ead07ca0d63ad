"""DFA algebra and state-complexity checks for universal witness languages."""

from .automata import (
    AutomatonError,
    CapExceededError,
    Dfa,
    Nfa,
    accepts,
    as_nfa,
    complement,
    determinize,
    make_dfa,
    make_nfa,
    reverse,
)
from .minimize import are_equivalent, are_isomorphic, minimize_brzozowski, minimize_refine, trim
from .operations import BooleanOp, boolean_product, concatenate, star
from .witnesses import (
    Family,
    MonoidCapExceeded,
    Role,
    Transformation,
    WitnessSpec,
    build_witness,
    letter_action,
    parse_spec,
    permute_letters,
    transition_monoid_size,
    witness,
)
from .complexity import (
    CaseResult,
    OperationKind,
    VerificationReport,
    default_witnesses,
    expected_bound,
    measure,
    verify_case,
    verify_sweep,
)

__version__ = "0.1.0"
