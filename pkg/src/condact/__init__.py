"""Activation-based conditional inference over propositional belief bases.

Queries of the form "(consequent | antecedent)" are answered with System P
on an activation-ranked subset of the base: each conditional's activation
combines a base level derived from its Z-rank (and evolved by usage) with
spreading activation primed by the query's atoms.  See the README for the
file formats and the ``condact`` command-line interface.
"""

from .activation import (
    ActivationProfile,
    AssociationMatrix,
    SpreadingNetwork,
    TriggeringLabels,
    activation_profile,
    association,
    association_matrix,
    build_network,
    initial_base_levels,
    label_network,
    select,
    weighting,
)
from .engine import EngineConfig, QueryTrace, Session, answer_query, soundness_check
from .errors import (
    CapacityError,
    CondactError,
    InconsistentBaseError,
    ParseError,
    SessionFormatError,
    SignatureMismatchError,
)
from .inference import (
    BeliefBase,
    QueryResponse,
    ZPartition,
    answer,
    direct_focus,
    is_consistent,
    iterated_focus,
    system_p_infers,
    tolerates,
    z_partition,
    z_rank,
)
from .logic import (
    FALSE,
    INF,
    MAX_ENUM_ATOMS,
    TRUE,
    And,
    Atom,
    Conditional,
    Const,
    Formula,
    Not,
    Or,
    RankingFunction,
    Signature,
    World,
    accepts,
    enumerate_worlds,
    evaluate,
    falsifies,
    format_formula,
    implies,
    rank_of_formula,
    verifies,
)
from .memory import ActivationState, forgetting_factor, reset_state, update_state
from .parsing import (
    BeliefBaseDocument,
    parse_belief_base,
    parse_conditional,
    parse_formula,
    parse_session,
    serialize_belief_base,
    serialize_session,
)

__version__ = "0.1.0"
