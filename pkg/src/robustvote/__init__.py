"""Exact-arithmetic analysis of binary collective choice rules.

Rules map vote profiles in {-1, +1}^n to a decision; every quantity here
is a fraction, every verdict carries a finite certificate, and every
certificate can be re-checked by substitution alone.
"""

from .core import (
    DecisionProfile,
    Distribution,
    DistributionSet,
    FormatError,
    RandomVotingRule,
    VotingRule,
    all_profiles,
    apply_permutation,
    constant_rule,
    count_distribution,
    dictatorship_rule,
    enumerate_rules,
    format_rational,
    inverse_rule,
    is_anonymous,
    is_dictatorship,
    is_own_vote_monotone,
    is_self_dual,
    load_rule,
    majority_rule,
    parity_rule,
    parse_rational,
    permute_profile_index,
    popcount,
    supermajority_rule,
    unanimity_rule,
    vote_in_profile,
    weighted_majority_rule,
)
from .efficiency import (
    NoTransportError,
    ParetoVerdict,
    efficiency_verdict,
    is_efficient,
    is_strictly_efficient,
    is_weakly_efficient,
    pareto_compare,
    transport_distribution,
)
from .gamma_mechanism import (
    ExtendedRational,
    GammaWitness,
    epsilon_lower,
    epsilon_lower_witness,
    epsilon_upper,
    gain_ratio,
    gamma_counterexample,
    gamma_utilities,
    is_strategy_proof,
)
from .random_rules import (
    anonymous_even_impossibility,
    certify_random,
    find_dominating_deterministic,
    is_robust_random,
    robust_random_counterexample,
    sign_pattern_holds,
)
from .respond import (
    ResponsivenessVector,
    WeightVector,
    agreement_counts,
    mean_responsiveness_by_count,
    responsiveness,
    rtf_max_weighted,
)
from .robustness import (
    RobustnessCertificate,
    agreement_matrix,
    certify_anonymous,
    certify_p_robust,
    certify_p_robust_full,
    is_permutation_invariant,
    is_robust,
    min_max_responsiveness,
    permute_distribution,
    responsiveness_game,
)
from .verification import verify_report
from .wmr import WmrQuery, classify_rule, detect_wmr, weights_represent

__version__ = "0.1.0"

__all__ = [
    "DecisionProfile",
    "Distribution",
    "DistributionSet",
    "ExtendedRational",
    "FormatError",
    "GammaWitness",
    "NoTransportError",
    "ParetoVerdict",
    "RandomVotingRule",
    "ResponsivenessVector",
    "RobustnessCertificate",
    "VotingRule",
    "WeightVector",
    "WmrQuery",
    "agreement_counts",
    "agreement_matrix",
    "all_profiles",
    "anonymous_even_impossibility",
    "apply_permutation",
    "certify_anonymous",
    "certify_p_robust",
    "certify_p_robust_full",
    "certify_random",
    "classify_rule",
    "constant_rule",
    "count_distribution",
    "detect_wmr",
    "dictatorship_rule",
    "efficiency_verdict",
    "enumerate_rules",
    "epsilon_lower",
    "epsilon_lower_witness",
    "epsilon_upper",
    "find_dominating_deterministic",
    "format_rational",
    "gain_ratio",
    "gamma_counterexample",
    "gamma_utilities",
    "inverse_rule",
    "is_anonymous",
    "is_dictatorship",
    "is_efficient",
    "is_own_vote_monotone",
    "is_permutation_invariant",
    "is_robust",
    "is_robust_random",
    "is_self_dual",
    "is_strategy_proof",
    "is_strictly_efficient",
    "is_weakly_efficient",
    "load_rule",
    "majority_rule",
    "mean_responsiveness_by_count",
    "min_max_responsiveness",
    "parity_rule",
    "parse_rational",
    "pareto_compare",
    "permute_distribution",
    "permute_profile_index",
    "popcount",
    "responsiveness",
    "responsiveness_game",
    "robust_random_counterexample",
    "rtf_max_weighted",
    "sign_pattern_holds",
    "supermajority_rule",
    "transport_distribution",
    "unanimity_rule",
    "verify_report",
    "vote_in_profile",
    "weighted_majority_rule",
    "weights_represent",
]
