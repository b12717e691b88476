"""Order-preserving pattern matching with up to k mismatches.

Find every window of a numeric text whose relative order (and, with
repeated values, equality pattern) matches a numeric pattern after ignoring
the elements at up to k shared positions. The fast path maintains a
sliding-window signature, filters window starts whose signature differs
from the pattern's in more than 3k places, and verifies the survivors
exactly through heaviest-increasing-subsequence / heaviest-chain instances
built from the few mismatch positions.
"""

from .matcher import (
    MatchStats,
    PatternIndex,
    k_isomorphic_check,
    k_isomorphic_subset_oracle,
    k_isomorphic_witness,
    match_all,
    match_naive,
)
from .seqcore import DuplicateValuesError, OrderedIntDict, rank_compress, sorting_permutation
from .signature import Signature, SigSymbol, SlidingSignature, compute_signature, signature_hamming
from .subsequence import (
    WeightedPoint,
    WeightedSeqItem,
    heaviest_chain,
    heaviest_increasing_subsequence,
    lis_length_at_least,
)

__version__ = "0.1.0"

__all__ = [
    "DuplicateValuesError",
    "MatchStats",
    "OrderedIntDict",
    "PatternIndex",
    "Signature",
    "SigSymbol",
    "SlidingSignature",
    "WeightedPoint",
    "WeightedSeqItem",
    "compute_signature",
    "heaviest_chain",
    "heaviest_increasing_subsequence",
    "k_isomorphic_check",
    "k_isomorphic_subset_oracle",
    "k_isomorphic_witness",
    "lis_length_at_least",
    "match_all",
    "match_naive",
    "rank_compress",
    "signature_hamming",
    "sorting_permutation",
    "__version__",
]
