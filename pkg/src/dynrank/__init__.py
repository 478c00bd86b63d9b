"""Dynamic rank maintenance over finite fields and the queries it powers.

The core structure is a basis of the column space kept "good" with respect to
a matrix that changes one entry at a time: every non-kernel basis vector has a
row where it alone has a nonzero product.  Rank is then the number of
non-kernel basis vectors, and each change costs a constant number of column
operations.
"""

from .errors import InvariantError
from .matching import MatchingTracker
from .modp import PrimeMode, PrimeSet, mod_inverse, rank_mod_p, select_prime_set, sieve_primes
from .queries import Nfa, RpqTracker, TwoSatTracker
from .rank_core import BACKENDS, GoodBasisStack, GoodBasisState
from .rank_multi import IntMatrixTracker
from .reach import AllPairsReach, ReachTracker

__all__ = [
    "AllPairsReach",
    "BACKENDS",
    "GoodBasisStack",
    "GoodBasisState",
    "IntMatrixTracker",
    "InvariantError",
    "MatchingTracker",
    "Nfa",
    "PrimeMode",
    "PrimeSet",
    "ReachTracker",
    "RpqTracker",
    "TwoSatTracker",
    "mod_inverse",
    "rank_mod_p",
    "select_prime_set",
    "sieve_primes",
]
