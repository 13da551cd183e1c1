"""Factor sieve, root construction, and coprime census for 4*n*n + 1."""

from ._kernels import HAVE_NUMBA, MAX_INDEX, default_engine, resolve_engine, warmup
from .census import (
    CensusReport,
    SecondProofWitness,
    census,
    exact_coprime_count,
    inclusion_exclusion_count,
    product_formula,
    second_proof_witness,
    verify_main_identity,
)
from .errors import BadFactorizationError, NoRootsError, QuadsieveError, RangeError
from .modarith import (
    PrimePower,
    U64_MAX,
    crt_combine,
    hensel_lift,
    is_prime,
    mul_mod,
    pow_mod,
    primitive_root,
    sqrt_minus_one,
    sqrt_minus_one_fast,
)
from .oracle import naive_coprime_count, naive_factor, naive_root_scan
from .roots import RootSet, RootSummary, all_roots, root_summary, verify_first_degree
from .sieve import (
    BasisPrime,
    DEFAULT_SEGMENT_SIZE,
    PrimeBasis,
    SieveSegment,
    Term,
    basis_from_primes,
    divisor_positions,
    enumerate_primes,
    first_k_basis,
    lemma2_witness,
    primes_1mod4,
    sieve_range,
    smallest_factor_table,
    term_value,
    terms_digest,
)
from .suites import SUITES, SuiteResult, run_suite

__version__ = "0.1.0"
