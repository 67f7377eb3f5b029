"""Descent search over well-founded structures.

A generic engine that finds evidence by strictly descending through a
carrier, the canonical instance on the naturals with its executable law
suite, a least-element solver for complemented subsets, prime-divisor
extraction, an algebra of searchable structures (pullback, restriction,
product, coproduct, lexicographic and dependent pairs), and a small
predicate language with a CLI on top.
"""

from .engine import (
    DEFAULT_FUEL,
    Descend,
    DescentStructure,
    DescentTrace,
    Found,
    FuelExhausted,
    NonDecreasingStep,
    SearchDefect,
    SearchError,
    nat_search,
    run_steps,
    search,
    verify_trace,
)
from .naturals import (
    AxiomReport,
    LawResult,
    check_axiom_suite,
    check_function_laws,
    find_non_descent,
    mutated_structure,
    nat_structure,
)
from .complemented import (
    ComplementedSubset,
    DisjointnessViolated,
    ExtensionalSubset,
    IncludedInRefuters,
    LeastElementCert,
    LeastViolated,
    MissingBound,
    NotLocatable,
    NotMonotone,
    OntoWitnessInvalid,
    Overlap,
    UndecidableOracle,
    check_least_uniqueness,
    clnp_least,
    downset,
    locate,
    locator_from_least,
    overlaps,
    pem_example,
    preimage,
    preimage_locator,
    strong_complement,
    subset_from_values,
)
from .arithmetic import (
    Classification,
    Composite,
    OutOfDomain,
    Prime,
    PrimeDivisorResult,
    classify,
    is_prime_oracle,
    prime_divisor_clnp,
    prime_divisor_descent,
    prime_subset,
)
from .combinators import (
    CoherenceViolated,
    ContractViolated,
    EscapedSubset,
    IndexedFamily,
    RelPreservingMap,
    booleans,
    check_dichotomous,
    check_strong,
    coproduct,
    lex_product,
    product,
    pullback,
    restrict,
    sigma,
    strongly_empty_check,
    structure_from_config,
    two_point_family,
)

__version__ = "0.1.0"
