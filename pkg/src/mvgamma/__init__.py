"""Finite MV-algebras, unital lattice-ordered groups, and the maps between them.

The package has three layers:

* table algebra — ``mv_core`` (finite MV-algebras as integer Cayley tables,
  morphisms, products), ``spectrum`` (ideals, primes, quotients, the canonical
  embedding into a product of chains);
* group side — ``lgroup`` (chain groups of carry pairs, finite products with
  a strong unit, unit segments), ``snf`` (integer Smith reduction used by the
  presentation experiment);
* the bridge — ``equivalence`` (enveloping groups, good sequences, the unit
  interval against the enveloping group, round trips), with ``serialize``,
  ``script``, ``interp``, ``cli``, and ``sweeps`` layered on top.

Everything is exact integer arithmetic; there is no floating point anywhere.
"""

from .equivalence import (
    GoodSequence,
    StarAlgebra,
    UpsilonMap,
    canonical_entries,
    canonical_good_sequence,
    coordinate_ideal_checks,
    free_quotient_experiment,
    gamma_restriction,
    generated_membership,
    good_sequence_sum,
    iota_naturality,
    iota_roundtrip,
    is_good_sequence,
    segment_generation_check,
    star_algebra,
    star_chain,
    star_chain_morphism,
    star_functoriality,
    star_membership,
    star_morphism,
    upsilon,
    upsilon_inverse_chain,
    upsilon_naturality,
)
from .errors import InternalInvariantError
from .lgroup import (
    ChangChainGroup,
    ChangPair,
    GammaSegment,
    ProductLuGroup,
    abs_decompose,
    gamma_segment,
    group_spectrum,
    make_product_group,
    unit_bound,
)
from .mv_core import (
    AxiomReport,
    FiniteMVAlgebra,
    MVMorphism,
    check_morphism,
    check_mv_axioms,
    compose,
    find_isomorphism,
    find_morphisms,
    identity_morphism,
    make_chain,
    make_product,
    make_product_many,
)
from .serialize import SchemaError, dumps, export_json, import_json, loads, to_jsonable
from .snf import invariant_factors, smith_diagonal
from .spectrum import (
    Ideal,
    Spectrum,
    canonical_embedding,
    enumerate_ideals,
    is_ideal,
    is_prime_ideal,
    quotient,
    spectrum,
)
from .sweeps import SweepContext, run_all_checks

__all__ = [
    "AxiomReport",
    "ChangChainGroup",
    "ChangPair",
    "FiniteMVAlgebra",
    "GammaSegment",
    "GoodSequence",
    "Ideal",
    "InternalInvariantError",
    "MVMorphism",
    "ProductLuGroup",
    "SchemaError",
    "Spectrum",
    "StarAlgebra",
    "SweepContext",
    "UpsilonMap",
    "abs_decompose",
    "canonical_embedding",
    "canonical_entries",
    "canonical_good_sequence",
    "check_morphism",
    "check_mv_axioms",
    "compose",
    "coordinate_ideal_checks",
    "dumps",
    "enumerate_ideals",
    "export_json",
    "find_isomorphism",
    "find_morphisms",
    "free_quotient_experiment",
    "gamma_restriction",
    "gamma_segment",
    "generated_membership",
    "good_sequence_sum",
    "group_spectrum",
    "identity_morphism",
    "import_json",
    "invariant_factors",
    "iota_naturality",
    "iota_roundtrip",
    "is_good_sequence",
    "is_ideal",
    "is_prime_ideal",
    "loads",
    "make_chain",
    "make_product",
    "make_product_group",
    "make_product_many",
    "quotient",
    "run_all_checks",
    "segment_generation_check",
    "smith_diagonal",
    "spectrum",
    "star_algebra",
    "star_chain",
    "star_chain_morphism",
    "star_functoriality",
    "star_membership",
    "star_morphism",
    "to_jsonable",
    "unit_bound",
    "upsilon",
    "upsilon_inverse_chain",
    "upsilon_naturality",
]

__version__ = "0.1.0"
