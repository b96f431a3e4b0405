"""Decision procedures for D0L systems.

Submodules:
  system       alphabets, morphisms, D0L systems, parsing, iteration
  growth       bounded letters, per-letter growth classes, pushiness
  corpus       brute-force factor enumeration and power/collision oracles
  codes        unique-decipherability tests, injectivity, injective simplification
  periodicity  periodic-point certificates and repetitiveness decisions
  circularity  interpretations, synchronizing points, the circularity verdict
  cli          command-line front end
"""

from .circularity import (
    CircularityVerdict,
    DelayEstimate,
    Interpretation,
    SyncReport,
    decide_circularity,
    estimate_sync_delay,
    interpretations_of,
    sync_report,
)
from .codes import (
    CodeCheck,
    InjectiveSimplification,
    InjectivityReport,
    SimplificationStep,
    injective_simplification,
    injectivity,
    is_code,
)
from .corpus import (
    FactorCorpus,
    collision_search,
    factor_corpus,
    max_power,
    nonsync_witness_search,
)
from .errors import (
    BudgetExceededError,
    D0LError,
    ErasingSystemError,
    InvariantError,
    NotInCorpusError,
    ParseError,
)
from .growth import (
    GrowthClass,
    SigmaPartition,
    bounded_letters,
    bounded_sync_bound,
    growth_class,
    is_primitive,
    is_pushy,
    sigma_partition,
)
from .periodicity import (
    PeriodicityVerdict,
    PeriodicPointCertificate,
    RepetitiveVerdict,
    URVerdict,
    is_repetitive,
    is_unboundedly_repetitive,
    periodic_point_certificate,
)
from .system import (
    Alphabet,
    D0LSystem,
    IncidenceMatrix,
    Morphism,
    incidence_matrix,
    iterate,
    make_system,
    parse_system,
    serialize_system,
)

__all__ = [
    "Alphabet",
    "BudgetExceededError",
    "CircularityVerdict",
    "CodeCheck",
    "D0LError",
    "D0LSystem",
    "DelayEstimate",
    "ErasingSystemError",
    "FactorCorpus",
    "GrowthClass",
    "IncidenceMatrix",
    "InjectiveSimplification",
    "InjectivityReport",
    "Interpretation",
    "InvariantError",
    "Morphism",
    "NotInCorpusError",
    "ParseError",
    "PeriodicPointCertificate",
    "PeriodicityVerdict",
    "RepetitiveVerdict",
    "SigmaPartition",
    "SimplificationStep",
    "SyncReport",
    "URVerdict",
    "bounded_letters",
    "bounded_sync_bound",
    "collision_search",
    "decide_circularity",
    "estimate_sync_delay",
    "factor_corpus",
    "growth_class",
    "incidence_matrix",
    "injective_simplification",
    "injectivity",
    "interpretations_of",
    "is_code",
    "is_primitive",
    "is_pushy",
    "is_repetitive",
    "is_unboundedly_repetitive",
    "iterate",
    "make_system",
    "max_power",
    "nonsync_witness_search",
    "parse_system",
    "periodic_point_certificate",
    "serialize_system",
    "sigma_partition",
    "sync_report",
]
