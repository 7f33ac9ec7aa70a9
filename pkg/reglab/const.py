"""Constants for reglab."""

NAME = "reglab"
VERSION = "0.1.0"

# JSON documents carry this tag so readers can refuse foreign files
SCHEMA = "reglab/1"

# Defaults
DEFAULT_EXACT_BUDGET = 2**22  # subset combinations one exact cell check may visit
DEFAULT_N_CAP = 12  # largest vertex count handed to the partition enumerator
DEFAULT_BIT_BUDGET = 2**20  # tower values wider than this become an overflow marker
DEFAULT_SEED = 0
DEFAULT_TRIALS = 200
DEFAULT_THREADS = 1
DEFAULT_OUTPUT_FORMAT = "json"
DEFAULT_ITERATION_BUDGET = 10_000  # halving steps the iterative copy extractor may take

# Guards
POWERSET_K_MAX = 20
HKN_K_MAX = 4
VC_K_GUARD = 4
COPY_K_GUARD = 3
TRIP_WITNESS_K_GUARD = 2

# Environment
ENV_THREADS = "REGLAB_THREADS"

# Exit codes
EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONTRACT = 2
EXIT_CAPACITY = 3

DISCLAIMER = (
    "Desk-scale measurement only. Growth classes are asymptotic statements about "
    "infinite hereditary properties and cannot be decided from finite instances."
)


class Pattern:
    """Cross adjacency patterns of Irr(k)."""

    HALF = "half"
    MATCHING = "matching"
    COMATCHING = "comatching"
    NONE = "none"

    ALL = (HALF, MATCHING, COMATCHING)


class Family:
    """Family tags carried by generated instances."""

    POWERSET = "U_k"
    HALF = "H_k"
    MATCHING = "M_k"
    COMATCHING = "Mbar_k"
    BIP = "Bip"
    TRIP = "Trip"
    OTIMES = "Otimes"
    GHAT = "Ghat"
    UHAT = "Uhat"
    BLOWUP = "Blowup"
    HKN = "Hkn"
    UK_BLOWUP_LB = "UkBlowupLB"
    RANDOM = "Random"
    BASIC = "Basic"


class Kind:
    """Partition contract kinds."""

    REGULAR = "regular"
    HOM = "hom"

    ALL = (REGULAR, HOM)


class Mode:
    """How a verdict was reached."""

    EXACT = "exact"
    HEURISTIC = "heuristic"
    HEURISTIC_UNKNOWN = "heuristic-unknown"


class Method:
    """Provenance of a recorded partition size."""

    EXHAUSTIVE = "exhaustive"
    DIRECT = "direct-check"
    CONSTRUCTED_UPPER = "constructed-upper"
    WITNESS_LOWER = "witness-lower"


class TowerKind:
    """Bound functions that tower() and friends evaluate."""

    TW = "Tw"
    TWF_LITERAL = "Twf-literal"
    TWF_ITERATED = "Twf-iterated"
    F = "f"


class Certificate:
    """Shattering certificate kinds."""

    GRAPH = "graph-vc"
    THREEGRAPH = "threegraph-vc"
    SLICEWISE = "slicewise"


class ClassKind:
    """Shape of a graph twin class."""

    SINGLETON = "singleton"
    CLIQUE = "clique"
    INDEPENDENT = "independent"


class TransferKind:
    """Partition transfers."""

    BIP = "bip"
    TRIP = "trip"
    OTIMES = "otimes"
    BLOWUP_HOM = "blowup-hom"
    EXP_CLASS = "exp-class"

    ALL = (BIP, TRIP, OTIMES, BLOWUP_HOM, EXP_CLASS)


class ExtractMode:
    """How a copy was found."""

    BRUTE = "brute"
    ITERATIVE = "iterative"
    BIP = "bip-brute"

    ALL = (BRUTE, ITERATIVE)
