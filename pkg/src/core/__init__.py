# src/core/__init__.py
from .errors import (
    HeckeCellsError,
    MethodDisagreementError,
    VerificationError,
    RankBoundError,
    CacheFormatError,
)
from .permutations import Permutation, Word, all_permutations
from .scalars import LaurentScalar, RationalScalar
from .multipoly import MultiPoly
from .utils import load_config, setup_logging, resolve_cache_dir, save_report, dump_json
