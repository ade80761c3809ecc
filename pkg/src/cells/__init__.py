# src/cells/__init__.py
from .tableaux import (
    CellDescriptor,
    Partition,
    Tableau,
    all_partitions,
    cell_of,
    rsk,
    rsk_inverse,
    schutzenberger_dual,
    standard_tableaux,
    statistics,
)
from .asymptotics import CellAnalyzer
from .schutzenberger import (
    MathasDecomposition,
    mathas_decompose,
    schutzenberger_L,
    schutzenberger_R,
    w0_twisted_involutions,
)
from .properties import CellClosure, PropertyVerifier, verify_p_properties
