from .cattribe import (
    Diagram,
    DiagramMap,
    KanExtension,
    MatchingObject,
    RelativeMatching,
    factorize_cat,
    tribe_factorize,
)
from .fincat import CommaCategory, FinCat, FinFunctor, OverCategory
from .freecat import AmalgamPresentation, FreeCategory, Quiver
from .formats import DocumentFile, MemoryDocument
from .misc import (
    UnrollingError,
    add_configuration,
    formats_list,
    guess_format,
    reset_configuration,
    set_warnings_callback,
)
from .reedy import ReedyStructure, StrictReedyStructure
from .report import Report, Verdict
from .unroll import DRMorphism, DRObject, UnrolledCategory

__version__ = "0.1.0"
