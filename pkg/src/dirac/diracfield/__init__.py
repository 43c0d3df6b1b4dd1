"""Almost Dirac structures on R^n and T^n given by symbolic frames."""
from dirac.diracfield.frame import (
    DEFAULT_GRID,
    DiracCheck,
    DiracFrame,
    FrameError,
    NotDiracError,
    build_frame,
    courant_tensor,
    frame_from_rows,
    is_dirac,
)
from dirac.diracfield.generate import (
    LIE_POISSON_CATALOG,
    graph_of_bivector,
    graph_of_two_form,
    lie_poisson_bivector,
    random_dirac_field,
)
from dirac.diracfield.strata import Grid, TypeStratification, stratify, type_at
from dirac.diracfield.surfaces import (
    SurfaceClass,
    WindingError,
    classify_surface_even,
    line_field_of_odd,
)
from dirac.diracfield.threefold import (
    Quotient,
    RegionReport,
    ThreefoldDecomposition,
    decompose_threefold,
    foliated_poisson_bracket,
    jacobiator,
)

__all__ = [
    "DEFAULT_GRID",
    "DiracCheck",
    "DiracFrame",
    "FrameError",
    "Grid",
    "LIE_POISSON_CATALOG",
    "NotDiracError",
    "Quotient",
    "RegionReport",
    "SurfaceClass",
    "ThreefoldDecomposition",
    "TypeStratification",
    "WindingError",
    "build_frame",
    "classify_surface_even",
    "courant_tensor",
    "decompose_threefold",
    "foliated_poisson_bracket",
    "frame_from_rows",
    "graph_of_bivector",
    "graph_of_two_form",
    "is_dirac",
    "jacobiator",
    "lie_poisson_bivector",
    "line_field_of_odd",
    "random_dirac_field",
    "stratify",
    "type_at",
]
