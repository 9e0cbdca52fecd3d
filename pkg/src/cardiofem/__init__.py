"""2D finite-element estimation of myocardial deformation and strain.

The pipeline: ingest inner/outer wall contours per time frame, extract
boundary displacement vectors by uniform-angle correspondence, mesh the
frame-0 wall, solve the plane elasticity equations with linear triangles
under Dirichlet boundary displacements, and map per-element strain and
effective strain into angular sectors to localize stiff (infarct-like)
regions. A pressurized-ring phantom with an analytic oracle verifies the
solver end to end.
"""

from .contours import (
    BoundaryDisplacements,
    Contour,
    FrameContours,
    Point2,
    angular_permutation,
    boundary_displacements,
    centroid,
    is_star_shaped,
    order_by_angle,
    polygon_area,
    resample_uniform_angle,
    rotate_about,
)
from .errors import (
    ConfigurationError,
    ConstraintConflictError,
    GeometryError,
    MeshError,
    SolverError,
    StarShapeError,
)
from .fem import (
    BoundaryConditionSet,
    DisplacementField,
    LinearSystem,
    apply_dirichlet,
    apply_traction,
    assemble,
    boundary_conditions_from_displacements,
    element_stiffness,
    internal_pressure_tractions,
    remove_rigid_motion,
    rigid_body_modes,
    solve,
    strain_displacement_matrix,
)
from .materials import (
    AngularRegion,
    Material,
    MaterialField,
    constitutive_matrix,
    region_material_field,
)
from .meshing import Mesh, ValidationReport, locate_element, triangulate_annulus, validate
from .phantom import (
    RingSpec,
    circle_contour,
    lame_displacement,
    lame_strain_polar,
    make_ring,
    pressure_load_cycle,
    solve_ring_traction,
)
from .strain import (
    SectorSummary,
    StrainField,
    effective_strain,
    element_strain,
    element_strain_local,
    sector_average,
    strain_field,
)
from .study import (
    CycleParams,
    FrameResult,
    LocalizationResult,
    Slice,
    Study,
    VolumeCurve,
    average_sector_summaries,
    cycle_strain_analysis,
    infarct_localization,
    normalized_volume_curve,
    ventricle_volume,
)
from .synth import healthy_study, mi_wedge_study, phantom_cycle_study

__version__ = "0.1.0"

__all__ = [
    "AngularRegion",
    "BoundaryConditionSet",
    "BoundaryDisplacements",
    "ConfigurationError",
    "ConstraintConflictError",
    "Contour",
    "CycleParams",
    "DisplacementField",
    "FrameContours",
    "FrameResult",
    "GeometryError",
    "LinearSystem",
    "LocalizationResult",
    "Material",
    "MaterialField",
    "Mesh",
    "MeshError",
    "Point2",
    "RingSpec",
    "SectorSummary",
    "Slice",
    "SolverError",
    "StarShapeError",
    "StrainField",
    "Study",
    "ValidationReport",
    "VolumeCurve",
    "angular_permutation",
    "apply_dirichlet",
    "apply_traction",
    "assemble",
    "average_sector_summaries",
    "boundary_conditions_from_displacements",
    "boundary_displacements",
    "centroid",
    "circle_contour",
    "constitutive_matrix",
    "cycle_strain_analysis",
    "effective_strain",
    "element_stiffness",
    "element_strain",
    "element_strain_local",
    "healthy_study",
    "infarct_localization",
    "internal_pressure_tractions",
    "is_star_shaped",
    "lame_displacement",
    "lame_strain_polar",
    "locate_element",
    "make_ring",
    "mi_wedge_study",
    "normalized_volume_curve",
    "order_by_angle",
    "phantom_cycle_study",
    "polygon_area",
    "pressure_load_cycle",
    "region_material_field",
    "remove_rigid_motion",
    "resample_uniform_angle",
    "rigid_body_modes",
    "rotate_about",
    "sector_average",
    "solve",
    "solve_ring_traction",
    "strain_displacement_matrix",
    "strain_field",
    "triangulate_annulus",
    "validate",
    "ventricle_volume",
]
