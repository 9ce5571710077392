"""Closed-form Saint-Venant solutions for thin elastic tubes.

Extension, bending, torsion and flexure of a cylindrical shell with an
arbitrary smooth closed cross-section, in the linear theory of shells
with membrane and bending energies, together with a simplified thin-tube
solution, the circular closed form and an independent verification suite.
"""

from .circular import CircularCase, circle_coefficients, circle_displacement, circle_field
from .config import RunConfig, parse_config, transform_loads_to_centroid
from .ebt import EBTSolution, ExactSolution, ResultantLoads, solve_ebt, solve_exact, torsion_function
from .errors import (
    DegenerateCurve,
    GridMismatch,
    GridTooCoarse,
    InvalidMaterial,
    InvalidRadius,
    KoiterError,
    NonAxialForce,
    NonTransverseLoad,
    OrientationError,
    ParseError,
    SelfIntersection,
    SingularSystem,
    TooFewZStations,
    ValidationError,
)
from .flexure import FlexureSolution, flexure_function, solve_flexure
from .geometry import FourierCurveSpec, SectionCurve, build_section, section_properties
from .runner import run_case
from .shell import ShellMaterial, stiffnesses
from .thin import ThinSolution, thin_coefficients, thin_field, thin_flexure_function
from .verification import (
    ResidualReport,
    check_resultants,
    continuity_check,
    end_resultants,
    equilibrium_residual,
    global_balance,
    verify_field,
)

__version__ = "0.1.0"
