"""Layer profiles, rho_3, the grid construction and discharging ledgers."""

from .constants import (
    BASIC_LAYERS_THRESHOLD,
    BIGO_CONSTANT,
    COLLECTION_RADIUS,
    DEGENEQ_THRESHOLD,
    FAR_APART_DISTANCE,
    LAYER_UNION_THRESHOLD,
    SEPARATOR_THRESHOLD,
)
from .discharge import (
    ChargeLedger,
    DischargeError,
    FarApartWarning,
    Transfer,
    discharge_section2,
    discharge_section3,
    far_apart_violations,
)
from .layers import LayerProfile, layer_profile
from .report import bigO_bound_report, cylgrid_solution, seven_eighths_bound
from .threefaces import ThreeFaces, degree3_census, threefaces_exact
