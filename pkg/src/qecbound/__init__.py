"""Syndrome-conditioned error analysis of the 5-qubit code and bosonic-bath
bounds on the time available for quantum computation."""

__version__ = "0.1.0"

from .bath import (
    BathChannel,
    BathGeometry,
    ModeGrid,
    QubitLayout,
    build_mode_grid,
    build_radial_mode_grid,
    gamma,
    gamma_infinity,
    lattice_sites,
    regular_layout,
    w_pair,
    w_sum,
)
from .bounds import (
    BoundInput,
    Regime,
    RegimeReport,
    SumKind,
    calibrate_c_cal,
    d_sat,
    fit_loglog_slope,
    gamma_asymptotic,
    hs_distance,
    mmax_multi,
    mmax_multi_numeric,
    mmax_single,
    trace_distance_single,
    w_sum_asymptotic,
    zeta_and_regime,
)
from .config import RunConfig, default_config, from_dict, load_config
from .coupling import (
    AMatrix,
    EffectiveCoupling,
    EtaEntry,
    EtaTable,
    a_matrix,
    enumerate_eta,
    lambda_star,
)
from .errors import (
    CapabilityError,
    ConfigError,
    CriterionUnreachableError,
    DegenerateInputError,
    DimensionError,
    QecBoundError,
    UnsupportedOrderError,
)
from .pauli import (
    ErrorClass,
    PauliString,
    StabilizerCode,
    Syndrome,
    classify,
    commutes,
    five_qubit_code,
    multiply,
    paulis_of_weight,
    syndrome,
    verify_distance,
)

__all__ = [
    "__version__",
    "AMatrix",
    "BathChannel",
    "BathGeometry",
    "BoundInput",
    "CapabilityError",
    "ConfigError",
    "CriterionUnreachableError",
    "DegenerateInputError",
    "DimensionError",
    "EffectiveCoupling",
    "ErrorClass",
    "EtaEntry",
    "EtaTable",
    "ModeGrid",
    "PauliString",
    "QecBoundError",
    "QubitLayout",
    "Regime",
    "RegimeReport",
    "RunConfig",
    "StabilizerCode",
    "SumKind",
    "Syndrome",
    "UnsupportedOrderError",
    "a_matrix",
    "build_mode_grid",
    "build_radial_mode_grid",
    "calibrate_c_cal",
    "classify",
    "commutes",
    "d_sat",
    "default_config",
    "enumerate_eta",
    "fit_loglog_slope",
    "five_qubit_code",
    "from_dict",
    "gamma",
    "gamma_asymptotic",
    "gamma_infinity",
    "hs_distance",
    "lambda_star",
    "lattice_sites",
    "load_config",
    "mmax_multi",
    "mmax_multi_numeric",
    "mmax_single",
    "multiply",
    "paulis_of_weight",
    "regular_layout",
    "syndrome",
    "trace_distance_single",
    "verify_distance",
    "w_pair",
    "w_sum",
    "w_sum_asymptotic",
    "zeta_and_regime",
]
