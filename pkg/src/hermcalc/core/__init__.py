"""Exact coefficient ring and bigraded exterior algebra."""

from .forms import (
    MAX_DIM,
    BiForm,
    conj,
    d,
    ddbar,
    del_,
    delbar,
    j_action,
    power,
    sort_sign,
    t_derivative_at_zero,
    wedge,
)
from .maps import HoloMap, identity_map, pullback
from .poly import DEFAULT_ORDER, N_VAR, T_VAR, Poly, parse_var, var_name, z_var, zb_var
from .positivity import (
    Point,
    determinant,
    evaluate,
    hermitian_matrix_at,
    is_positive_definite_at,
    is_real,
    leading_principal_minors,
)
from .scalar import I, ONE, ZERO, Scalar, as_scalar

__all__ = [
    "MAX_DIM", "BiForm", "conj", "d", "ddbar", "del_", "delbar", "j_action", "power",
    "sort_sign", "t_derivative_at_zero", "wedge", "HoloMap", "identity_map", "pullback",
    "DEFAULT_ORDER", "N_VAR", "T_VAR", "Poly", "parse_var", "var_name", "z_var", "zb_var",
    "Point", "determinant", "evaluate", "hermitian_matrix_at", "is_positive_definite_at",
    "is_real", "leading_principal_minors", "I", "ONE", "ZERO", "Scalar", "as_scalar",
]
