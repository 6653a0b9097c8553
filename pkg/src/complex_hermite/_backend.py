"""Pick the compiled kernels when importable, otherwise the numpy fallback."""
try:
    from . import _kernels as _impl
    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _kernels_py as _impl
    BACKEND = "python"

chp_table = _impl.chp_table
chp_points = _impl.chp_points
chp_scaled_table = _impl.chp_scaled_table
hermite_function_table = _impl.hermite_function_table

__all__ = ["BACKEND", "chp_table", "chp_points", "chp_scaled_table", "hermite_function_table"]
