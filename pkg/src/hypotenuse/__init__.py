"""Right triangles with integer sides and prime hypotenuse: exact counts,
density trends and numeric checks of the sieve inputs behind them."""
from ._backend import available as available_backends
from ._backend import kernels as _kernels

__version__ = "0.1.0"

BACKEND = _kernels().NAME

__all__ = ["BACKEND", "available_backends", "__version__"]
