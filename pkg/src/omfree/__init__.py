"""Exact computations in free algebras of orthogonal modular forms."""

__version__ = "0.1.0"

from .qseries import QSeries  # noqa: E402,F401
from .lattice import LatticeData, gram_matrix  # noqa: E402,F401
from .classical import ScalarForm  # noqa: E402,F401
from .weil import ComponentForm, JacobiForm, jacobi_eisenstein, pullback  # noqa: E402,F401
from .lifts import ParamodularForm, gritsenko_lift, hecke_V  # noqa: E402,F401
