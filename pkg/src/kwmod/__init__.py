"""Pyramid gradings of gl(m|n) and sl(m|n) over F_p and Kac-Weisfeiler dimension checks."""

from ._kernels import BACKEND
from .fp_linalg import FpMatrix, kernel, rank, restrict_map
from .kw import (
    ExponentDim,
    KwDims,
    VerificationReport,
    centralizer,
    induced_dimension,
    kw_bound,
    kw_dims,
    verify_instance,
)
from .partitions import Parity, Partition, PartitionPair, centralizer_dims_formula, merge_shapes
from .pchar import SemisimplePart, check_levi_identities, kw_bound_general, levi_decompose
from .pyramid import BoxId, Pyramid, dynkin_pyramid, render_ascii, shift_pyramid, young_pyramid
from .superalgebra import AlgebraContext, SuperMatrix, Subspace, nilpotent_e, parabolic

__version__ = "0.1.0"
