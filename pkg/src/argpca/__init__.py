"""Reference-guided principal component subspace estimation for
high-dimension, low-sample-size data, with a Monte-Carlo benchmark harness
and a returns-data pipeline."""

from .errors import (
    ArgPcaError,
    ConfigError,
    DegenerateDataError,
    DegenerateGeometryError,
    RidgeSingularityError,
)
from .estimator import (
    RidgeVectors,
    SubspaceBasis,
    arg_subspace,
    arg_vector_single,
    orthonormalize,
    ridge_vectors_direct,
    ridge_vectors_expansion,
)
from .metrics import (
    AngleReport,
    gram_min_eig,
    principal_angles,
    projection_norm_sq,
    vector_angle,
)
from .model import (
    ReferenceSet,
    SampleDraw,
    SpikedModelSpec,
    make_walsh_basis,
    reference_single,
    reference_two_spike,
    references_from_weights,
    sample_gaussian,
    sample_student_t,
)
from .pca import SamplePca, align_signs, center, gram_pca

__version__ = "0.1.0"

__all__ = [
    "ArgPcaError",
    "ConfigError",
    "DegenerateDataError",
    "DegenerateGeometryError",
    "RidgeSingularityError",
    "SubspaceBasis",
    "RidgeVectors",
    "arg_subspace",
    "arg_vector_single",
    "orthonormalize",
    "ridge_vectors_direct",
    "ridge_vectors_expansion",
    "AngleReport",
    "principal_angles",
    "vector_angle",
    "projection_norm_sq",
    "gram_min_eig",
    "SpikedModelSpec",
    "ReferenceSet",
    "SampleDraw",
    "make_walsh_basis",
    "reference_single",
    "reference_two_spike",
    "references_from_weights",
    "sample_gaussian",
    "sample_student_t",
    "SamplePca",
    "center",
    "gram_pca",
    "align_signs",
    "__version__",
]
