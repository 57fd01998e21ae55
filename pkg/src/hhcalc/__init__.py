"""Exact-arithmetic Hochschild cohomology of finite-dimensional algebras and
their trivial extensions, with machine verification of the structural
decompositions relating the two."""

from .fields import Field
from .sparse import SparseMatrix, cohomology_dim, kernel_basis, rank
from .algebra import (zoo, ZOO_NAMES, trivial_extension, regular_bimodule,
                      dual_bimodule, algebra_from_json, algebra_to_json)
from .hochschild import (hh_dims, hochschild_homology_dims,
                         ext_bimodule_dims)
from .split import SplitAlgebra, build_X, cyc_dim_definition
from .frobenius import (find_frobenius, nakayama, grading, build_Y,
                        predict_hh_TA)
from .checks import run_checks, CHECK_IDS
from .report import VerificationReport, CheckOutcome

__all__ = ["Field", "SparseMatrix", "rank", "kernel_basis",
           "cohomology_dim", "zoo", "ZOO_NAMES", "trivial_extension",
           "regular_bimodule", "dual_bimodule", "algebra_from_json",
           "algebra_to_json", "hh_dims", "hochschild_homology_dims",
           "ext_bimodule_dims", "SplitAlgebra", "build_X",
           "cyc_dim_definition", "find_frobenius", "nakayama", "grading",
           "build_Y", "predict_hh_TA", "run_checks", "CHECK_IDS",
           "VerificationReport", "CheckOutcome"]

__version__ = "0.1.0"
