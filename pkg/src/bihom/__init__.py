"""Exact verification of BiHom-type algebra identities and constructions.

Algebras are given by structure constants over Q (``fractions.Fraction``) or a
prime field; every check is exact and evaluated on basis tuples.
"""

from .catalog import CatalogEntry, catalog_get, catalog_list
from .checkers import (
    check_alternative_jacobi, check_bihom_associativity, check_bihom_dendriform,
    check_bihom_jacobi, check_bihom_skew_symmetry, check_kind, check_left_bihom_leibniz,
    check_left_bihom_prelie, check_right_bihom_leibniz, check_right_bihom_prelie,
    check_rota_baxter, rgraf_witnesses,
)
from .constructions import (
    dendriform_to_prelie, generalized_twist, prelie_derived_bracket, rb_assoc_derived_product,
    rb_dendriform, rb_derived_bracket, rb_prelie_left, rb_prelie_right, twist_hypotheses,
    yau_twist,
)
from .errors import (
    AlgebraFileError, BiHomError, BudgetExceeded, DimensionMismatch, FieldMismatch,
    HypothesisError, InstanceError, NotBijectiveError,
)
from .io import parse_algebra_file, serialize_algebra
from .linalg import BilinearProduct, LinearOperator, op_compose, op_inverse
from .model import (
    AlgebraInstance, AlgebraKind, ViolationWitness, make_instance, opposite_flip,
    validate_preamble,
)
from .rbsearch import (
    Ansatz, CertifiedOperator, SearchConfig, enumerate_rb_fp, lift_to_rationals, reduce_mod_p,
    verify_user_operator,
)
from .scalars import GF, QQ, FpElement, field_from_name

__version__ = "0.1.0"
