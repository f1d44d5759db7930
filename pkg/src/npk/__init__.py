"""Exact computation with n-potent matrices over cyclotomic fields."""

from .cyclofield import CycNum, GaloisOrbitSet, descend, embed_complex, galois_orbits, lift, omega, zeta
from .errors import (
    DimensionError,
    FieldError,
    NotNPotentError,
    NPKError,
    ParseError,
    SingularMatrixError,
    UnrealizableError,
    VerificationError,
)
from .exactmat import CycMatrix, det, inverse, is_npotent, rank
from .kgroup import KClass, class_of, group_structure, phi, psi, representative, stable_padding
from .nhom import NHomSpec, apply_entrywise, check_nhom, induced_kmap, scalar_nhom, transport_witness
from .npotent import (
    NPartition,
    complementary,
    decompose,
    quadripotent_split_q4,
    random_npotent,
    recompose,
    tripotent_split,
)
from .witness import (
    EquivWitness,
    SimWitness,
    closeness_bound_check,
    compose_transitive,
    from_similarity,
    intertwiner,
    normalize_algebraic,
    stable_similarity,
)

__version__ = "0.1.0"
