"""Regular incidence complexes built from generalized string C-groups."""
from .cgroup import SubgroupSystem, is_generalized_string_cgroup, is_string_cgroup, k_vector
from .complex import IncidenceComplex, from_covers
from .construction import build_complex, coset_geometry, derive_system, verify_reconstruction
from .errors import RegComplexError
from .permgroup import PermGroup, Permutation, from_cycles

__version__ = "0.1.0"

__all__ = [
    "SubgroupSystem", "is_generalized_string_cgroup", "is_string_cgroup", "k_vector",
    "IncidenceComplex", "from_covers", "build_complex", "coset_geometry",
    "derive_system", "verify_reconstruction", "RegComplexError", "PermGroup",
    "Permutation", "from_cycles", "__version__",
]
