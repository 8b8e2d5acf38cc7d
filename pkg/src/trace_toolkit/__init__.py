"""Exact computation of canonical trace ideals and nearly-Gorenstein
classifications for numerical semigroups, Hibi posets, squarefree
Veronese algebras and polynomial Segre products.

Everything is integer arithmetic on bit masks; closed-form results are
cross-checked against brute-force windowed computations throughout.
"""

from .errors import TraceToolkitError, ConsistencyError
from .semigroup import (
    NumericalSemigroup,
    from_generators,
    normalize_generators,
    iter_semigroups,
)
from .ideals import (
    RelativeIdeal,
    ideal_from_generators,
    canonical_ideal,
    conductor_ideal,
    maximal_ideal,
    semigroup_as_ideal,
    canonical_trace,
    trace_of_ideal,
    ng_report,
    scan_profile,
)
from .threegen import (
    StructureMatrix,
    structure_matrix,
    structure_matrix_of_triple,
    matrix_invariants,
    is_symmetric_triple,
    max_trace_family,
    trace_conductor_classifier,
    shift_analysis,
    shifted_residue,
    shifted_tuple_probe,
)
from .families import (
    arithmetic_family,
    minimal_multiplicity_suite,
    max_embdim_family,
    iter_minimal_multiplicity,
    minimal_multiplicity_scan,
    enumerate_scan,
)
from .monomial import (
    SquarefreeVeronese,
    segre_trace,
    veronese_submodule_witness,
)
from .poset import (
    FinitePoset,
    parse_poset,
    poset_structure,
    hibi_classify,
    count_poset_ideals,
)

__version__ = "0.1.0"
