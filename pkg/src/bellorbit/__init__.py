"""Bell-CHSH nonlocality of two-qubit states and its reach under global unitaries."""

__version__ = "0.1.0"

from .chsh import (  # noqa: E402
    BellOperator,
    ChshAnalysis,
    WitnessKind,
    WitnessOperator,
    analyze_chsh,
    build_bell_operator,
    chsh_operator_to_witness,
    evaluate_witness,
    generic_linear_witness,
    optimal_bell_operator,
)
from .families import (  # noqa: E402
    Family,
    FamilySpec,
    make_bell_diagonal,
    make_diagonal_separable,
    make_generalized_werner,
    make_product_plus_unitary,
    make_werner,
    sweep_family,
)
from .orbit import OrbitConfig, OrbitResult, Verdict, classify_al, maximize_over_orbit, orbit_sample  # noqa: E402
from .states import (  # noqa: E402
    DensityMatrix,
    HilbertSchmidtForm,
    from_hilbert_schmidt,
    is_absolutely_separable,
    is_entangled_ppt,
    to_hilbert_schmidt,
    validate_state,
)
from .unitaries import (  # noqa: E402
    CartanParams,
    cnot,
    compose_cartan,
    conjugate,
    decompose_cartan,
    haar_random_unitary,
    local_unitary,
    nonlocal_core,
)
from .witness import build_conjugated_witness, verify_witness_on_al  # noqa: E402
