"""Factor bookkeeping for the Goodwillie calculus of polyhedral products."""

from .convergence import classify, divergence_witnesses
from .homology import (
    GradedAbelianGroup,
    cubical_homology,
    real_moment_angle_complex,
    simplicial_homology,
    smash_homology,
    suspend,
    wedge_splitting_homology,
)
from .lie import Alphabet, bounded_words, lyndon_words, standard_bracketing, witt_count
from .simplicial import (
    SimplicialComplex,
    from_facets,
    full_simplex,
    full_subcomplex,
    fwf_trivial_certificate,
    is_shifted,
    minimal_missing_faces,
    skeleton,
)
from .tower import (
    GeneratorIndex,
    SpaceSpec,
    bh_identity_factors,
    cone_factors,
    enumerate_factors_multi,
    enumerate_factors_single,
    full_decomposition,
    product_factors,
)

__version__ = "0.1.0"
