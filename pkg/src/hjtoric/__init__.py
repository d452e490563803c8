"""hjtoric: exact combinatorics of cyclic quotient resolutions, weighted
blowups and the circle of reduced spaces of a symplectic circle action."""

from .errors import DomainError, EvaluationError, StructureError
from .hj import HJExpansion, ext_gcd, hj_eval, hj_expand, hj_reverse, mod_inverse
from .homology import (
    IntersectionLattice,
    blow_down,
    blow_up,
    blow_up_at,
    chain_contact_criterion,
    chain_contact_replay,
    empty_lattice,
    exceptional_pair_criterion,
    signature,
)
from .resolution import (
    Chain,
    CyclicSingularity,
    resolve_cyclic,
    same_resolution,
    type_equivalent,
)
from .lattice2d import (
    Polygon,
    UnimodularAffineMap,
    Wedge,
    apply_map,
    corner_cut,
    is_smooth_vertex,
    local_model_wedge,
    normalize_vertex,
    phi_embed,
    quadrant,
)
from .blowup import (
    BlowupConfig,
    McDuffSequence,
    cross_check,
    cut_chords,
    fulton_config,
    mcduff_lattice,
    mcduff_sequence,
    weighted_blowdown,
)
from .circle import (
    FixedPointDatum,
    GeneralizedCover,
    ReducedSpaceState,
    RunResult,
    area,
    build_cover,
    cross_level,
    initial_state,
    run_loop,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
