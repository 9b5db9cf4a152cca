"""Analysis of monadic length-reducing rewriting systems presenting plain groups."""

from .cayley import (
    CayleyBall,
    Dipath,
    build_ball,
    check_path_confinement,
    check_single_edge,
    export_dot,
    geodesic,
    multiplication_table,
)
from .confluence import CriticalPair, ConfluenceReport, critical_pairs, is_confluent, joinable_oracle
from .decomposition import PlainDecomposition, check_cochet, decompose, render_decomposition
from .errors import *  # noqa: F401,F403
from .groups import (
    DflSubgroup,
    GroupStatus,
    RcSubgroup,
    check_dfl_properties,
    check_not_rc,
    cycle_and_reduce,
    detect_dfl_subgroups,
    detect_rc_subgroups,
    group_status,
    order_of,
    unique_afl_rotation,
)
from .mrs import load_system, parse_system, render_system
from .normalization import NormalizationResult, check_isomorphic_balls, normalize
from .sampler import SamplerConfig, sample_group_systems, sample_system
from .smith import IntegerMatrix, SmithForm, smith_normal_form
from .system import Classification, ReductionTrace, RewritingSystem, Rule, classify, reduce
from .tables import GroupTable
