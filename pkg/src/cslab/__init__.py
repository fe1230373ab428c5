"""cslab: a numerical laboratory for commutativity-and-spectrum
preservers on n x n complex matrices."""

from .linalg import (
    Line,
    Frame,
    OrthoFrame,
    line_distance,
    frame_distance,
    commutator_norm,
    eig_decompose,
    polar_decompose,
)
from .frames import Permutation, Partition, evert, apply_linear, act_permutation, pi_linked
from .operators import (
    SemisimpleOp,
    to_matrix,
    from_matrix,
    functional_calculus,
    conjugation_preserver,
    transpose_conjugation_preserver,
    exotic_evert,
    exotic_polar,
    membership_class,
)
from .domains import SpectralDomain
from .divdiff import (
    conj,
    delta,
    iterated_delta,
    circle_conj_oracle,
    boundedness_probe,
    limit_probe,
    regularity_verdict,
)
from .configspace import (
    PointCloud,
    perfectness_check,
    build_config_complex,
    components,
    sn_action_on_components,
    cn_graph,
    has_n_cycle,
    hypothesis_report,
)
from .scenarios import circle_cloud, interval_cloud, disk_cloud, scenario_cloud, scenario_domain
from .harness import (
    ExperimentConfig,
    random_commuting_pair,
    cs_preserver_check,
    collision_path_probe,
    run_scenario,
)

__version__ = "0.1.0"
