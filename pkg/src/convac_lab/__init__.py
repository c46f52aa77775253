"""convac-lab: exactly computable tensor-format mixture models.

Shallow (rank-decomposed) and deep (binary-tree) mixture models over a
finite alphabet, exact Shannon measures on them, differential entropy of
1-D densities under monotone transforms, and verification of the
entropy-growth bounds along the model structure.
"""

from .backend import active_backend, available_backends
from .densities import (
    DensitySpec,
    MonotoneMap,
    QuadratureEntropy,
    QuadratureError,
    density_from_config,
    differential_entropy,
    gaussian_density,
    gaussian_mixture_density,
    laplace_density,
    pushforward_entropy,
    sigmoid_entropy_shift,
    uniform_density,
)
from .info import (
    ConditionalFamily,
    DiscreteDist,
    JointDist,
    condition_on_axes,
    conditional_entropy,
    entropy,
    joint_entropy,
    marginalize,
    mutual_information,
    product_joint,
)
from .models import (
    DEFAULT_ENUM_BUDGET,
    BudgetExceededError,
    ComponentBank,
    CpModel,
    HtModel,
    all_assignments,
    bruteforce_joint,
    cp_forward,
    ensemble_seed,
    forward_batch,
    ht_forward,
    leaf_conditional_entropy_sum,
    node_conditional,
    node_prior,
    priors_tensor,
    random_cp_model,
    random_ht_model,
    random_model,
    site_component_prior,
)
from .scaling import (
    ConstantsEstimate,
    EnsembleReport,
    FusionRecord,
    MappingMatrix,
    MappingMeasurement,
    ScalingReport,
    apply_mapping,
    consistent_child_prior,
    ensemble_study,
    entropy_chain,
    estimate_constants,
    fusion_record,
    mapping_matrix,
    verify_cp_law,
    verify_ht_law,
    verify_law,
)
from .serialize import from_document, load, save, to_document
from .tensors import (
    CpFactors,
    HtFactors,
    cp_reconstruct,
    ht_reconstruct,
    outer_product,
    validate_simplex,
)

__version__ = "0.1.0"
