from .building_service import secondary_candidates, tropical_hull
from .classification_service import ComponentClassifier
from .checks_service import count_bounds, general_position_experiment, structural_checks
from .decomposition_service import certify_prime, minimal_primes
from .degeneration_service import build_degeneration, generic_fiber_check
from .pipeline_service import RunPipeline, run

__all__ = [
    "secondary_candidates",
    "tropical_hull",
    "ComponentClassifier",
    "count_bounds",
    "general_position_experiment",
    "structural_checks",
    "certify_prime",
    "minimal_primes",
    "build_degeneration",
    "generic_fiber_check",
    "RunPipeline",
    "run",
]
