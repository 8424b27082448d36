"""Equivariant rank-2 bundles on smooth complete toric surfaces.

Filtration data, Euler-type monomial resolutions, local freeness, biduals
and skyscraper cokernels, and GIT stability of the attached point
configurations on the projective line.
"""

from .exactlin import Mat, ProjectiveLinePoint, kernel_basis, rank
from .fan import Fan, blow_up, make_hirzebruch, make_projective_plane, validate
from .bundle import BundleData, Partition, coarse_partition, split_summands
from .resolution import MonomialResolution, build_resolution, check_local_freeness
from .sheaf import SheafPresentation, bidual, skyscraper_support
from .stability import config_stability, grass_stability, p_equivalent, p_stability

__all__ = [
    "Mat", "ProjectiveLinePoint", "kernel_basis", "rank",
    "Fan", "blow_up", "make_hirzebruch", "make_projective_plane", "validate",
    "BundleData", "Partition", "coarse_partition", "split_summands",
    "MonomialResolution", "build_resolution", "check_local_freeness",
    "SheafPresentation", "bidual", "skyscraper_support",
    "config_stability", "grass_stability", "p_equivalent", "p_stability",
]

__version__ = "0.1.0"
