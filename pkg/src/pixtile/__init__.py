"""pixtile: tile self-assembly toolkit for pixel patterns.

Generates tile systems for cyclic pixel patterns and arbitrary raster
images, simulates their cooperative self-assembly, and verifies the grown
assemblies against closed-form expectations and the source images.
"""

from .engine import (
    NondeterminismError,
    SimConfig,
    SimResult,
    available_backends,
    check_directed,
    default_backend,
    eligible_tiles,
    event_log_text,
    frontier_sites,
    run,
)
from .generators import (
    GeneratorLayout,
    ShiftSpec,
    expected_tile_count,
    gen_nonuniform,
    gen_transform,
    gen_uniform,
    nonuniform_oracle,
    uniform_oracle,
    wrap1,
)
from .model import (
    Assembly,
    Site,
    SystemValidationError,
    TileSystem,
    TileType,
    attach_strength,
    validate_system,
)

__version__ = "0.1.0"
