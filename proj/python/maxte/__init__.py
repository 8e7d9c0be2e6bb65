"""Linearised conductivity imaging from boundary wave data.

Complex plane-wave probes of a lossy dielectric disk, Fourier-mode recovery
from linearised boundary measurements, truncated-spectrum reconstruction and
explicit stability-bound evaluation. The heavy lifting lives in the compiled
extension; this package re-exports its surface.
"""

from ._core import (  # noqa: F401
    BoundBreakdown,
    CEPair3D,
    CEPairTE,
    ConfigError,
    ExperimentConfig,
    Phantom,
    PhantomKind,
    PhasePoint,
    StabilityParams,
    SweepResult,
    SweepRow,
    __version__,
    apply_override,
    bound_maxwell,
    bound_maxwell_ball,
    bound_te,
    ce_pair,
    ce_pair_3d,
    fit_slope,
    gauss_bump_ft,
    load_config,
    noise_sweep,
    parse_config,
    phantom,
    phantom_value,
    phase_point,
    reconstruct,
)

__all__ = [name for name in dir() if not name.startswith("_")] + [
    "__version__"
]
