"""Spectrum sharing between a colocated MIMO radar and cellular base stations.

The radar projects its waveform onto the null space of a selected
interference channel so base stations see (ideally) zero radar energy, and
this package quantifies what that projection costs the radar's own
maximum-likelihood estimates of target angle, delay and Doppler.
"""

from .channels import (ChannelSet, InterferenceChannel, channel_set_from_doc,
                       channel_set_to_doc, perturb_csi, sample_channel_set)
from .config import (ConfigError, ScenarioConfig, bundled_config_names, from_dict,
                     load_bundled_config, load_config)
from .echo import ReceivedEcho, TargetScene, add_noise, path_loss_alpha, synthesize_echo
from .estimator import (DegenerateDenominatorError, EstimationGrid, EstimationResult,
                        cross_ambiguity, default_grid, estimate_angle, estimate_delay,
                        estimate_doppler, ml_objective)
from .geometry import (ArrayConfig, rx_steering, rx_steering_bank, steering_matrix,
                       tx_steering, tx_steering_bank)
from .harness import (RunReport, build_waveform, derive_seed, dump_waveform,
                      emit_reports, run_scenario)
from .projection import (DEFAULT_RANK_TOL, Projector, channel_svd, project_waveform,
                         projection_matrix, sigma_prime)
from .selection import (NoUsableNullSpaceError, SelectionResult, projection_loss,
                        select_channels)
from .waveform import (WaveformMatrix, correlation_matrix, delay_shift,
                       generate_orthogonal, generate_random)

__version__ = "0.1.0"

__all__ = [
    "ArrayConfig", "ChannelSet", "ConfigError", "DEFAULT_RANK_TOL",
    "DegenerateDenominatorError", "EstimationGrid", "EstimationResult",
    "InterferenceChannel", "NoUsableNullSpaceError", "Projector", "ReceivedEcho",
    "RunReport", "ScenarioConfig", "SelectionResult", "TargetScene", "WaveformMatrix",
    "add_noise", "build_waveform", "bundled_config_names", "channel_set_from_doc",
    "channel_set_to_doc", "channel_svd", "correlation_matrix", "cross_ambiguity",
    "default_grid", "delay_shift", "derive_seed", "dump_waveform", "emit_reports",
    "estimate_angle", "estimate_delay", "estimate_doppler", "from_dict",
    "generate_orthogonal", "generate_random", "load_bundled_config", "load_config",
    "ml_objective", "path_loss_alpha", "perturb_csi", "project_waveform",
    "projection_loss", "projection_matrix", "run_scenario", "rx_steering",
    "rx_steering_bank", "sample_channel_set", "select_channels", "sigma_prime",
    "steering_matrix", "synthesize_echo", "tx_steering", "tx_steering_bank",
]
