#
# Copyright 2026 The egnn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""
Main egnn package module.

This is the high-level module of all the functionality exposed by
egnn: the evolving granular classifier, its metrics, the EEG feature
pipeline and the building blocks of the egnn executable. The API
exposed in this module can be used to drive experiments from Python
or to implement new verbs.
"""

#
# We are being very explicit of what this module exposes
# so as to avoid any future cyclic-dependencies in how
# the modules are imported.
#
from egnn.error import (Error, CommandArgumentsError, CommandError,
                        CommandNotFoundError, ConfigError, DataError,
                        EmptyBandError, EmptyModelError, InstanceError,
                        WindowError)
from egnn.granule import Granule, check_instance, new_pointwise, similarity
from egnn.network import (GranularNetwork, HyperParams, Prediction, Rule,
                          aggregate, compute_error, extract_rules,
                          format_rules, softmax, update_weights)
from egnn.metrics import (ConfusionMatrix, InterpretabilityReport,
                          StreamMetrics, interpretability, update_accuracy,
                          update_compactness, update_confusion, volume)
from egnn.features import (Band, FeatureInfo, Normalizer, Recording,
                           WindowSpec, band_features, extract_recording,
                           extract_window_features, magnitude_spectrum,
                           normalize, segment)
from egnn.selection import (FeatureRanking, leave_k_out_schedule,
                            score_features, spearman)
from egnn.dataset import (FeatureMatrix, extract_manifest, load_manifest,
                          load_recording, read_features, write_features)
from egnn.synth import BoxStream, synth_recordings
from egnn.experiment import (ExperimentConfig, RunReport, SweepRow,
                             channel_sweep, run, run_prequential, sweep)
from egnn.command import (Command, get_registered_commands, invoke,
                          register_commands)

__all__ = [
    'Band',
    'BoxStream',
    'Command',
    'CommandArgumentsError',
    'CommandError',
    'CommandNotFoundError',
    'ConfigError',
    'ConfusionMatrix',
    'DataError',
    'EmptyBandError',
    'EmptyModelError',
    'Error',
    'ExperimentConfig',
    'FeatureInfo',
    'FeatureMatrix',
    'FeatureRanking',
    'Granule',
    'GranularNetwork',
    'HyperParams',
    'InstanceError',
    'InterpretabilityReport',
    'Normalizer',
    'Prediction',
    'Recording',
    'Rule',
    'RunReport',
    'StreamMetrics',
    'SweepRow',
    'WindowError',
    'WindowSpec',
    'aggregate',
    'band_features',
    'channel_sweep',
    'check_instance',
    'compute_error',
    'extract_manifest',
    'extract_recording',
    'extract_rules',
    'extract_window_features',
    'format_rules',
    'get_registered_commands',
    'interpretability',
    'invoke',
    'leave_k_out_schedule',
    'load_manifest',
    'load_recording',
    'magnitude_spectrum',
    'new_pointwise',
    'normalize',
    'read_features',
    'register_commands',
    'run',
    'run_prequential',
    'score_features',
    'segment',
    'similarity',
    'softmax',
    'spearman',
    'sweep',
    'synth_recordings',
    'update_accuracy',
    'update_compactness',
    'update_confusion',
    'update_weights',
    'volume',
    'write_features',
]

#
# The egnn verbs build on top of everything imported above, so we
# must be sure to import all of the commands last.
#
import egnn.commands
