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
Command-line flags shared by the verbs that run experiments. Every
flag defaults to None so that only the flags actually given override
the values of a --config file.
"""

import argparse
import dataclasses
from typing import Any, Dict

from egnn.experiment import ExperimentConfig


def add_experiment_arguments(parser: argparse.ArgumentParser) -> None:
    # pylint: disable=missing-docstring
    parser.add_argument("--config",
                        metavar="FILE",
                        help="JSON file with experiment settings; "
                        "flags given on the command line take precedence")
    parser.add_argument("--seed",
                        type=int,
                        help="seed of the first-instance estimate (required)")
    parser.add_argument("-o",
                        "--output-dir",
                        dest="output_dir",
                        metavar="DIR",
                        help="where to write results (default: egnn-out)")
    parser.add_argument("--ranking",
                        metavar="FILE",
                        help="feature ranking written by 'egnn rank'")

    model = parser.add_argument_group("model")
    model.add_argument("--rho0", type=float, help="initial granularity")
    model.add_argument("--hr",
                       type=int,
                       help="deletion and granularity horizon, in steps")
    model.add_argument("--eta",
                       type=float,
                       help="reference granule creation rate")
    model.add_argument("--theta",
                       type=float,
                       help="parameters per granule for the "
                       "interpretability index (default: 5n+1)")
    model.add_argument("--classes",
                       type=int,
                       nargs="+",
                       metavar="C",
                       help="class universe for the first random estimate")
    model.add_argument("--penalize-winner",
                       dest="penalize_winner",
                       action="store_true",
                       default=None,
                       help="lower the weights of a mispredicting winner; "
                       "together with --grow-seeds this is what separable "
                       "and drifting streams need to stay above 85-90%% "
                       "accuracy")
    model.add_argument("--grow-seeds",
                       dest="grow_seeds",
                       action="store_true",
                       default=None,
                       help="grow the nearest degenerate granule of the "
                       "true class after a misprediction (see "
                       "--penalize-winner)")
    model.add_argument("--no-normalize",
                       dest="normalize",
                       action="store_false",
                       default=None,
                       help="features already lie in the unit cube")

    data = parser.add_argument_group("data")
    data.add_argument("--manifest",
                      metavar="FILE",
                      help="extract the stream from the recordings of a "
                      "manifest instead of reading feature files")
    data.add_argument("--window",
                      dest="window_seconds",
                      type=float,
                      metavar="SECONDS",
                      help="window length for --manifest (default: 10)")
    data.add_argument("--channels",
                      nargs="+",
                      metavar="CH",
                      help="only use the features of these channels")


def experiment_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Collect the ExperimentConfig fields present on `args`.
    """
    fields = {f.name for f in dataclasses.fields(ExperimentConfig)}
    return {k: v for k, v in vars(args).items() if k in fields}


def experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    # pylint: disable=missing-docstring
    return ExperimentConfig.build(args.config, experiment_overrides(args))
