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

# pylint: disable=missing-docstring

import argparse

import numpy as np

import egnn
from egnn.dataset import FeatureMatrix, write_features
from egnn.synth import BoxStream, synth_recordings


class Synth(egnn.Command):
    """
    Generate synthetic data to exercise the pipeline

    By default, writes a feature CSV of -n instances drawn from four
    disjoint class boxes in the unit square. --noise flips that
    fraction of labels to another class and --drift-at moves every
    box by --shift along the first axis from that instance on.

    With --eeg DIR, writes instead one 14-channel recording per
    subject and game into DIR, each game carrying its own dominant
    rhythm, plus the manifest.json to feed 'egnn extract'.

    EXAMPLES
        A 20000-instance stream with an abrupt drift half way:

            egnn synth -n 20000 --drift-at 10000 --seed 3 -o boxes.csv

        Two subjects' worth of recordings:

            egnn synth --eeg recordings --subjects 2 --seed 3
    """

    names = ["synth"]

    @classmethod
    def _init_parser(cls, name: str) -> argparse.ArgumentParser:
        parser = super()._init_parser(name)
        parser.add_argument("-n",
                            "--instances",
                            type=int,
                            default=10000,
                            help="stream length (default: 10000)")
        parser.add_argument("--noise",
                            type=float,
                            default=0.0,
                            help="fraction of flipped labels")
        parser.add_argument("--drift-at",
                            dest="drift_at",
                            type=int,
                            metavar="H",
                            help="first instance after the drift")
        parser.add_argument("--shift",
                            type=float,
                            default=0.3,
                            help="drift displacement (default: 0.3)")
        parser.add_argument("--seed", type=int, help="random seed")
        parser.add_argument("-o",
                            "--output",
                            default="synth.csv",
                            metavar="FILE",
                            help="feature CSV to write")
        parser.add_argument("--eeg",
                            metavar="DIR",
                            help="write recordings and a manifest instead")
        parser.add_argument("--subjects",
                            type=int,
                            default=2,
                            help="subjects with --eeg (default: 2)")
        parser.add_argument("--duration",
                            type=float,
                            default=60.0,
                            metavar="SECONDS",
                            help="recording length with --eeg (default: 60)")
        return parser

    def _call(self) -> int:
        if self.args.eeg is not None:
            path = synth_recordings(self.args.eeg,
                                    subjects=self.args.subjects,
                                    duration=self.args.duration,
                                    random_state=self.args.seed)
            print(f"manifest -> {path}")
            return 0

        if self.args.instances < 1:
            raise egnn.ConfigError("--instances must be at least 1")
        stream = BoxStream(noise_percentage=self.args.noise,
                           drift_position=self.args.drift_at,
                           shift=self.args.shift,
                           random_state=self.args.seed)
        X, y = stream.next_sample(self.args.instances)
        n = len(X)
        fm = FeatureMatrix(names=[f"x{j}" for j in range(stream.n_features)],
                           X=X,
                           y=y.astype(np.int64),
                           subjects=["synth"] * n,
                           games=["-"] * n,
                           windows=list(range(n)))
        write_features(self.args.output, fm)
        print(f"{n} instances x {stream.n_features} features -> "
              f"{self.args.output}")
        return 0
