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

import egnn
from egnn.dataset import (extract_manifest, label_name, load_manifest,
                          write_features)
from egnn.features import CHANNELS, WindowSpec


class Extract(egnn.Command):
    """
    Turn raw recordings into a feature matrix CSV

    Every recording listed in the manifest is cut into back-to-back
    windows of --window seconds (a trailing partial window is
    dropped). Each window yields the max and mean amplitude of the
    delta, theta, alpha, beta and gamma bands of every channel, i.e.
    10 features per channel, in channel-major order. Rows inherit the
    label of their recording and follow the manifest order. The
    summary counts the instances of each class (bored, calm, anger
    and happy for G1..G4 unless the manifest says otherwise).

    EXAMPLES
        10-second windows over the full 14-channel headset:

            egnn extract manifest.json -w 10 -o features.csv

        Two channels only (20 features per row):

            egnn extract manifest.json -w 10 --channels AF3 AF4
    """

    names = ["extract"]

    @classmethod
    def _init_parser(cls, name: str) -> argparse.ArgumentParser:
        parser = super()._init_parser(name)
        parser.add_argument("manifest", help="recording manifest (JSON)")
        parser.add_argument("-w",
                            "--window",
                            type=float,
                            default=10.0,
                            metavar="SECONDS",
                            help="window length (default: 10)")
        parser.add_argument("-o",
                            "--output",
                            default="features.csv",
                            metavar="FILE",
                            help="feature CSV to write")
        parser.add_argument("--channels",
                            nargs="+",
                            default=list(CHANNELS),
                            metavar="CH",
                            help="channels to extract (default: all 14)")
        return parser

    def _call(self) -> int:
        entries = load_manifest(self.args.manifest)
        fm = extract_manifest(entries, WindowSpec(self.args.window),
                              self.args.channels)
        write_features(self.args.output, fm)
        print(f"{len(fm)} instances x {len(fm.names)} features from "
              f"{len(entries)} recordings -> {self.args.output}")
        print("classes: " + ", ".join(f"{label_name(label)} {count}"
                                      for label, count in
                                      fm.class_counts().items()))
        return 0
