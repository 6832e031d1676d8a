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
from egnn.commands.internal import fmt
from egnn.commands.internal.options import (add_experiment_arguments,
                                            experiment_config)
from egnn.experiment import run


class Run(egnn.Command):
    """
    Run the classifier test-then-train over a feature stream

    Every instance of the feature file is, in order, normalized,
    predicted, scored against its label and then learned. The
    output directory receives:

        report.json   accuracy, c_avg, interpretability, confusion
        traces.csv    h,true,predicted,correct,acc,c,c_avg,rho,ii
        timing.json   wall-clock milliseconds per instance
        model.json    checkpoint of the final model
        rules.json    one rule per granule (also rules.txt)

    report.json only depends on the data, the settings and the seed,
    so two runs with the same inputs produce identical files.

    With --manifest instead of a feature file, the recordings are
    cut into --window second windows and their features extracted
    first, as 'egnn extract' would.

    By default a misprediction only grows or creates granules of the
    true class. Separable or drifting streams, such as those of
    'egnn synth', need both --penalize-winner and --grow-seeds to
    reach 90% accuracy (85% across a drift).

    EXAMPLES
        Run with the default hyper-parameters:

            egnn run features.csv --seed 1 -o run1

        Use the 130 best-ranked features with rho0=0.7, hr=80:

            egnn run features.csv --seed 1 --ranking ranking.json \\
                --feature-count 130 --rho0 0.7 --hr 80

        Learn a synthetic stream with the error-driven updates on:

            egnn run boxes.csv --seed 1 --penalize-winner --grow-seeds

        Extract 30-second windows from a manifest and run on them:

            egnn run --manifest recordings/manifest.json --window 30 \\
                --seed 1
    """

    names = ["run"]

    @classmethod
    def _init_parser(cls, name: str) -> argparse.ArgumentParser:
        parser = super()._init_parser(name)
        parser.add_argument("features",
                            nargs="*",
                            default=None,
                            help="feature matrix CSV (or use --manifest)")
        parser.add_argument("--feature-count",
                            dest="feature_count",
                            type=int,
                            metavar="N",
                            help="only use the N best-ranked features")
        add_experiment_arguments(parser)
        return parser

    def _call(self) -> int:
        config = experiment_config(self.args)
        report, model = run(config)
        print(f"instances  {report.instances}")
        print(f"accuracy   {fmt.percent(report.accuracy)}")
        print(f"c_avg      {fmt.float_nicenum(report.c_avg, 2)}")
        print(f"granules   {len(model)}")
        print(f"rho        {fmt.float_nicenum(report.final_rho)}")
        print(f"ii         {fmt.float_nicenum(report.final_ii, 6)}")
        print(f"latency    {fmt.float_nicenum(report.timing()['mean_ms'], 3)}"
              f" ms/instance")
        print(f"output     {config.output_dir}")
        return 0
