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
import os
from typing import List

import egnn
from egnn.commands.internal import fmt
from egnn.commands.internal.options import (add_experiment_arguments,
                                            experiment_config)
from egnn.commands.internal.table import Table
from egnn.experiment import (SweepRow, channel_sweep, load_stream,
                             rank_stream, stream_sources, sweep, write_sweep)
from egnn.selection import FeatureRanking


class Sweep(egnn.Command):
    """
    Run the classifier over feature subsets or single channels

    By default the sweep drops the k lowest-ranked features at a
    time, from all features down to --min-features, and runs every
    subset with every --pair of (rho0, hr). Without --ranking the
    features are ranked on the fly with --lam.

    --channels restricts every feature file to the features of the
    given channels before ranking; a --ranking file must then rank
    exactly those features. With --manifest the stream is extracted
    from the recordings first, in --window second windows.

    With --per-channel, every feature file (one per window length,
    typically) is instead split by channel and one model is run per
    file, channel and pair.

    As with 'egnn run', separable or drifting streams need
    --penalize-winner and --grow-seeds for the error-driven updates
    that keep accuracy above 85-90%.

    Results go to sweep.csv in the output directory, one row per
    run: source,channel,rho0,hr,features,accuracy,c_avg,ii,mean_ii.

    EXAMPLES
        Leave-5-out sweep from 140 down to 10 features:

            egnn sweep features.csv --seed 1 --ranking ranking.json

        Per-channel table over four window lengths:

            egnn sweep w300.csv w60.csv w30.csv w10.csv --seed 1 \\
                --per-channel --jobs 4
    """

    names = ["sweep"]

    @classmethod
    def _init_parser(cls, name: str) -> argparse.ArgumentParser:
        parser = super()._init_parser(name)
        parser.add_argument("features",
                            nargs="*",
                            default=None,
                            help="feature matrix CSV file(s)")
        parser.add_argument("-k",
                            type=int,
                            help="features dropped per step (default: 5)")
        parser.add_argument("--min-features",
                            dest="min_features",
                            type=int,
                            metavar="N",
                            help="smallest subset size (default: 10)")
        parser.add_argument("--pair",
                            dest="pairs",
                            nargs=2,
                            action="append",
                            metavar=("RHO0", "HR"),
                            help="hyper-parameter pair, may be repeated "
                            "(default: 0.6 100 and 0.7 80)")
        parser.add_argument("--per-channel",
                            dest="per_channel",
                            action="store_true",
                            default=None,
                            help="one model per channel and feature file")
        parser.add_argument("--lam",
                            type=float,
                            help="redundancy weight when ranking on the fly")
        parser.add_argument("-j",
                            "--jobs",
                            type=int,
                            help="number of worker processes")
        add_experiment_arguments(parser)
        return parser

    def _call(self) -> int:
        config = experiment_config(self.args)
        config.validate()
        if config.feature_count is not None:
            raise egnn.ConfigError("feature_count does not apply to sweeps; "
                                   "the subsets come from the ranking")

        rows: List[SweepRow] = []
        sources = [(name, load_stream(config, path))
                   for name, path in stream_sources(config)]
        if config.per_channel:
            rows = channel_sweep(config, sources)
        else:
            for name, fm in sources:
                if config.ranking is not None:
                    ranking = FeatureRanking.read_json(config.ranking)
                else:
                    ranking = rank_stream(fm, config.lam)
                rows.extend(sweep(config, fm, ranking, name))

        os.makedirs(config.output_dir, exist_ok=True)
        write_sweep(os.path.join(config.output_dir, "sweep.csv"), rows)

        table = Table(
            ["source", "channel", "rho0", "hr", "features", "acc", "c_avg",
             "ii"], {"rho0", "hr", "features", "acc", "c_avg", "ii"}, {
                 "acc": fmt.percent,
                 "c_avg": lambda v: fmt.float_nicenum(v, 2),
                 "ii": lambda v: fmt.float_nicenum(v, 6),
             })
        for i, row in enumerate(rows):
            table.add_row(
                i, {
                    "source": row.source,
                    "channel": row.channel or "-",
                    "rho0": row.rho0,
                    "hr": row.hr,
                    "features": row.features,
                    "acc": row.accuracy,
                    "c_avg": row.c_avg,
                    "ii": row.ii,
                })
        table.print_()
        return 0
