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
from egnn.commands.internal.table import Table
from egnn.experiment import rank_stream


class Rank(egnn.Command):
    """
    Rank features by Spearman correlation with the labels

    A feature scores its absolute Spearman correlation with the class
    labels minus --lam times its mean absolute Spearman correlation
    with the other features. --lam 0 ranks by class correlation only.
    The per-band and per-hemisphere sums of the class correlations are
    printed after the ranking.

    EXAMPLES
        Write ranking.json and ranking.csv, show the 10 best:

            egnn rank features.csv -o ranking.json --csv ranking.csv

        Pure class correlation:

            egnn rank features.csv --lam 0
    """

    names = ["rank"]

    @classmethod
    def _init_parser(cls, name: str) -> argparse.ArgumentParser:
        parser = super()._init_parser(name)
        parser.add_argument("features", help="feature matrix CSV")
        parser.add_argument("--lam",
                            type=float,
                            default=1.0,
                            help="redundancy weight (default: 1)")
        parser.add_argument("-o",
                            "--output",
                            default="ranking.json",
                            metavar="FILE",
                            help="ranking JSON to write")
        parser.add_argument("--csv", metavar="FILE", help="also write CSV")
        parser.add_argument("--top",
                            type=int,
                            default=10,
                            metavar="N",
                            help="features to print (default: 10)")
        return parser

    def _call(self) -> int:
        fm = egnn.read_features(self.args.features)
        ranking = rank_stream(fm, self.args.lam)
        ranking.write_json(self.args.output)
        if self.args.csv:
            ranking.write_csv(self.args.csv)

        table = Table(["rank", "feature", "score", "association"],
                      {"rank", "score", "association"}, {
                          "score": fmt.float_nicenum,
                          "association": fmt.float_nicenum
                      })
        for rank, idx in enumerate(ranking.order[:self.args.top]):
            table.add_row(
                rank, {
                    "rank": rank + 1,
                    "feature": ranking.features[idx].name,
                    "score": ranking.scores[idx],
                    "association": ranking.association[idx],
                })
        table.print_()

        for title, sums in (("band", ranking.band_sums),
                            ("hemisphere", ranking.hemisphere_sums)):
            if not sums:
                continue
            print()
            totals = Table([title, "sum"], {"sum"}, {"sum": fmt.float_nicenum})
            for key, value in sums.items():
                totals.add_row(-value, {title: key, "sum": value})
            totals.print_()
        return 0
