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
import json
import os

import pandas as pd

import egnn
from egnn.dataset import read_table, write_table
from egnn.experiment import TRACE_COLUMNS

CURVES = {
    "accuracy_curve.csv": ["h", "acc"],
    "granules_curve.csv": ["h", "c", "c_avg", "rho"],
}


def read_traces(run_dir: str) -> pd.DataFrame:
    """
    The traces.csv of a run directory, every cell as text.
    """
    path = os.path.join(run_dir, "traces.csv")
    traces = read_table(path, "traces")
    if tuple(traces.columns) != TRACE_COLUMNS:
        raise egnn.DataError("unexpected header", path=path, row=1)
    short = traces.isna().any(axis=1).to_numpy()
    if short.any():
        raise egnn.DataError(f"expected {len(TRACE_COLUMNS)} fields",
                             path=path,
                             row=int(short.argmax()) + 2)
    return traces


def render_svg(traces: pd.DataFrame, path: str) -> None:
    """
    Plot accuracy and granule count against h into a static SVG.
    """
    #
    # matplotlib is an optional extra; import it only when asked to
    # render, with a non-interactive backend.
    #
    import matplotlib  # pylint: disable=import-outside-toplevel
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt  # pylint: disable=import-outside-toplevel

    h = [int(v) for v in traces["h"]]
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(8, 6))
    top.plot(h, [float(v) for v in traces["acc"]])
    top.set_ylabel("accuracy")
    top.set_ylim(0.0, 1.0)
    bottom.plot(h, [int(v) for v in traces["c"]], label="c")
    bottom.plot(h, [float(v) for v in traces["c_avg"]], label="c_avg")
    bottom.set_ylabel("granules")
    bottom.set_xlabel("h")
    bottom.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


class Report(egnn.Command):
    """
    Write plot-ready CSV files for a finished run

    Reads traces.csv and report.json of a run directory and writes
    next to them:

        accuracy_curve.csv   h,acc
        granules_curve.csv   h,c,c_avg,rho
        confusion.csv        true classes as rows, predicted as columns

    With --svg the two curves are also rendered into report.svg
    (requires matplotlib).

    EXAMPLES
        egnn report run1
        egnn report run1 --svg
    """

    names = ["report"]

    @classmethod
    def _init_parser(cls, name: str) -> argparse.ArgumentParser:
        parser = super()._init_parser(name)
        parser.add_argument("run_dir", help="output directory of 'egnn run'")
        parser.add_argument("--svg",
                            action="store_true",
                            help="also render report.svg")
        return parser

    def _call(self) -> int:
        run_dir = self.args.run_dir
        traces = read_traces(run_dir)
        for name, columns in CURVES.items():
            traces[columns].to_csv(os.path.join(run_dir, name), index=False)

        report_path = os.path.join(run_dir, "report.json")
        try:
            with open(report_path, encoding="utf-8") as f:
                confusion = json.load(f)["confusion"]
        except (OSError, KeyError, json.JSONDecodeError) as err:
            raise egnn.DataError(f"cannot read the confusion matrix: {err}",
                                 path=report_path) from err
        classes = [str(c) for c in confusion["classes"]]
        write_table(os.path.join(run_dir, "confusion.csv"),
                    ["true\\predicted"] + classes,
                    [[c] + list(counts)
                     for c, counts in zip(classes, confusion["counts"])])

        if self.args.svg:
            render_svg(traces, os.path.join(run_dir, "report.svg"))
        print(f"{len(traces)} trace rows -> {run_dir}")
        return 0
