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

import os

import numpy as np
import pytest

import egnn
from tests.unit import invoke, make_features, read_rows

NAMES = ["AF3_alpha_max", "AF3_alpha_mean", "F8_gamma_max"]


def features(tmp_path: str) -> str:
    f0 = [2, 1, 3, 4, 6, 5]
    X = np.column_stack((f0, f0, [1, 3, 2, 4, 6, 5])).astype(float)
    return make_features(tmp_path, X, [1, 2, 3, 4, 5, 6], NAMES)


def test_rank(tmp_path: str, capsys: pytest.CaptureFixture) -> None:
    out = os.path.join(tmp_path, "ranking.json")
    table = os.path.join(tmp_path, "ranking.csv")

    ret = invoke(["rank", features(tmp_path), "-o", out, "--csv", table])

    assert ret == 0
    ranking = egnn.FeatureRanking.read_json(out)
    assert ranking.order == [2, 0, 1]
    assert [row[1] for row in read_rows(table)] == [
        "feature", "F8_gamma_max", "AF3_alpha_max", "AF3_alpha_mean"
    ]
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["rank", "feature", "score", "association"]
    assert lines[2].split()[:2] == ["1", "F8_gamma_max"]
    assert lines[-4].split() == ["hemisphere", "sum"]
    assert lines[-2].split()[0] == "left"
    assert lines[-1].split()[0] == "right"


def test_rank_top_and_lam(tmp_path: str, capsys: pytest.CaptureFixture) -> None:
    out = os.path.join(tmp_path, "ranking.json")

    invoke(["rank", features(tmp_path), "-o", out, "--top", "1", "--lam", "0"])

    lines = capsys.readouterr().out.splitlines()
    assert len([l for l in lines if "_" in l]) == 1
    assert egnn.FeatureRanking.read_json(out).lam == 0.0


def test_rank_missing_file(tmp_path: str) -> None:
    with pytest.raises(egnn.DataError):
        invoke(["rank", os.path.join(tmp_path, "missing.csv")])
