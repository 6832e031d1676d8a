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
from tests.unit import invoke, make_manifest, sine


def manifest(tmp_path: str) -> str:
    data = np.column_stack((sine(10.0, seconds=25.0), sine(20.0,
                                                           seconds=25.0)))
    return make_manifest(tmp_path, [("S01", "G1", data),
                                    ("S02", "G3", data)])


def test_extract(tmp_path: str, capsys: pytest.CaptureFixture) -> None:
    out = os.path.join(tmp_path, "features.csv")
    line = ["extract", manifest(tmp_path), "-w", "10", "-o", out]

    ret = invoke(line + ["--channels", "AF3", "AF4"])

    assert ret == 0
    assert capsys.readouterr().out == (
        f"4 instances x 20 features from 2 recordings -> {out}\n"
        "classes: bored 2, anger 2\n")
    fm = egnn.read_features(out)
    assert fm.names[0] == "AF3_delta_max"
    assert fm.y.tolist() == [1, 1, 3, 3]
    assert fm.subjects == ["S01", "S01", "S02", "S02"]


def test_extract_one_channel(tmp_path: str) -> None:
    out = os.path.join(tmp_path, "features.csv")

    invoke(["extract", manifest(tmp_path), "-o", out, "--channels", "af4"])

    assert egnn.read_features(out).channels == ["AF4"]


def test_extract_missing_channel(tmp_path: str) -> None:
    out = os.path.join(tmp_path, "features.csv")

    with pytest.raises(egnn.DataError) as err:
        invoke(["extract", manifest(tmp_path), "-o", out])

    assert "missing channels" in err.value.text
    assert not os.path.exists(out)


def test_extract_window_too_long(tmp_path: str) -> None:
    with pytest.raises(egnn.WindowError):
        invoke([
            "extract",
            manifest(tmp_path), "-w", "30", "-o",
            os.path.join(tmp_path, "f.csv"), "--channels", "AF3"
        ])


def test_extract_bad_arguments() -> None:
    with pytest.raises(egnn.CommandArgumentsError):
        invoke(["extract", "manifest.json", "-w", "ten"])
