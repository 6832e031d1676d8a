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

import dataclasses
import json
import os
from typing import Any, Dict, List

import numpy as np
import pytest

import egnn
from egnn.experiment import (SWEEP_COLUMNS, TRACE_COLUMNS, ExperimentConfig,
                             SweepRow, channel_sweep, load_stream, rank_stream,
                             read_stream, run, run_prequential, stream_sources,
                             sweep, write_sweep)
from egnn.network import GranularNetwork, HyperParams
from tests.unit import (box_stream, make_features, make_manifest, read_rows,
                        sine)

PARAMS = HyperParams(rho0=0.6, hr=20, eta=2.0)


def write_json(path: str, doc: Any) -> str:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f)
    return path


def test_build_precedence(tmp_path: str) -> None:
    path = write_json(os.path.join(tmp_path, "c.json"), {
        "rho0": 0.7,
        "hr": 50,
        "features": "a.csv",
        "pairs": [[0.5, "20"]]
    })

    config = ExperimentConfig.build(path, {
        "hr": 80,
        "rho0": None,
        "features": [],
        "seed": 3
    })

    assert config.rho0 == 0.7
    assert config.hr == 80
    assert config.seed == 3
    assert config.features == ["a.csv"]
    assert config.pairs == [(0.5, 20)]
    assert config.eta == 2.0


def test_build_defaults() -> None:
    config = ExperimentConfig.build()

    assert config == ExperimentConfig()
    assert config.to_dict()["output_dir"] == "egnn-out"


#
# (config file contents, expected message fragment)
#
BAD_CONFIG_FILES = [
    ('{"rho": 0.5}', "unknown keys rho"),
    ('[1, 2]', "expected a JSON object"),
    ('{"rho0": ', "line 1"),
    ('{"rho0": "x"}', "rho0: expected float, got 'x'"),
    ('{"hr": 1.5}', "hr: expected int"),
    ('{"seed": true}', "seed: expected Optional[int]"),
    ('{"channels": "AF3"}', "channels: expected"),
    ('{"pairs": [["a", 1]]}', "pairs: expected [rho0, hr] pairs"),
    ('{"pairs": [[0.6, 100, 1]]}', "pairs: expected"),
]


@pytest.mark.parametrize('contents,message',
                         BAD_CONFIG_FILES)  # type: ignore[misc]
def test_build_rejects(tmp_path: str, contents: str, message: str) -> None:
    path = os.path.join(tmp_path, "c.json")
    with open(path, "w", encoding="utf-8") as f:
        f.write(contents)

    with pytest.raises(egnn.ConfigError) as err:
        ExperimentConfig.build(path)

    assert message in err.value.text


def test_build_missing_file(tmp_path: str) -> None:
    with pytest.raises(egnn.ConfigError):
        ExperimentConfig.build(os.path.join(tmp_path, "missing.json"))


def test_params() -> None:
    config = ExperimentConfig(rho0=0.4, hr=30, eta=1.0, grow_seeds=True)

    assert config.params() == HyperParams(rho0=0.4,
                                          hr=30,
                                          eta=1.0,
                                          grow_seeds=True)
    assert config.params(0.7, 80).rho0 == 0.7
    assert config.params(0.7, 80).hr == 80


#
# ExperimentConfig fields that validate() must refuse, given a valid
# feature file and seed
#
BAD_CONFIGS: List[Dict[str, Any]] = [
    {
        "seed": None
    },
    {
        "features": []
    },
    {
        "features": ["missing.csv"]
    },
    {
        "ranking": "missing.json"
    },
    {
        "window_seconds": 0.0
    },
    {
        "feature_count": 0
    },
    {
        "k": 0
    },
    {
        "jobs": 0
    },
    {
        "rho0": 1.5
    },
    {
        "hr": 0
    },
    {
        "features": [],
        "manifest": "missing.json"
    },
]


@pytest.mark.parametrize('fields', BAD_CONFIGS)  # type: ignore[misc]
def test_validate_rejects(tmp_path: str, fields: Dict[str, Any]) -> None:
    path = make_features(tmp_path, np.zeros((2, 2)), [1, 2])
    values: Dict[str, Any] = {"features": [path], "seed": 1}
    values.update(fields)
    config = ExperimentConfig(**values)

    with pytest.raises(egnn.ConfigError):
        config.validate()


def test_validate_without_seed(tmp_path: str) -> None:
    path = make_features(tmp_path, np.zeros((2, 2)), [1, 2])

    ExperimentConfig(features=[path]).validate(require_seed=False)


def test_stream_sources() -> None:
    features = ExperimentConfig(features=["a/w10.csv", "w30.csv"],
                                manifest="m.json")
    manifest = ExperimentConfig(manifest="data/manifest.json")

    assert stream_sources(features) == [("w10", "a/w10.csv"),
                                        ("w30", "w30.csv")]
    assert stream_sources(manifest) == [("manifest", "data/manifest.json")]
    assert not stream_sources(ExperimentConfig())


def test_read_stream_from_manifest(tmp_path: str) -> None:
    data = np.column_stack((sine(10.0, seconds=25.0), sine(2.0,
                                                           seconds=25.0)))
    manifest = make_manifest(tmp_path, [("S01", "G1", data),
                                        ("S01", "G4", 2.0 * data)])
    config = ExperimentConfig(manifest=manifest,
                              window_seconds=5.0,
                              channels=["AF3", "AF4"],
                              seed=1)

    config.validate()
    fm = read_stream(config)
    af4 = load_stream(dataclasses.replace(config, channels=["AF4"]))

    assert len(fm) == 10
    assert len(fm.names) == 20
    assert fm.y.tolist() == [1] * 5 + [4] * 5
    assert fm.channels == ["AF3", "AF4"]
    assert af4.channels == ["AF4"]
    assert len(af4.names) == 10


def test_run_prequential() -> None:
    X, y = box_stream(300, noise=0.05)

    report, model = run_prequential(X, y, PARAMS, seed=1, normalize=False)

    assert report.instances == 300
    assert len(report.traces) == 300
    assert len(report.latency) == 300
    assert report.confusion.total == 300
    assert report.granules == len(model)
    assert report.final_rho == model.rho
    assert all(len(row) == len(TRACE_COLUMNS) for row in report.traces)
    correct = [row[3] for row in report.traces]
    assert report.accuracy == pytest.approx(np.mean(correct), abs=1e-12)
    assert report.traces[-1][4] == report.accuracy
    assert report.c_avg == pytest.approx(
        np.mean([row[5] for row in report.traces]), abs=1e-9)
    assert report.final_ii is not None and 0.0 < report.final_ii <= 1.0
    assert report.mean_ii is not None


def test_run_prequential_is_deterministic() -> None:
    X, y = box_stream(200, noise=0.05)

    first, _ = run_prequential(X, y, PARAMS, seed=4, normalize=False)
    second, _ = run_prequential(X, y, PARAMS, seed=4, normalize=False)

    assert first.to_dict() == second.to_dict()
    assert first.traces == second.traces


def test_run_prequential_normalizes() -> None:
    X, y = box_stream(100)

    report, _ = run_prequential(X * 40.0 - 7.0, y, PARAMS, seed=1)

    assert report.instances == 100


def test_run_prequential_rejects_label_count() -> None:
    with pytest.raises(egnn.ConfigError):
        run_prequential(np.zeros((3, 2)), [1, 2], PARAMS, seed=1)


def test_report_files(tmp_path: str) -> None:
    X, y = box_stream(150)
    names = ["x1", "x2"]
    report, model = run_prequential(X,
                                    y,
                                    PARAMS,
                                    seed=2,
                                    normalize=False,
                                    feature_names=names)
    again, model_again = run_prequential(X,
                                         y,
                                         PARAMS,
                                         seed=2,
                                         normalize=False,
                                         feature_names=names)
    first = os.path.join(tmp_path, "first")
    second = os.path.join(tmp_path, "second")

    report.write(first, model)
    again.write(second, model_again)

    assert sorted(os.listdir(first)) == [
        "model.json", "report.json", "rules.json", "rules.txt", "timing.json",
        "traces.csv"
    ]
    for name in ("report.json", "traces.csv", "model.json", "rules.txt"):
        with open(os.path.join(first, name), "rb") as a, \
                open(os.path.join(second, name), "rb") as b:
            assert a.read() == b.read()
    with open(os.path.join(first, "timing.json"), encoding="utf-8") as f:
        timing = json.load(f)
    assert len(timing["per_instance_ms"]) == 150
    assert timing["max_ms"] >= timing["mean_ms"] > 0.0
    loaded = GranularNetwork.load(os.path.join(first, "model.json"))
    assert len(loaded) == len(model)
    rows = read_rows(os.path.join(first, "traces.csv"))
    assert tuple(rows[0]) == TRACE_COLUMNS
    assert len(rows) == 151


def test_report_without_model(tmp_path: str) -> None:
    report, _ = run_prequential(*box_stream(10), PARAMS, seed=2)

    report.write(str(tmp_path))

    assert sorted(os.listdir(tmp_path)) == [
        "report.json", "timing.json", "traces.csv"
    ]


def channel_stream(tmp_path: str, count: int = 120) -> str:
    X, y = box_stream(count)
    rng = np.random.default_rng(0)
    columns = [X[:, 0], X[:, 1], rng.random(count), rng.random(count)]
    names = ["AF3_alpha_max", "AF4_alpha_max", "AF3_beta_max", "O2_beta_max"]
    return make_features(tmp_path, np.column_stack(columns), y, names)


def test_run(tmp_path: str) -> None:
    path = channel_stream(tmp_path)
    out = os.path.join(tmp_path, "out")
    config = ExperimentConfig(features=[path], seed=1, hr=20, output_dir=out)

    report, model = run(config)

    assert report.features == [
        "AF3_alpha_max", "AF4_alpha_max", "AF3_beta_max", "O2_beta_max"
    ]
    assert os.path.isfile(os.path.join(out, "model.json"))
    assert model.n_features == 4
    with open(os.path.join(out, "rules.txt"), encoding="utf-8") as f:
        assert "AF3_alpha_max" in f.read()


def test_load_stream_selects(tmp_path: str) -> None:
    path = channel_stream(tmp_path)
    fm = egnn.read_features(path)
    ranking_path = os.path.join(tmp_path, "ranking.json")
    rank_stream(fm).write_json(ranking_path)
    ranking = egnn.FeatureRanking.read_json(ranking_path)

    top = load_stream(
        ExperimentConfig(features=[path],
                         ranking=ranking_path,
                         feature_count=2))
    channel = load_stream(ExperimentConfig(features=[path], channels=["af3"]))

    assert top.names == [fm.names[i] for i in ranking.top(2)]
    assert channel.names == ["AF3_alpha_max", "AF3_beta_max"]


def test_load_stream_rejects(tmp_path: str) -> None:
    path = channel_stream(tmp_path)
    ranking_path = os.path.join(tmp_path, "ranking.json")
    rank_stream(egnn.read_features(path)).write_json(ranking_path)
    other = make_features(tmp_path, np.zeros((2, 3)), [1, 2],
                          filename="other.csv")

    with pytest.raises(egnn.ConfigError):
        load_stream(ExperimentConfig(features=[path], feature_count=2))
    with pytest.raises(egnn.ConfigError):
        load_stream(
            ExperimentConfig(features=[path],
                             ranking=ranking_path,
                             feature_count=5))
    with pytest.raises(egnn.ConfigError):
        load_stream(
            ExperimentConfig(features=[other],
                             ranking=ranking_path,
                             feature_count=2))
    with pytest.raises(egnn.ConfigError):
        load_stream(ExperimentConfig(features=[path], channels=["T7"]))


def wide_stream(count: int = 150) -> egnn.FeatureMatrix:
    X, y = box_stream(count)
    noise = np.random.default_rng(1).random((count, 10))
    data = np.column_stack((X, noise))
    names = [f"x{j + 1}" for j in range(12)]
    return egnn.FeatureMatrix(names, data, y, ["S01"] * count,
                              ["G1"] * count, list(range(count)))


def test_sweep() -> None:
    fm = wide_stream()
    ranking = rank_stream(fm)
    config = ExperimentConfig(seed=1, k=5, min_features=5)

    rows = sweep(config, fm, ranking, source="w10")

    assert [(r.rho0, r.hr, r.features) for r in rows] == [(0.6, 100, 12),
                                                         (0.6, 100, 7),
                                                         (0.7, 80, 12),
                                                         (0.7, 80, 7)]
    assert all(r.source == "w10" and r.channel == "" for r in rows)
    plain, _ = run_prequential(fm.X, fm.y, config.params(0.6, 100), seed=1)
    assert rows[0].accuracy == plain.accuracy
    assert rows[0].c_avg == plain.c_avg
    assert rows[0].mean_ii == plain.mean_ii


def test_sweep_pairs_and_jobs() -> None:
    fm = wide_stream(80)
    ranking = rank_stream(fm)
    serial = ExperimentConfig(seed=3, pairs=[(0.5, 20)], k=6, min_features=6)
    parallel = ExperimentConfig(seed=3,
                                pairs=[(0.5, 20)],
                                k=6,
                                min_features=6,
                                jobs=2)

    first = sweep(serial, fm, ranking)
    second = sweep(parallel, fm, ranking)

    assert [r.features for r in first] == [12, 6]
    assert first == second


def test_sweep_rejects_ranking_size() -> None:
    fm = wide_stream(20)
    ranking = rank_stream(fm.select([0, 1, 2]))

    with pytest.raises(egnn.ConfigError):
        sweep(ExperimentConfig(seed=1), fm, ranking)


def test_channel_sweep(tmp_path: str) -> None:
    fm = egnn.read_features(channel_stream(tmp_path))
    config = ExperimentConfig(seed=1, pairs=[(0.6, 100)])

    rows = channel_sweep(config, [("w5", fm), ("w10", fm)])

    assert [(r.source, r.channel, r.features) for r in rows] == [
        ("w5", "AF3", 2), ("w5", "AF4", 1), ("w5", "O2", 1),
        ("w10", "AF3", 2), ("w10", "AF4", 1), ("w10", "O2", 1)
    ]
    assert dataclasses.replace(rows[3], source="w5") == rows[0]


def test_write_sweep(tmp_path: str) -> None:
    path = os.path.join(tmp_path, "sweep.csv")
    rows = [SweepRow("w10", "AF3", 0.6, 100, 10, 0.75, 3.5, None, None)]

    write_sweep(path, rows)

    lines = read_rows(path)
    assert tuple(lines[0]) == SWEEP_COLUMNS
    assert lines[1] == ["w10", "AF3", "0.6", "100", "10", "0.75", "3.5", "", ""]
