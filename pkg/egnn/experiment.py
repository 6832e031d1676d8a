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
Experiments on feature streams: the test-then-train run of a single
model, its report, and sweeps over feature subsets, channels and
hyper-parameter pairs.
"""

import concurrent.futures
import dataclasses
import json
import logging
import os
import time
import typing
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from egnn.dataset import (FeatureMatrix, extract_manifest, load_manifest,
                          read_features, write_table)
from egnn.error import ConfigError
from egnn.features import CHANNELS, Normalizer, WindowSpec
from egnn.metrics import ConfusionMatrix, StreamMetrics, interpretability
from egnn.network import (GranularNetwork, HyperParams, extract_rules,
                          format_rules)
from egnn.selection import FeatureRanking, leave_k_out_schedule, score_features

log = logging.getLogger(__name__)

DEFAULT_PAIRS: Tuple[Tuple[float, int], ...] = ((0.6, 100), (0.7, 80))

TRACE_COLUMNS = ("h", "true", "predicted", "correct", "acc", "c", "c_avg",
                 "rho", "ii")

SWEEP_COLUMNS = ("source", "channel", "rho0", "hr", "features", "accuracy",
                 "c_avg", "ii", "mean_ii")


def _conforms(value: Any, hint: Any) -> bool:
    """
    Whether a value read from JSON or the command line fits the type
    annotation of an ExperimentConfig field.
    """
    origin, args = typing.get_origin(hint), typing.get_args(hint)
    if origin is typing.Union:
        return any(_conforms(value, a) for a in args)
    if origin is list:
        return isinstance(value, list) and all(
            _conforms(v, args[0]) for v in value)
    if origin is tuple:
        return (isinstance(value, (list, tuple)) and
                len(value) == len(args) and
                all(_conforms(v, a) for v, a in zip(value, args)))
    if hint is type(None):
        return value is None
    if hint is float:
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    if hint is int:
        return isinstance(value, int) and not isinstance(value, bool)
    return isinstance(value, hint)


def _type_name(hint: Any) -> str:
    if isinstance(hint, type):
        return hint.__name__
    return str(hint).replace("typing.", "")


@dataclasses.dataclass
class ExperimentConfig:
    """
    Everything a run or a sweep needs. Field names double as keys of
    the JSON configuration file and as long command-line flags.
    """

    # pylint: disable=too-many-instance-attributes

    features: List[str] = dataclasses.field(default_factory=list)
    manifest: Optional[str] = None
    window_seconds: float = 10.0
    channels: Optional[List[str]] = None
    feature_count: Optional[int] = None
    ranking: Optional[str] = None
    rho0: float = 0.6
    hr: int = 100
    eta: float = 2.0
    seed: Optional[int] = None
    penalize_winner: bool = False
    grow_seeds: bool = False
    theta: Optional[float] = None
    classes: Optional[List[int]] = None
    normalize: bool = True
    output_dir: str = "egnn-out"
    k: int = 5
    min_features: int = 10
    pairs: Optional[List[Tuple[float, int]]] = None
    per_channel: bool = False
    jobs: int = 1
    lam: float = 1.0

    @classmethod
    def from_json(cls, path: str) -> Dict[str, Any]:
        """
        Read the settings stored in a JSON configuration file. Unknown
        keys are rejected.
        """
        try:
            with open(path, encoding="utf-8") as f:
                doc = json.load(f)
        except OSError as err:
            raise ConfigError(f"cannot read {path}: {err.strerror}") from err
        except json.JSONDecodeError as err:
            raise ConfigError(f"{path}: line {err.lineno}: {err.msg}") from err
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise ConfigError(f"{path}: unknown keys {', '.join(unknown)}")
        return doc

    @classmethod
    def build(cls,
              config_file: Optional[str] = None,
              overrides: Optional[Dict[str, Any]] = None
             ) -> "ExperimentConfig":
        """
        Start from the defaults, apply `config_file` and then the
        `overrides` that are not None.
        """
        values: Dict[str, Any] = {}
        if config_file is not None:
            values.update(cls.from_json(config_file))
        for key, value in (overrides or {}).items():
            if value is not None and value != []:
                values[key] = value
        if isinstance(values.get("features"), str):
            values["features"] = [values["features"]]
        if values.get("pairs") is not None:
            try:
                values["pairs"] = [
                    (float(r), int(h)) for r, h in values["pairs"]
                ]
            except (TypeError, ValueError) as err:
                raise ConfigError(f"pairs: expected [rho0, hr] pairs, got "
                                  f"{values['pairs']!r}") from err
        hints = typing.get_type_hints(cls)
        for key, value in values.items():
            if not _conforms(value, hints[key]):
                raise ConfigError(f"{key}: expected "
                                  f"{_type_name(hints[key])}, got {value!r}")
        return cls(**values)

    def params(self,
               rho0: Optional[float] = None,
               hr: Optional[int] = None) -> HyperParams:
        # pylint: disable=missing-docstring
        return HyperParams(rho0=self.rho0 if rho0 is None else rho0,
                           hr=self.hr if hr is None else hr,
                           eta=self.eta,
                           penalize_winner=self.penalize_winner,
                           grow_seeds=self.grow_seeds)

    def validate(self, require_seed: bool = True) -> None:
        """
        Check the settings a run depends on, including that the files
        they reference exist.
        """
        if require_seed and self.seed is None:
            raise ConfigError("a seed is required (--seed)")
        if not self.features and not self.manifest:
            raise ConfigError("no feature file or manifest given")
        paths = [p for _, p in stream_sources(self)]
        if self.ranking:
            paths.append(self.ranking)
        for path in paths:
            if not os.path.isfile(path):
                raise ConfigError(f"no such file: {path}")
        if self.window_seconds <= 0:
            raise ConfigError("window length must be positive")
        if self.feature_count is not None and self.feature_count < 1:
            raise ConfigError("feature_count must be positive")
        if self.k < 1:
            raise ConfigError("k must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")
        self.params()

    def to_dict(self) -> Dict[str, Any]:
        # pylint: disable=missing-docstring
        return dataclasses.asdict(self)


@dataclasses.dataclass
class RunReport:
    """
    The outcome of one test-then-train pass over a stream. Everything
    except `latency` is a deterministic function of the stream, the
    hyper-parameters and the seed.
    """

    # pylint: disable=too-many-instance-attributes

    instances: int
    accuracy: float
    mean_accuracy: float
    c_avg: float
    final_ii: Optional[float]
    mean_ii: Optional[float]
    final_rho: float
    granules: int
    confusion: ConfusionMatrix
    traces: List[Tuple[Any, ...]]
    latency: List[float]
    params: Dict[str, Any]
    seed: Optional[int]
    features: List[str]

    def to_dict(self) -> Dict[str, Any]:
        # pylint: disable=missing-docstring
        return {
            "instances": self.instances,
            "accuracy": self.accuracy,
            "mean_accuracy": self.mean_accuracy,
            "c_avg": self.c_avg,
            "final_ii": self.final_ii,
            "mean_ii": self.mean_ii,
            "final_rho": self.final_rho,
            "granules": self.granules,
            "confusion": self.confusion.to_dict(),
            "hyper_params": self.params,
            "seed": self.seed,
            "features": self.features,
        }

    def timing(self) -> Dict[str, Any]:
        """
        Wall-clock cost of normalizing, predicting and learning each
        instance, in milliseconds.
        """
        ms = np.asarray(self.latency) * 1e3
        return {
            "mean_ms": float(ms.mean()) if ms.size else 0.0,
            "max_ms": float(ms.max()) if ms.size else 0.0,
            "per_instance_ms": ms.tolist(),
        }

    def write(self,
              directory: str,
              model: Optional[GranularNetwork] = None) -> None:
        """
        Store the report, the traces and the timings in `directory`,
        and the checkpoint and rules of `model` when given.
        """
        os.makedirs(directory, exist_ok=True)
        _write_json(os.path.join(directory, "report.json"), self.to_dict())
        _write_json(os.path.join(directory, "timing.json"), self.timing())
        write_table(os.path.join(directory, "traces.csv"), TRACE_COLUMNS,
                    self.traces)
        if model is None:
            return
        model.save(os.path.join(directory, "model.json"))
        rules = extract_rules(model)
        _write_json(os.path.join(directory, "rules.json"),
                    [r.to_dict() for r in rules])
        with open(os.path.join(directory, "rules.txt"), "w",
                  encoding="utf-8") as f:
            f.write(format_rules(rules, self.features or None))


def _write_json(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def run_prequential(
        X: np.ndarray,
        y: Sequence[int],
        params: HyperParams,
        seed: Optional[int],
        classes: Optional[Sequence[int]] = None,
        normalize: bool = True,
        theta: Optional[float] = None,
        feature_names: Optional[Sequence[str]] = None
) -> Tuple[RunReport, GranularNetwork]:
    """
    Stream the rows of `X` in order: normalize, predict, score and
    learn each one. Returns the report and the final model.
    """
    # pylint: disable=too-many-locals
    data = np.asarray(X, dtype=np.float64)
    labels = [int(v) for v in y]
    if data.ndim != 2 or data.shape[0] != len(labels):
        raise ConfigError(f"got {len(labels)} labels for a stream of shape "
                          f"{data.shape}")
    model = GranularNetwork(params, classes=classes, seed=seed)
    metrics = StreamMetrics(hr=params.hr, theta=theta)
    scaler = Normalizer()
    traces: List[Tuple[Any, ...]] = []
    latency: List[float] = []
    acc_sum = 0.0

    for raw, label in zip(data, labels):
        start = time.perf_counter()
        x = scaler(raw) if normalize else raw
        prediction, _ = model.learn(x, label)
        latency.append(time.perf_counter() - start)

        predicted = prediction.predicted_class
        metrics.record(label, predicted, len(model.granules))
        metrics.sample(model)
        acc_sum += metrics.acc
        ii = interpretability(model, theta).ii
        traces.append((metrics.step, label, predicted, int(label == predicted),
                       metrics.acc, len(model.granules), metrics.c_avg,
                       model.rho, ii))

    if metrics.step and metrics.step % params.hr != 0:
        metrics.sample(model, force=True)
    log.info("%d instances: accuracy %.4f, c_avg %.2f, %d granules",
             metrics.step, metrics.acc, metrics.c_avg, len(model.granules))

    report = RunReport(
        instances=metrics.step,
        accuracy=metrics.acc,
        mean_accuracy=acc_sum / metrics.step if metrics.step else 0.0,
        c_avg=metrics.c_avg,
        final_ii=metrics.final_ii,
        mean_ii=metrics.mean_ii,
        final_rho=model.rho,
        granules=len(model.granules),
        confusion=metrics.confusion,
        traces=traces,
        latency=latency,
        params=params.to_dict(),
        seed=seed,
        features=list(feature_names or []))
    return report, model


def stream_sources(config: ExperimentConfig) -> List[Tuple[str, str]]:
    """
    (name, path) of every stream the configuration points at: the
    feature files, or else the manifest. Names are file stems.
    """
    paths = config.features or ([config.manifest] if config.manifest else [])
    return [(os.path.splitext(os.path.basename(p))[0], p) for p in paths]


def read_stream(config: ExperimentConfig,
                path: Optional[str] = None) -> FeatureMatrix:
    """
    The feature matrix of `path` (default: the first configured
    source). A manifest is extracted on the fly into windows of
    `window_seconds` over the configured channels.
    """
    path = path or stream_sources(config)[0][1]
    if path != config.manifest:
        return read_features(path)
    entries = load_manifest(path)
    log.info("extracting %d recordings into %gs windows", len(entries),
             config.window_seconds)
    return extract_manifest(entries, WindowSpec(config.window_seconds),
                            config.channels or CHANNELS)


def load_stream(config: ExperimentConfig,
                path: Optional[str] = None) -> FeatureMatrix:
    """
    Read the stream of `path` (default: the first configured source)
    and keep the configured top-ranked features and channels.
    """
    fm = read_stream(config, path)
    if config.feature_count is not None:
        if config.ranking is None:
            raise ConfigError("feature_count needs a ranking file")
        ranking = FeatureRanking.read_json(config.ranking)
        if len(ranking) != len(fm.names):
            raise ConfigError(f"the ranking covers {len(ranking)} features, "
                              f"the stream has {len(fm.names)}")
        if config.feature_count > len(ranking):
            raise ConfigError(f"feature_count {config.feature_count} exceeds "
                              f"the {len(ranking)} available features")
        fm = fm.select(ranking.top(config.feature_count))
    if config.channels:
        wanted = [c.upper() for c in config.channels]
        missing = [c for c in wanted if c not in fm.channels]
        if missing:
            raise ConfigError(f"channels not in the stream: "
                              f"{', '.join(missing)}")
        fm = fm.select([
            i for i, info in enumerate(fm.layout) if info.channel in wanted
        ])
    return fm


def run(config: ExperimentConfig) -> Tuple[RunReport, GranularNetwork]:
    """
    Run one configured experiment and write its outputs.
    """
    config.validate()
    fm = load_stream(config)
    report, model = run_prequential(fm.X,
                                    fm.y,
                                    config.params(),
                                    config.seed,
                                    classes=config.classes,
                                    normalize=config.normalize,
                                    theta=config.theta,
                                    feature_names=fm.names)
    report.write(config.output_dir, model)
    return report, model


@dataclasses.dataclass(frozen=True)
class SweepRow:
    # pylint: disable=missing-docstring

    source: str
    channel: str
    rho0: float
    hr: int
    features: int
    accuracy: float
    c_avg: float
    ii: Optional[float]
    mean_ii: Optional[float]

    def values(self) -> List[Any]:
        # pylint: disable=missing-docstring
        return [getattr(self, name) for name in SWEEP_COLUMNS]


@dataclasses.dataclass(frozen=True)
class _Cell:
    source: str
    channel: str
    X: np.ndarray
    y: np.ndarray
    params: HyperParams
    seed: Optional[int]
    classes: Optional[Tuple[int, ...]]
    normalize: bool
    theta: Optional[float]


def _run_cell(cell: _Cell) -> SweepRow:
    report, _ = run_prequential(cell.X,
                                cell.y,
                                cell.params,
                                cell.seed,
                                classes=cell.classes,
                                normalize=cell.normalize,
                                theta=cell.theta)
    return SweepRow(source=cell.source,
                    channel=cell.channel,
                    rho0=cell.params.rho0,
                    hr=cell.params.hr,
                    features=int(cell.X.shape[1]),
                    accuracy=report.accuracy,
                    c_avg=report.c_avg,
                    ii=report.final_ii,
                    mean_ii=report.mean_ii)


def _run_cells(cells: Sequence[_Cell], jobs: int) -> List[SweepRow]:
    if jobs <= 1 or len(cells) <= 1:
        return [_run_cell(c) for c in cells]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_cell, cells))


def _pairs(config: ExperimentConfig) -> List[Tuple[float, int]]:
    return list(config.pairs) if config.pairs else list(DEFAULT_PAIRS)


def sweep(config: ExperimentConfig,
          fm: FeatureMatrix,
          ranking: FeatureRanking,
          source: str = "") -> List[SweepRow]:
    """
    One run per hyper-parameter pair and per leave-k-out subset of
    `ranking`. Each subset keeps its columns in stream order, so the
    full-size row reproduces a plain run exactly.
    """
    if len(ranking) != len(fm.names):
        raise ConfigError(f"the ranking covers {len(ranking)} features, "
                          f"the stream has {len(fm.names)}")
    classes = tuple(config.classes) if config.classes else None
    cells = []
    for rho0, hr in _pairs(config):
        params = config.params(rho0, hr)
        for subset in leave_k_out_schedule(ranking, config.k,
                                           config.min_features):
            cols = sorted(subset)
            cells.append(
                _Cell(source, "", fm.X[:, cols], fm.y, params, config.seed,
                      classes, config.normalize, config.theta))
    log.info("sweeping %d cells on %d jobs", len(cells), config.jobs)
    return _run_cells(cells, config.jobs)


def channel_sweep(config: ExperimentConfig,
                  sources: Sequence[Tuple[str, FeatureMatrix]]
                 ) -> List[SweepRow]:
    """
    One run per source (typically one feature file per window length),
    per channel and per hyper-parameter pair, each on the features of
    that channel alone.
    """
    classes = tuple(config.classes) if config.classes else None
    cells = []
    for source, fm in sources:
        for channel in fm.channels:
            cols = fm.channel_columns(channel)
            for rho0, hr in _pairs(config):
                cells.append(
                    _Cell(source, channel, fm.X[:, cols], fm.y,
                          config.params(rho0, hr), config.seed, classes,
                          config.normalize, config.theta))
    log.info("sweeping %d channel cells on %d jobs", len(cells), config.jobs)
    return _run_cells(cells, config.jobs)


def rank_stream(fm: FeatureMatrix, lam: float = 1.0) -> FeatureRanking:
    # pylint: disable=missing-docstring
    return score_features(fm.X, fm.y, lam=lam, features=fm.layout)


def write_sweep(path: str, rows: Sequence[SweepRow]) -> None:
    # pylint: disable=missing-docstring
    write_table(path, SWEEP_COLUMNS, [row.values() for row in rows])
