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
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

import egnn
from egnn.granule import INNER_HI, INNER_LO, OUTER_HI, OUTER_LO


def invoke(argv: List[str]) -> int:
    """
    Dispatch to egnn.invoke after making sure every verb is
    registered, like the executable does.
    """
    egnn.register_commands()
    return egnn.invoke(argv)


def make_granule(lo: Sequence[float],
                 hi: Sequence[float],
                 label: int = 1,
                 core: Optional[Tuple[Sequence[float], Sequence[float]]] = None,
                 weights: Optional[Sequence[float]] = None) -> egnn.Granule:
    """
    Build a granule from its support [lo, hi] and, optionally, its
    core; the core defaults to the support.
    """
    lo_a, hi_a = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    ilo, ihi = (lo_a, hi_a) if core is None else (np.asarray(
        core[0], dtype=float), np.asarray(core[1], dtype=float))
    bounds = np.column_stack((lo_a, ilo, ihi, hi_a))
    w = np.ones(lo_a.size) if weights is None else np.asarray(weights,
                                                                dtype=float)
    return egnn.Granule(bounds, w, label)


def random_granule(rng: np.random.Generator,
                   n: int,
                   label: int = 1) -> egnn.Granule:
    """
    A granule with four sorted random bounds and random weights per
    feature.
    """
    bounds = np.sort(rng.random((n, 4)), axis=1)
    return egnn.Granule(bounds, rng.random(n), label)


def assert_well_formed(g: egnn.Granule, rho: float) -> None:
    b = g.bounds
    assert np.all(b[:, OUTER_LO] <= b[:, INNER_LO])
    assert np.all(b[:, INNER_LO] <= b[:, INNER_HI])
    assert np.all(b[:, INNER_HI] <= b[:, OUTER_HI])
    assert np.all(g.widths() <= rho + 1e-12)
    assert np.all((g.weights >= 0.0) & (g.weights <= 1.0))


def box_stream(count: int,
               noise: float = 0.0,
               drift_at: Optional[int] = None,
               seed: int = 7) -> Tuple[np.ndarray, np.ndarray]:
    return egnn.BoxStream(noise_percentage=noise,
                          drift_position=drift_at,
                          random_state=seed).next_sample(count)


def sine(freq: float,
         amplitude: float = 1.0,
         seconds: float = 10.0,
         rate: float = 128.0) -> np.ndarray:
    t = np.arange(int(round(seconds * rate))) / rate
    return np.asarray(amplitude * np.sin(2 * np.pi * freq * t))


def make_manifest(directory: str,
                  recordings: Sequence[Tuple[str, str, np.ndarray]],
                  channels: Sequence[str] = ("AF3", "AF4"),
                  sample_rate: float = 128.0) -> str:
    """
    Write one CSV per (subject, game, data) triple and a manifest that
    lists them in order. Returns the manifest path.
    """
    entries: List[Dict[str, Any]] = []
    for subject, game, data in recordings:
        name = f"{subject}{game}.csv"
        egnn.dataset.write_recording(os.path.join(directory, name), channels,
                                     data)
        entries.append({"path": name, "subject": subject, "game": game})
    path = os.path.join(directory, "manifest.json")
    egnn.dataset.write_manifest(path, entries, sample_rate)
    return path


def make_features(directory: str,
                  X: np.ndarray,
                  y: Sequence[int],
                  names: Optional[Sequence[str]] = None,
                  filename: str = "features.csv") -> str:
    n = len(y)
    fm = egnn.FeatureMatrix(
        names=list(names) if names is not None else
        [f"x{j + 1}" for j in range(X.shape[1])],
        X=np.asarray(X, dtype=float),
        y=np.asarray(y, dtype=np.int64),
        subjects=["S01"] * n,
        games=["G1"] * n,
        windows=list(range(n)))
    path = os.path.join(directory, filename)
    egnn.write_features(path, fm)
    return path


def read_rows(path: str) -> List[List[str]]:
    """
    Header and rows of a CSV file, every cell as text.
    """
    frame = egnn.dataset.read_table(path, "table")
    return [list(frame.columns)] + frame.values.tolist()
