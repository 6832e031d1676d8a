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
Synthetic data: a labeled stream of points drawn from class boxes
(with label noise and an optional abrupt drift), and multi-channel
recordings whose dominant rhythm depends on the class.
"""

import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from egnn.dataset import write_manifest, write_recording
from egnn.error import ConfigError
from egnn.features import CHANNELS

#
# Four disjoint class boxes in the unit square, as (lows, highs).
#
DEFAULT_BOXES: Tuple[Tuple[Tuple[float, float], Tuple[float, float]], ...] = (
    ((0.05, 0.10), (0.15, 0.25)),
    ((0.55, 0.10), (0.65, 0.25)),
    ((0.05, 0.60), (0.15, 0.75)),
    ((0.55, 0.60), (0.65, 0.75)),
)


class BoxStream:
    """
    Endless stream of points from axis-aligned class boxes. Each
    instance picks a class uniformly, draws a point uniformly from its
    box and, with probability `noise_percentage`, swaps the label for
    a different class. From instance `drift_position` on, every box is
    translated by `shift` along the first axis. Labels start at 1.
    """

    def __init__(self,
                 boxes: Sequence[Any] = DEFAULT_BOXES,
                 noise_percentage: float = 0.0,
                 drift_position: Optional[int] = None,
                 shift: float = 0.3,
                 random_state: Optional[int] = None) -> None:
        self.lows = np.array([b[0] for b in boxes], dtype=np.float64)
        self.highs = np.array([b[1] for b in boxes], dtype=np.float64)
        if self.lows.ndim != 2 or self.lows.shape != self.highs.shape:
            raise ConfigError("boxes must be (lows, highs) pairs of vectors")
        if np.any(self.lows > self.highs):
            raise ConfigError("box lows must not exceed box highs")
        if not 0.0 <= noise_percentage <= 1.0:
            raise ConfigError(
                f"noise must be in [0, 1], got {noise_percentage}")
        moved_lo = self.lows[:, 0] + shift
        moved_hi = self.highs[:, 0] + shift
        if drift_position is not None and (np.any(moved_lo < 0.0) or
                                           np.any(moved_hi > 1.0)):
            raise ConfigError("drift would move a box out of the unit cube")
        self.noise_percentage = noise_percentage
        self.drift_position = drift_position
        self.shift = shift
        self.rng = np.random.default_rng(random_state)
        self.position = 0

    @property
    def n_classes(self) -> int:
        # pylint: disable=missing-docstring
        return int(self.lows.shape[0])

    @property
    def n_features(self) -> int:
        # pylint: disable=missing-docstring
        return int(self.lows.shape[1])

    def next_sample(self, count: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """
        Draw the next `count` instances, returning (X, y).
        """
        m = self.n_classes
        classes = self.rng.integers(0, m, size=count)
        u = self.rng.random((count, self.n_features))
        lows, highs = self.lows[classes], self.highs[classes]
        X = lows + u * (highs - lows)
        if self.drift_position is not None:
            index = self.position + np.arange(count)
            X[index >= self.drift_position, 0] += self.shift

        labels = classes.copy()
        flip = self.rng.random(count) < self.noise_percentage
        offsets = self.rng.integers(1, m, size=count)
        labels[flip] = (labels[flip] + offsets[flip]) % m
        self.position += count
        return np.clip(X, 0.0, 1.0), labels + 1


def synth_recordings(directory: str,
                     subjects: int = 2,
                     games: int = 4,
                     duration: float = 20.0,
                     sample_rate: float = 128.0,
                     channels: Sequence[str] = CHANNELS,
                     noise: float = 0.5,
                     random_state: Optional[int] = None) -> str:
    """
    Write one CSV per (subject, game) plus a manifest into `directory`
    and return the manifest path. Game g puts its dominant sine in a
    different band (delta, theta, alpha, beta for G1..G4) on top of
    white noise.
    """
    rhythms = (2.0, 6.0, 10.0, 20.0)
    if not 1 <= games <= len(rhythms):
        raise ConfigError(f"games must be between 1 and {len(rhythms)}")
    rng = np.random.default_rng(random_state)
    os.makedirs(directory, exist_ok=True)
    n = int(round(duration * sample_rate))
    t = np.arange(n) / sample_rate

    entries: List[Dict[str, Any]] = []
    for s in range(1, subjects + 1):
        for g in range(1, games + 1):
            phases = rng.uniform(0.0, 2 * np.pi, size=len(channels))
            amps = rng.uniform(5.0, 15.0, size=len(channels))
            data = (amps * np.sin(2 * np.pi * rhythms[g - 1] * t[:, None] +
                                  phases) +
                    noise * rng.standard_normal((n, len(channels))))
            name = f"S{s:02d}G{g}.csv"
            write_recording(os.path.join(directory, name), channels, data)
            entries.append({
                "path": name,
                "subject": f"S{s:02d}",
                "game": f"G{g}"
            })

    path = os.path.join(directory, "manifest.json")
    write_manifest(path, entries, sample_rate)
    return path
