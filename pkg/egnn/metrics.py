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
Streaming evaluation: recursive accuracy, average model size, the
confusion matrix and the interpretability index of a granular model.
"""

import dataclasses
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from egnn.error import EmptyModelError
from egnn.granule import Granule
from egnn.network import GranularNetwork


def update_accuracy(acc_old: float, h: int, correct: bool) -> float:
    """
    Fold hit (or miss) number `h` into the running accuracy.
    """
    assert h >= 1
    return (h - 1) / h * acc_old + (1.0 if correct else 0.0) / h


def update_compactness(c_avg_old: float, h: int, c_now: int) -> float:
    """
    Fold the granule count at step `h` into the running average.
    """
    assert h >= 1
    return (h - 1) / h * c_avg_old + c_now / h


def volume(g: Granule) -> float:
    # pylint: disable=missing-docstring
    return float(np.prod(g.widths()))


def theta_per_granule(n_features: int) -> int:
    """
    Adaptive parameters held by one granule: four bounds and one
    weight per feature plus the class label.
    """
    return 5 * n_features + 1


def volume_epsilon(n_features: int) -> float:
    """
    10^(-3n), floored at the smallest positive normal double.
    """
    return max(10.0**(-3 * n_features), float(np.finfo(np.float64).tiny))


@dataclasses.dataclass(frozen=True)
class InterpretabilityReport:
    # pylint: disable=missing-docstring

    ii: float
    equilibrium: float
    n_hat: int
    c: int
    theta_hat: float
    volumes: Tuple[float, ...]
    scaled_volumes: Tuple[float, ...]


def interpretability(model: GranularNetwork,
                     theta: Optional[float] = None) -> InterpretabilityReport:
    """
    Compute the interpretability index of `model`. It rewards few
    granules, few parameters per granule and few features per
    granule, and it is scaled by how balanced the granule volumes are
    (the equilibrium, one minus four times the population variance of
    the max-scaled volumes).
    """
    granules = model.granules
    if not granules:
        raise EmptyModelError()
    n = granules[0].n_features
    c = len(granules)
    theta_hat = float(theta_per_granule(n) if theta is None else theta)

    volumes = np.array([volume(g) for g in granules])
    scaled = volumes / (volumes.max() + volume_epsilon(n))
    equilibrium = 1.0 - 4.0 * float(np.var(scaled))
    ii = equilibrium * (n + c + theta_hat) / (3.0 * n * c * theta_hat)
    return InterpretabilityReport(ii=ii,
                                  equilibrium=equilibrium,
                                  n_hat=n,
                                  c=c,
                                  theta_hat=theta_hat,
                                  volumes=tuple(volumes.tolist()),
                                  scaled_volumes=tuple(scaled.tolist()))


class ConfusionMatrix:
    """
    Counts of (true, predicted) class pairs. Rows are true classes,
    columns predicted classes, both in ascending class order. The
    matrix grows whenever a class shows up for the first time.
    """

    __slots__ = "classes", "counts"

    def __init__(self, classes: Optional[List[int]] = None) -> None:
        self.classes: List[int] = sorted(set(classes or []))
        self.counts = np.zeros((len(self.classes), len(self.classes)),
                               dtype=np.int64)

    def _index(self, label: int) -> int:
        if label not in self.classes:
            self.classes.append(label)
            self.classes.sort()
            pos = self.classes.index(label)
            self.counts = np.insert(self.counts, pos, 0, axis=0)
            self.counts = np.insert(self.counts, pos, 0, axis=1)
        return self.classes.index(label)

    def update(self, true_class: int, predicted_class: int) -> None:
        # pylint: disable=missing-docstring
        i = self._index(int(true_class))
        j = self._index(int(predicted_class))
        self.counts[i, j] += 1

    @property
    def total(self) -> int:
        # pylint: disable=missing-docstring
        return int(self.counts.sum())

    def to_rows(self) -> List[List[str]]:
        """
        Rows for a CSV file: a header of predicted classes, then one
        row per true class.
        """
        rows = [["true\\predicted"] + [str(c) for c in self.classes]]
        for i, c in enumerate(self.classes):
            rows.append([str(c)] + [str(int(v)) for v in self.counts[i]])
        return rows

    def to_dict(self) -> Dict[str, Any]:
        # pylint: disable=missing-docstring
        return {
            "classes": list(self.classes),
            "counts": self.counts.tolist(),
        }


def update_confusion(matrix: ConfusionMatrix, true_class: int,
                     predicted_class: int) -> ConfusionMatrix:
    # pylint: disable=missing-docstring
    matrix.update(true_class, predicted_class)
    return matrix


@dataclasses.dataclass
class StreamMetrics:
    """
    The metrics accumulator that runs alongside a model. The
    interpretability index is sampled every `hr` steps.
    """

    hr: int = 100
    theta: Optional[float] = None
    acc: float = 0.0
    c_avg: float = 0.0
    step: int = 0
    confusion: ConfusionMatrix = dataclasses.field(
        default_factory=ConfusionMatrix)
    ii_history: List[float] = dataclasses.field(default_factory=list)

    def record(self, true_class: int, predicted_class: int,
               c_now: int) -> None:
        # pylint: disable=missing-docstring
        self.step += 1
        self.acc = update_accuracy(self.acc, self.step,
                                   true_class == predicted_class)
        self.c_avg = update_compactness(self.c_avg, self.step, c_now)
        self.confusion.update(true_class, predicted_class)

    def sample(self,
               model: GranularNetwork,
               force: bool = False) -> Optional[float]:
        """
        Append the current index to the history on every `hr`-th step,
        or unconditionally with `force`. Returns the sampled value.
        """
        if not model.granules:
            return None
        if not force and self.step % self.hr != 0:
            return None
        ii = interpretability(model, self.theta).ii
        self.ii_history.append(ii)
        return ii

    @property
    def final_ii(self) -> Optional[float]:
        # pylint: disable=missing-docstring
        return self.ii_history[-1] if self.ii_history else None

    @property
    def mean_ii(self) -> Optional[float]:
        # pylint: disable=missing-docstring
        if not self.ii_history:
            return None
        return float(np.mean(self.ii_history))
