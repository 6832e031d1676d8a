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
This module contains the evolving granular neural network itself
("egnn.GranularNetwork"): the forward pass from an instance to class
probabilities, and the single-pass learning step that creates,
adapts, re-weights and deletes granules and adapts the maximum
granule width rho over time.
"""

import dataclasses
import json
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
import scipy.special

from egnn.error import ConfigError, EmptyModelError
from egnn.granule import Granule, check_instance, new_pointwise, similarity

log = logging.getLogger(__name__)

AGGREGATIONS = ("product",)


@dataclasses.dataclass(frozen=True)
class HyperParams:
    """
    The knobs of the learning algorithm.

    rho0:            initial maximum granule width
    hr:              horizon, in steps, for deletion and rho updates
    eta:             reference number of granules created per horizon
    aggregation:     neuron aggregating weighted similarities
    rho_min:         floor rho never drops below
    penalize_winner: also lower the winner's weights when it mispredicts
    grow_seeds:      when a prediction is wrong, grow the nearest
                     degenerate granule of the true class toward the
                     instance so that it can start winning
    """

    rho0: float = 0.5
    hr: int = 100
    eta: float = 2.0
    aggregation: str = "product"
    rho_min: float = 1e-3
    penalize_winner: bool = False
    grow_seeds: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.rho0 <= 1.0:
            raise ConfigError(f"rho0 must be in (0, 1], got {self.rho0}")
        if isinstance(self.hr, bool) or int(self.hr) != self.hr or self.hr < 1:
            raise ConfigError(f"hr must be a positive integer, got {self.hr}")
        if self.eta < 0.0:
            raise ConfigError(f"eta must be non-negative, got {self.eta}")
        if self.aggregation not in AGGREGATIONS:
            raise ConfigError(f"unsupported aggregation '{self.aggregation}'")
        if not 0.0 < self.rho_min <= self.rho0:
            raise ConfigError(
                f"rho_min must be in (0, rho0], got {self.rho_min}")

    def to_dict(self) -> Dict[str, Any]:
        # pylint: disable=missing-docstring
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "HyperParams":
        # pylint: disable=missing-docstring
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(
                f"unknown hyper-parameters: {', '.join(sorted(unknown))}")
        return cls(**obj)


@dataclasses.dataclass(frozen=True)
class Prediction:
    """
    The outcome of one forward pass. When the model was empty the
    arrays are empty, `winner_index` is None and `predicted_class`
    is the random first estimate.
    """

    activations: np.ndarray
    probabilities: np.ndarray
    winner_index: Optional[int]
    predicted_class: int


def aggregate(sims: np.ndarray, weights: np.ndarray) -> float:
    """
    Product T-norm of the weighted similarities.
    """
    return float(np.prod(np.asarray(sims) * np.asarray(weights)))


def softmax(activations: Sequence[float]) -> np.ndarray:
    # pylint: disable=missing-docstring
    return np.asarray(
        scipy.special.softmax(np.asarray(activations, dtype=np.float64)))


def compute_error(true_class: int, predicted_class: int) -> int:
    """
    -1 for a correct prediction, +1 otherwise.
    """
    return -1 if true_class == predicted_class else 1


def update_weights(g: Granule, sims: np.ndarray, error: int) -> Granule:
    """
    Move the weights of `g` by the similarities of the current
    instance, scaled by the granule's hit ratio when right and by its
    miss ratio when wrong. Counters must already account for the
    current step.
    """
    total = g.right_count + g.wrong_count
    assert total > 0
    if error < 0:
        beta = g.right_count / total
    else:
        beta = g.wrong_count / total
    g.weights = np.clip(g.weights - error * beta * np.asarray(sims), 0.0,
                        1.0)
    return g


class GranularNetwork:
    """
    An evolving granular classifier. The structure starts empty and
    grows from the data stream: each call to `learn` performs one
    test-then-train step.
    """

    def __init__(self,
                 params: Optional[HyperParams] = None,
                 classes: Optional[Iterable[int]] = None,
                 seed: Optional[int] = None) -> None:
        self.params = params if params is not None else HyperParams()
        self.rho = float(self.params.rho0)
        self.granules: List[Granule] = []
        self.step = 0
        self.created_in_epoch = 0
        self.classes_seen: Set[int] = set()
        self.classes: Optional[Tuple[int, ...]] = None
        if classes is not None:
            self.classes = tuple(sorted({int(c) for c in classes}))
        self.rng = np.random.default_rng(seed)
        self.n_features: Optional[int] = None
        self.last_input: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.granules)

    def predict(self, x: Any) -> Prediction:
        """
        Run the forward pass for `x`. The winner is the granule with
        the highest activation, the lowest index breaking ties.
        """
        if not self.granules:
            raise EmptyModelError()
        arr = check_instance(x, self.n_features)
        bounds = np.stack([g.bounds for g in self.granules])
        weights = np.stack([g.weights for g in self.granules])
        activations = np.prod(similarity(bounds, arr) * weights, axis=1)
        #
        # Softmax is monotone, so the argmax over activations is the
        # argmax over probabilities. Going through the activations
        # keeps distinct values apart when exp() rounds them together.
        #
        winner = int(np.argmax(activations))
        return Prediction(activations, softmax(activations), winner,
                          self.granules[winner].label)

    def learn(self, x: Any, label: int) -> Tuple[Prediction, int]:
        """
        Predict `x`, score the prediction against `label` and then
        evolve the model with it. Returns the prediction made before
        learning and the error sign (-1 right, +1 wrong).
        """
        arr = check_instance(x, self.n_features)
        label = int(label)
        self.step += 1
        h = self.step

        if not self.granules:
            estimate = self._first_estimate()
            prediction = Prediction(np.empty(0), np.empty(0), None, estimate)
            error = compute_error(label, estimate)
            self.n_features = arr.size
            self._create(arr, label)
        else:
            prediction = self.predict(arr)
            assert prediction.winner_index is not None
            error = compute_error(label, prediction.predicted_class)
            winner = self.granules[prediction.winner_index]
            if error < 0:
                winner.right_count += 1
            else:
                winner.wrong_count += 1
            winner.last_win_step = h

            covered = any(
                g.covers_expansion(arr, self.rho) for g in self.granules)
            if error > 0 or not covered:
                if error > 0 and self.params.penalize_winner:
                    update_weights(winner, winner.feature_similarity(arr),
                                   error)
                if error > 0 and self.params.grow_seeds:
                    self._grow_seed(arr, label)
                self._create(arr, label)
            else:
                sims = winner.feature_similarity(arr)
                winner.adapt(arr, self.rho)
                update_weights(winner, sims, error)

        self._delete_inactive()
        if h % self.params.hr == 0:
            self.update_granularity()
        self.last_input = arr
        return prediction, error

    def update_granularity(self) -> float:
        """
        Adapt rho from the number of granules created since the last
        update, contract every granule to the new rho and start a new
        counting epoch. Returns the new rho.
        """
        r = self.created_in_epoch
        hr, eta = self.params.hr, self.params.eta
        old = self.rho
        if r > eta:
            self.rho = (1.0 + r / hr) * self.rho
        elif r < eta:
            self.rho = (1.0 - (eta - r) / hr) * self.rho
        self.rho = min(1.0, max(self.params.rho_min, self.rho))
        for g in self.granules:
            g.enforce_max_width(self.rho)
        self.created_in_epoch = 0
        log.debug("step %d: %d granules created, rho %.6g -> %.6g", self.step,
                  r, old, self.rho)
        return self.rho

    def _first_estimate(self) -> int:
        if self.classes:
            return int(self.rng.choice(self.classes))
        return 1

    def _create(self, x: np.ndarray, label: int) -> None:
        self.granules.append(new_pointwise(x, label, self.step))
        self.created_in_epoch += 1
        self.classes_seen.add(label)

    def _grow_seed(self, x: np.ndarray, label: int) -> None:
        best: Optional[Granule] = None
        best_dist = np.inf
        for g in self.granules:
            if g.label != label or not g.is_degenerate():
                continue
            if not g.covers_expansion(x, self.rho):
                continue
            dist = float(np.max(np.abs(g.midpoints() - x)))
            if dist < best_dist:
                best, best_dist = g, dist
        if best is not None:
            best.adapt(x, self.rho)

    def _delete_inactive(self) -> None:
        hr = self.params.hr
        kept = [g for g in self.granules if self.step - g.last_win_step <= hr]
        if len(kept) != len(self.granules):
            log.debug("step %d: deleted %d inactive granules", self.step,
                      len(self.granules) - len(kept))
            self.granules = kept

    #
    # Checkpoints.
    #
    def to_dict(self) -> Dict[str, Any]:
        # pylint: disable=missing-docstring
        return {
            "hyper_params": self.params.to_dict(),
            "rho": self.rho,
            "step": self.step,
            "created_in_epoch": self.created_in_epoch,
            "classes_seen": sorted(self.classes_seen),
            "classes": None if self.classes is None else list(self.classes),
            "n_features": self.n_features,
            "last_input": (None if self.last_input is None else
                           self.last_input.tolist()),
            "rng": self.rng.bit_generator.state,
            "granules": [g.to_dict() for g in self.granules],
        }

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "GranularNetwork":
        # pylint: disable=missing-docstring
        model = cls(HyperParams.from_dict(obj["hyper_params"]),
                    classes=obj.get("classes"))
        model.rho = float(obj["rho"])
        model.step = int(obj["step"])
        model.created_in_epoch = int(obj["created_in_epoch"])
        model.classes_seen = {int(c) for c in obj["classes_seen"]}
        model.n_features = obj.get("n_features")
        if obj.get("last_input") is not None:
            model.last_input = np.asarray(obj["last_input"], dtype=np.float64)
        if obj.get("rng") is not None:
            model.rng.bit_generator.state = obj["rng"]
        model.granules = [Granule.from_dict(g) for g in obj["granules"]]
        return model

    def save(self, path: str) -> None:
        # pylint: disable=missing-docstring
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=1)
            f.write("\n")

    @classmethod
    def load(cls, path: str) -> "GranularNetwork":
        # pylint: disable=missing-docstring
        with open(path, encoding="utf-8") as f:
            return cls.from_dict(json.load(f))


@dataclasses.dataclass(frozen=True)
class Rule:
    """
    The linguistic reading of one granule:

        IF x1 is G1 AND ... AND xn is Gn THEN class is C

    where every Gj is given by its core and support intervals.
    """

    index: int
    label: int
    core: Tuple[Tuple[float, float], ...]
    support: Tuple[Tuple[float, float], ...]
    weights: Tuple[float, ...]
    probability: float
    right_count: int
    wrong_count: int

    def to_dict(self) -> Dict[str, Any]:
        # pylint: disable=missing-docstring
        return {
            "index": self.index,
            "label": self.label,
            "core": [list(c) for c in self.core],
            "support": [list(s) for s in self.support],
            "weights": list(self.weights),
            "probability": self.probability,
            "right_count": self.right_count,
            "wrong_count": self.wrong_count,
        }


def extract_rules(model: GranularNetwork, x: Any = None) -> List[Rule]:
    """
    Return one rule per granule. The probability attached to a rule
    is the share of the softmax mass its granule gets for `x`, or for
    the last learned instance when `x` is not given.
    """
    if not model.granules:
        return []
    query = x if x is not None else model.last_input
    if query is not None:
        probs = model.predict(query).probabilities
    else:
        probs = np.full(len(model.granules), 1.0 / len(model.granules))
    rules = []
    for i, g in enumerate(model.granules):
        n = g.n_features
        rules.append(
            Rule(index=i,
                 label=g.label,
                 core=tuple(g.core(j) for j in range(n)),
                 support=tuple(g.support(j) for j in range(n)),
                 weights=tuple(float(w) for w in g.weights),
                 probability=float(probs[i]),
                 right_count=g.right_count,
                 wrong_count=g.wrong_count))
    return rules


def format_rules(rules: Sequence[Rule],
                 feature_names: Optional[Sequence[str]] = None) -> str:
    """
    Render rules as plain text, one block per rule.
    """
    lines = []
    for rule in rules:
        lines.append(f"rule {rule.index}: class {rule.label} "
                     f"(p={rule.probability:.4f}, right={rule.right_count}, "
                     f"wrong={rule.wrong_count})")
        for j, (core, supp) in enumerate(zip(rule.core, rule.support)):
            name = feature_names[j] if feature_names else f"x{j + 1}"
            conj = "IF " if j == 0 else "AND"
            lines.append(f"  {conj} {name} is core [{core[0]:.4f}, "
                         f"{core[1]:.4f}] support [{supp[0]:.4f}, "
                         f"{supp[1]:.4f}] w={rule.weights[j]:.4f}")
        lines.append(f"  THEN class is {rule.label}")
    return "\n".join(lines) + ("\n" if lines else "")
