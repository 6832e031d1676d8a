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
This module contains the "egnn.Granule" class: an n-dimensional
double-boundary hyper-box with one weight per feature and a class
label, together with the geometry it needs to be created, compared
against an instance, grown toward an instance and contracted.

Per feature j the box is stored as one row of the (n, 4) `bounds`
array holding, in ascending order, the outer lower bound, the inner
lower bound, the inner upper bound and the outer upper bound.
"""

from typing import Any, Dict, Optional, Tuple

import numpy as np

from egnn.error import InstanceError

#
# Column indices into Granule.bounds.
#
OUTER_LO, INNER_LO, INNER_HI, OUTER_HI = 0, 1, 2, 3


def check_instance(x: Any, n_features: Optional[int] = None) -> np.ndarray:
    """
    Return `x` as a 1-d float array after verifying that it lies
    in the unit n-cube.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InstanceError(f"expected a non-empty vector, got shape "
                            f"{arr.shape}")
    if n_features is not None and arr.size != n_features:
        raise InstanceError(
            f"expected {n_features} features, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise InstanceError(f"feature {bad} is not finite")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        bad = int(np.flatnonzero((arr < 0.0) | (arr > 1.0))[0])
        raise InstanceError(
            f"feature {bad} is {arr[bad]!r}, outside of [0, 1]")
    return arr


def similarity(bounds: np.ndarray, x: np.ndarray) -> np.ndarray:
    """
    Evaluate the per-feature similarity between instance `x` (shape
    (n,)) and one or more granules (`bounds` of shape (..., n, 4)).

    The similarity is one minus the mean distance of `x` to the four
    bounds, relative to the span covered by the box and the instance
    together. An instance sitting exactly on a pointwise granule has
    similarity 1.
    """
    num = np.abs(bounds - x[..., np.newaxis]).sum(axis=-1)
    hi = np.maximum(bounds[..., OUTER_HI], x)
    lo = np.minimum(bounds[..., OUTER_LO], x)
    den = 4.0 * (hi - lo)
    ratio = np.divide(num, den, out=np.zeros_like(num), where=den > 0.0)
    return np.clip(1.0 - ratio, 0.0, 1.0)


class Granule:
    """
    One information granule of the network: a nested pair of boxes
    (core and support) per feature, per-feature synaptic weights,
    the class it stands for and the bookkeeping the learning
    algorithm needs (hit/miss counters and timestamps).
    """

    __slots__ = ("bounds", "weights", "label", "right_count", "wrong_count",
                 "last_win_step", "created_step")

    def __init__(self,
                 bounds: np.ndarray,
                 weights: np.ndarray,
                 label: int,
                 created_step: int = 0,
                 last_win_step: Optional[int] = None,
                 right_count: int = 0,
                 wrong_count: int = 0) -> None:
        self.bounds = np.array(bounds, dtype=np.float64)
        self.weights = np.array(weights, dtype=np.float64)
        assert self.bounds.ndim == 2 and self.bounds.shape[1] == 4
        assert self.weights.shape == (self.bounds.shape[0],)
        self.label = int(label)
        self.created_step = int(created_step)
        self.last_win_step = int(
            created_step if last_win_step is None else last_win_step)
        self.right_count = int(right_count)
        self.wrong_count = int(wrong_count)

    @property
    def n_features(self) -> int:
        # pylint: disable=missing-docstring
        return int(self.bounds.shape[0])

    def copy(self) -> "Granule":
        # pylint: disable=missing-docstring
        return Granule(self.bounds, self.weights, self.label,
                       self.created_step, self.last_win_step,
                       self.right_count, self.wrong_count)

    #
    # Per-axis geometry.
    #
    def midpoint(self, j: int) -> float:
        # pylint: disable=missing-docstring
        return float(
            (self.bounds[j, INNER_LO] + self.bounds[j, INNER_HI]) / 2.0)

    def width(self, j: int) -> float:
        # pylint: disable=missing-docstring
        return float(self.bounds[j, OUTER_HI] - self.bounds[j, OUTER_LO])

    def core(self, j: int) -> Tuple[float, float]:
        # pylint: disable=missing-docstring
        return (float(self.bounds[j, INNER_LO]),
                float(self.bounds[j, INNER_HI]))

    def support(self, j: int) -> Tuple[float, float]:
        # pylint: disable=missing-docstring
        return (float(self.bounds[j, OUTER_LO]),
                float(self.bounds[j, OUTER_HI]))

    def expansion_region(self, j: int, rho: float) -> Tuple[float, float]:
        """
        Return the interval [mp - rho/2, mp + rho/2] into which the
        granule may grow along feature j. It may stick out of [0, 1].
        """
        mp = self.midpoint(j)
        return (mp - rho / 2.0, mp + rho / 2.0)

    #
    # Vectorized geometry over all features.
    #
    def midpoints(self) -> np.ndarray:
        # pylint: disable=missing-docstring
        return np.asarray(
            (self.bounds[:, INNER_LO] + self.bounds[:, INNER_HI]) / 2.0)

    def widths(self) -> np.ndarray:
        # pylint: disable=missing-docstring
        return np.asarray(self.bounds[:, OUTER_HI] - self.bounds[:, OUTER_LO])

    def is_degenerate(self) -> bool:
        """
        True if the support has zero width on some feature. Such a
        granule has zero similarity to every instance that differs
        from it on that feature.
        """
        return bool(np.any(self.widths() <= 0.0))

    def covers_expansion(self, x: np.ndarray, rho: float) -> bool:
        """
        True iff `x` falls inside the expansion region on every feature.
        """
        mp = self.midpoints()
        half = rho / 2.0
        return bool(np.all((x >= mp - half) & (x <= mp + half)))

    def feature_similarity(self, x: np.ndarray) -> np.ndarray:
        # pylint: disable=missing-docstring
        return similarity(self.bounds, x)

    def adapt(self, x: np.ndarray, rho: float) -> "Granule":
        """
        Grow the granule toward `x`, feature by feature, and then
        contract the support so that it fits within rho around the
        new midpoint. Features on which `x` lies outside the expansion
        region are left untouched. Returns the granule itself.
        """
        lo, ilo, ihi, hi = (self.bounds[:, OUTER_LO], self.bounds[:, INNER_LO],
                            self.bounds[:, INNER_HI], self.bounds[:, OUTER_HI])
        mp = (ilo + ihi) / 2.0
        half = rho / 2.0

        #
        # The four cases are tested in order on half-open intervals so
        # that a value on a shared endpoint goes to the earliest case.
        #
        grow_lo = (x >= mp - half) & (x < lo)
        below = ~grow_lo & (x >= lo) & (x < mp)
        above = ~grow_lo & ~below & (x >= mp) & (x <= hi)
        grow_hi = ~grow_lo & ~below & ~above & (x > hi) & (x <= mp + half)

        new_lo = np.where(grow_lo, x, lo)
        new_ilo = np.where(below, x, np.where(above, mp, ilo))
        new_ihi = np.where(below, mp, np.where(above, x, ihi))
        new_hi = np.where(grow_hi, x, hi)

        self.bounds = np.column_stack((new_lo, new_ilo, new_ihi, new_hi))
        return self.enforce_max_width(rho)

    def enforce_max_width(self, rho: float) -> "Granule":
        """
        Contract the support to [mp - rho/2, mp + rho/2] where it is
        wider and clamp the core back inside the support.
        """
        mp = self.midpoints()
        half = rho / 2.0
        lo = np.maximum(self.bounds[:, OUTER_LO], mp - half)
        hi = np.minimum(self.bounds[:, OUTER_HI], mp + half)
        ilo = np.clip(self.bounds[:, INNER_LO], lo, hi)
        ihi = np.clip(self.bounds[:, INNER_HI], lo, hi)
        self.bounds = np.column_stack((lo, ilo, ihi, hi))
        return self

    def to_dict(self) -> Dict[str, Any]:
        # pylint: disable=missing-docstring
        return {
            "bounds": self.bounds.tolist(),
            "weights": self.weights.tolist(),
            "label": self.label,
            "right_count": self.right_count,
            "wrong_count": self.wrong_count,
            "last_win_step": self.last_win_step,
            "created_step": self.created_step,
        }

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "Granule":
        # pylint: disable=missing-docstring
        return cls(np.asarray(obj["bounds"], dtype=np.float64),
                   np.asarray(obj["weights"], dtype=np.float64),
                   obj["label"],
                   created_step=obj["created_step"],
                   last_win_step=obj["last_win_step"],
                   right_count=obj["right_count"],
                   wrong_count=obj["wrong_count"])

    def __repr__(self) -> str:
        return (f"Granule(label={self.label}, n={self.n_features}, "
                f"created={self.created_step}, "
                f"last_win={self.last_win_step})")


def new_pointwise(x: Any, label: int, step: int) -> Granule:
    """
    Create a granule whose four bounds coincide with `x` on every
    feature, with all weights set to 1.
    """
    arr = check_instance(x)
    bounds = np.repeat(arr[:, np.newaxis], 4, axis=1)
    return Granule(bounds, np.ones_like(arr), label, created_step=step)
