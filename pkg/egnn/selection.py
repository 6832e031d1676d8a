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
Offline feature ranking by Spearman rank correlation and the
leave-k-features-out schedule swept by the experiments.
"""

import dataclasses
import json
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.stats

from egnn.error import DataError
from egnn.features import FeatureInfo, parse_feature_name


def _standardized_ranks(data: np.ndarray) -> np.ndarray:
    """
    Average ranks of every column, centered and scaled to unit norm.
    Constant columns come out as zeros.
    """
    ranks = scipy.stats.rankdata(data, axis=0)
    ranks = ranks - ranks.mean(axis=0)
    norms = np.sqrt((ranks**2).sum(axis=0))
    return np.divide(ranks,
                     norms,
                     out=np.zeros_like(ranks),
                     where=norms > 0)


def spearman(a: Sequence[float], b: Sequence[float]) -> float:
    """
    Pearson correlation of the average ranks of `a` and `b`, or 0
    when either sequence is constant.
    """
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape or x.size < 2:
        raise DataError("spearman needs two sequences of equal length >= 2")
    z = _standardized_ranks(np.column_stack((x, y)))
    return float(np.clip(z[:, 0] @ z[:, 1], -1.0, 1.0))


@dataclasses.dataclass
class FeatureRanking:
    """
    Features ordered by descending score. `order[0]` is the index of
    the best column of the scored matrix.
    """

    order: List[int]
    scores: np.ndarray
    association: np.ndarray
    features: List[FeatureInfo]
    lam: float = 1.0
    band_sums: Dict[str, float] = dataclasses.field(default_factory=dict)
    hemisphere_sums: Dict[str, float] = dataclasses.field(
        default_factory=dict)

    def __len__(self) -> int:
        return len(self.order)

    def top(self, count: int) -> List[int]:
        """
        Column indices of the `count` best features, ascending.
        """
        return sorted(self.order[:count])

    def to_dict(self) -> Dict[str, Any]:
        # pylint: disable=missing-docstring
        return {
            "lam":
                self.lam,
            "ranking": [{
                "rank": rank + 1,
                "index": idx,
                "feature": self.features[idx].name,
                "score": float(self.scores[idx]),
                "association": float(self.association[idx]),
            } for rank, idx in enumerate(self.order)],
            "band_sums":
                self.band_sums,
            "hemisphere_sums":
                self.hemisphere_sums,
        }

    def write_json(self, path: str) -> None:
        # pylint: disable=missing-docstring
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)
            f.write("\n")

    def write_csv(self, path: str) -> None:
        # pylint: disable=missing-docstring
        infos = [self.features[idx] for idx in self.order]
        pd.DataFrame({
            "rank": np.arange(1, len(infos) + 1),
            "feature": [info.name for info in infos],
            "channel": [info.channel or "" for info in infos],
            "band": [info.band or "" for info in infos],
            "statistic": [info.statistic or "" for info in infos],
            "score": np.asarray(self.scores, dtype=np.float64)[self.order],
        }).to_csv(path, index=False)

    @classmethod
    def read_json(cls, path: str) -> "FeatureRanking":
        """
        Load a ranking written by write_json.
        """
        try:
            with open(path, encoding="utf-8") as f:
                doc = json.load(f)
            entries = sorted(doc["ranking"], key=lambda e: e["index"])
            n = len(entries)
            if [e["index"] for e in entries] != list(range(n)):
                raise DataError("ranking indices are not a permutation",
                                path=path)
            scores = np.array([e["score"] for e in entries])
            assoc = np.array([e["association"] for e in entries])
            features = [parse_feature_name(e["feature"]) for e in entries]
            order = [e["index"] for e in doc["ranking"]]
            return cls(order=order,
                       scores=scores,
                       association=assoc,
                       features=features,
                       lam=float(doc.get("lam", 1.0)),
                       band_sums=dict(doc.get("band_sums", {})),
                       hemisphere_sums=dict(doc.get("hemisphere_sums", {})))
        except OSError as err:
            raise DataError(f"cannot read ranking: {err.strerror}",
                            path=path) from err
        except (KeyError, TypeError, ValueError) as err:
            raise DataError(f"malformed ranking: {err}", path=path) from err


def score_features(X: np.ndarray,
                   y: Sequence[int],
                   lam: float = 1.0,
                   features: Optional[Sequence[FeatureInfo]] = None
                  ) -> FeatureRanking:
    """
    Score every column of `X` by its absolute Spearman correlation
    with the labels minus `lam` times its mean absolute Spearman
    correlation with the other columns, and rank by descending score
    (lower index first on ties).
    """
    data = np.asarray(X, dtype=np.float64)
    labels = np.asarray(y, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] < 2:
        raise DataError("need at least 2 instances to rank features")
    if labels.shape != (data.shape[0],):
        raise DataError(f"got {labels.size} labels for {data.shape[0]} "
                        f"instances")
    n = data.shape[1]
    if features is None:
        features = [FeatureInfo(f"x{j + 1}") for j in range(n)]
    if len(features) != n:
        raise DataError(f"got {len(features)} feature names for {n} columns")

    z = _standardized_ranks(np.column_stack((data, labels)))
    corr = np.abs(np.clip(z.T @ z, -1.0, 1.0))
    association = corr[:n, n]
    if n > 1:
        feat = corr[:n, :n]
        redundancy = (feat.sum(axis=1) - np.diag(feat)) / (n - 1)
    else:
        redundancy = np.zeros(1)
    scores = association - lam * redundancy
    order = np.lexsort((np.arange(n), -scores))

    band_sums: Dict[str, float] = {}
    hemisphere_sums: Dict[str, float] = {}
    for info, value in zip(features, association):
        if info.band is not None:
            band_sums[info.band] = band_sums.get(info.band, 0.0) + float(value)
        if info.hemisphere is not None:
            hemisphere_sums[info.hemisphere] = hemisphere_sums.get(
                info.hemisphere, 0.0) + float(value)

    return FeatureRanking(order=[int(i) for i in order],
                          scores=scores,
                          association=association,
                          features=list(features),
                          lam=lam,
                          band_sums=band_sums,
                          hemisphere_sums=hemisphere_sums)


def leave_k_out_schedule(ranking: FeatureRanking,
                         k: int = 5,
                         min_size: Optional[int] = None
                        ) -> List[Tuple[int, ...]]:
    """
    Nested prefixes of the ranking of sizes n, n-k, n-2k, ... while
    the size stays at or above `min_size`. The default stops at 10
    features, or at n-k when the ranking is shorter than 10+k. The
    full ranking is always the first subset.
    """
    if k < 1:
        raise DataError(f"k must be at least 1, got {k}")
    if min_size is None:
        min_size = min(10, len(ranking) - k)
    floor = max(1, min_size)
    subsets = [tuple(ranking.order)]
    size = len(ranking) - k
    while size >= floor and size > 0:
        subsets.append(tuple(ranking.order[:size]))
        size -= k
    return subsets
