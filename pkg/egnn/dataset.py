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
Everything that touches files on the way into the classifier: the
recording manifest, the per-recording sample CSVs and the feature
matrix CSV shared by the extract, rank, run and sweep verbs.
"""

import dataclasses
import json
import logging
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from egnn.error import DataError
from egnn.features import (CHANNELS, DEFAULT_BANDS, Band, FeatureInfo,
                           Recording, WindowSpec, extract_recording,
                           feature_layout, parse_feature_name)

log = logging.getLogger(__name__)

DEFAULT_SAMPLE_RATE = 128.0

#
# Weak labels: every game elicits one quadrant of the arousal-valence
# plane, so every window of a recording inherits the game's class.
#
GAME_LABELS = {"G1": 1, "G2": 2, "G3": 3, "G4": 4}
LABEL_NAMES = {1: "bored", 2: "calm", 3: "anger", 4: "happy"}

META_COLUMNS = ("subject", "game", "window", "label")


def game_label(game: str) -> int:
    """
    Map a game id ("G1".."G4", or a bare number) to its class label.
    """
    key = str(game).strip().upper()
    if not key.startswith("G"):
        key = f"G{key}"
    try:
        return GAME_LABELS[key]
    except KeyError as err:
        raise DataError(f"unknown game '{game}'; expected one of "
                        f"{', '.join(GAME_LABELS)}") from err


def label_name(label: int) -> str:
    # pylint: disable=missing-docstring
    return LABEL_NAMES.get(int(label), str(label))


@dataclasses.dataclass(frozen=True)
class ManifestEntry:
    # pylint: disable=missing-docstring

    path: str
    subject: str
    game: str
    label: int
    sample_rate: float


def _manifest_number(value: Any, kind: type, what: str, path: str) -> Any:
    if isinstance(value, bool):
        raise DataError(f"{what} must be a number, got {value!r}", path=path)
    try:
        number = kind(value)
    except (TypeError, ValueError) as err:
        raise DataError(f"{what} must be a number, got {value!r}",
                        path=path) from err
    if kind is int and isinstance(value, float) and value != number:
        raise DataError(f"{what} must be an integer, got {value!r}",
                        path=path)
    return number


def load_manifest(path: str) -> List[ManifestEntry]:
    """
    Read a manifest of the form:

        {"sample_rate": 128,
         "recordings": [{"path": "S01G1.csv", "subject": "S01",
                         "game": "G1", "label": 1}, ...]}

    Paths are relative to the manifest. "label" defaults to the class
    of the game and "sample_rate" to the manifest-wide rate. The order
    of "recordings" is the order of the stream.
    """
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except OSError as err:
        raise DataError(f"cannot read manifest: {err.strerror}",
                        path=path) from err
    except json.JSONDecodeError as err:
        raise DataError(f"malformed manifest: {err.msg}",
                        path=path,
                        row=err.lineno) from err

    if not isinstance(doc, dict) or not isinstance(doc.get("recordings"),
                                                   list):
        raise DataError("manifest must be an object with a 'recordings' list",
                        path=path)
    base = os.path.dirname(os.path.abspath(path))
    rate = _manifest_number(doc.get("sample_rate", DEFAULT_SAMPLE_RATE),
                            float, "sample_rate", path)

    entries = []
    for i, rec in enumerate(doc["recordings"]):
        if not isinstance(rec, dict):
            raise DataError(f"recording {i} is not an object", path=path)
        missing = [k for k in ("path", "subject", "game") if k not in rec]
        if missing:
            raise DataError(f"recording {i} lacks {', '.join(missing)}",
                            path=path)
        if not isinstance(rec["path"], str):
            raise DataError(f"recording {i}: path must be a string",
                            path=path)
        game = str(rec["game"])
        if "label" in rec:
            label = _manifest_number(rec["label"], int,
                                     f"recording {i}: label", path)
        else:
            label = game_label(game)
        entries.append(
            ManifestEntry(path=os.path.join(base, rec["path"]),
                          subject=str(rec["subject"]),
                          game=game,
                          label=label,
                          sample_rate=_manifest_number(
                              rec.get("sample_rate", rate), float,
                              f"recording {i}: sample_rate", path)))
    return entries


def read_table(path: str, what: str) -> pd.DataFrame:
    """
    Read a CSV file with a header row, keeping every cell as text so
    that bad cells can be reported with their row and column. Rows
    shorter than the header come back padded with NaN.
    """
    try:
        return pd.read_csv(path,
                           dtype=str,
                           keep_default_na=False,
                           index_col=False)
    except OSError as err:
        raise DataError(f"cannot read {what}: {err.strerror}",
                        path=path) from err
    except pd.errors.EmptyDataError as err:
        raise DataError(f"empty {what}", path=path) from err
    except pd.errors.ParserError as err:
        raise DataError(f"malformed {what}: {err}", path=path) from err


def format_cell(value: Any) -> str:
    """
    Text of one CSV cell: None is empty and floats keep their shortest
    round-tripping form.
    """
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_table(path: str, columns: Sequence[str],
                rows: Iterable[Sequence[Any]]) -> None:
    """
    Write `rows` under a `columns` header, each cell through
    format_cell.
    """
    pd.DataFrame([[format_cell(v) for v in row] for row in rows],
                 columns=list(columns)).to_csv(path, index=False)


def _cell_problem(cell: Any, integral: bool) -> str:
    if not isinstance(cell, str):
        return "row is too short"
    try:
        value = float(cell)
    except ValueError:
        return f"not {'an integer' if integral else 'a number'}: '{cell}'"
    if not np.isfinite(value):
        return f"non-finite value '{cell}'"
    return f"not an integer: '{cell}'"


def numeric_block(frame: pd.DataFrame,
                  columns: Sequence[str],
                  path: str,
                  integral: bool = False) -> np.ndarray:
    """
    Convert `columns` of a table read by read_table into a float64
    matrix (int64 when `integral`). The first missing, non-numeric,
    non-finite or (when `integral`) fractional cell, in row order, is
    reported as a DataError naming its row and column; row 1 is the
    header.
    """
    cols = list(columns)
    text = frame[cols]
    numbers = text.apply(pd.to_numeric, errors="coerce").to_numpy(
        dtype=np.float64, na_value=np.nan)
    bad = ~np.isfinite(numbers)
    if integral:
        bad |= np.isfinite(numbers) & (np.floor(numbers) != numbers)
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        cell = text.iat[i, j]
        raise DataError(_cell_problem(cell, integral),
                        path=path,
                        row=i + 2,
                        column=cols[j])
    if integral:
        return numbers.astype(np.int64)
    #
    # Parse the text again with float() so that values written by
    # write_features come back bit for bit.
    #
    return np.asarray(text.to_numpy(dtype=object).astype(np.float64))


def load_recording(entry: ManifestEntry,
                   channels: Sequence[str] = CHANNELS) -> Recording:
    """
    Read the samples of `channels` from a CSV whose header names the
    channels. Header matching ignores case and surrounding blanks and
    extra columns are ignored.
    """
    frame = read_table(entry.path, "recording")
    columns = {str(name).strip().upper(): name for name in frame.columns}
    wanted = [c.upper() for c in channels]
    missing = [c for c in wanted if c not in columns]
    if missing:
        raise DataError(f"missing channels: {', '.join(missing)}",
                        path=entry.path)
    if frame.empty:
        raise DataError("recording has no samples", path=entry.path)
    frame = frame.rename(columns={columns[c]: c for c in wanted})
    return Recording(subject=entry.subject,
                     game=entry.game,
                     label=entry.label,
                     sample_rate=entry.sample_rate,
                     channels=tuple(wanted),
                     data=numeric_block(frame, wanted, entry.path))


def write_recording(path: str, channels: Sequence[str],
                    data: np.ndarray) -> None:
    """
    Write one column of samples per channel, the inverse of
    load_recording.
    """
    pd.DataFrame(np.asarray(data, dtype=np.float64),
                 columns=list(channels)).to_csv(path, index=False)


@dataclasses.dataclass
class FeatureMatrix:
    """
    Feature instances in stream order, one row per window, along with
    the recording each row comes from.
    """

    names: List[str]
    X: np.ndarray
    y: np.ndarray
    subjects: List[str]
    games: List[str]
    windows: List[int]

    def __len__(self) -> int:
        return int(self.X.shape[0])

    @property
    def layout(self) -> List[FeatureInfo]:
        # pylint: disable=missing-docstring
        return [parse_feature_name(n) for n in self.names]

    def select(self, columns: Sequence[int]) -> "FeatureMatrix":
        """
        Keep only `columns`, in the order given.
        """
        cols = list(columns)
        return FeatureMatrix(names=[self.names[c] for c in cols],
                             X=self.X[:, cols],
                             y=self.y,
                             subjects=self.subjects,
                             games=self.games,
                             windows=self.windows)

    def channel_columns(self, channel: str) -> List[int]:
        # pylint: disable=missing-docstring
        return [
            i for i, info in enumerate(self.layout)
            if info.channel == channel.upper()
        ]

    @property
    def channels(self) -> List[str]:
        """
        Channels present in the matrix, in column order.
        """
        seen: Dict[str, None] = {}
        for info in self.layout:
            if info.channel is not None:
                seen.setdefault(info.channel)
        return list(seen)

    def class_counts(self) -> Dict[int, int]:
        """
        Instances per class label, in ascending label order.
        """
        labels, counts = np.unique(self.y, return_counts=True)
        return {int(l): int(c) for l, c in zip(labels, counts)}


def extract_manifest(entries: Sequence[ManifestEntry],
                     spec: WindowSpec,
                     channels: Sequence[str] = CHANNELS,
                     bands: Sequence[Band] = DEFAULT_BANDS) -> FeatureMatrix:
    """
    Extract the features of every recording in manifest order.
    """
    blocks, labels, subjects, games, windows = [], [], [], [], []
    for entry in entries:
        recording = load_recording(entry, channels)
        block = extract_recording(recording, spec, bands)
        log.info("%s: %d windows of %gs", os.path.basename(entry.path),
                 block.shape[0], spec.length_seconds)
        blocks.append(block)
        labels.extend([entry.label] * block.shape[0])
        subjects.extend([entry.subject] * block.shape[0])
        games.extend([entry.game] * block.shape[0])
        windows.extend(range(block.shape[0]))
    if not blocks:
        raise DataError("the manifest lists no recordings")
    names = [info.name for info in feature_layout(channels, bands)]
    return FeatureMatrix(names=names,
                         X=np.vstack(blocks),
                         y=np.array(labels, dtype=np.int64),
                         subjects=subjects,
                         games=games,
                         windows=windows)


def write_features(path: str, fm: FeatureMatrix) -> None:
    """
    Write `fm` as CSV. Floats use their shortest round-tripping form,
    so re-running an extraction reproduces the file byte for byte.
    """
    frame = pd.DataFrame(fm.X, columns=fm.names)
    frame.insert(0, "label", np.asarray(fm.y, dtype=np.int64))
    frame.insert(0, "window", np.asarray(fm.windows, dtype=np.int64))
    frame.insert(0, "game", list(fm.games))
    frame.insert(0, "subject", list(fm.subjects))
    frame.to_csv(path, index=False)


def read_features(path: str) -> FeatureMatrix:
    # pylint: disable=missing-docstring
    frame = read_table(path, "feature file")
    header = [str(c) for c in frame.columns]
    if tuple(header[:len(META_COLUMNS)]) != META_COLUMNS:
        raise DataError(f"header must start with {','.join(META_COLUMNS)}",
                        path=path,
                        row=1)
    names = header[len(META_COLUMNS):]
    if not names:
        raise DataError("no feature columns", path=path, row=1)
    if frame.empty:
        raise DataError("feature file has no instances", path=path)
    meta = numeric_block(frame, ["window", "label"], path, integral=True)
    return FeatureMatrix(names=names,
                         X=numeric_block(frame, names, path),
                         y=meta[:, 1],
                         subjects=frame["subject"].tolist(),
                         games=frame["game"].tolist(),
                         windows=[int(w) for w in meta[:, 0]])


def write_manifest(path: str,
                   recordings: Sequence[Dict[str, Any]],
                   sample_rate: Optional[float] = None) -> None:
    """
    Write a manifest for `recordings` (dicts with path, subject, game
    and optionally label), the inverse of load_manifest.
    """
    doc: Dict[str, Any] = {"recordings": list(recordings)}
    if sample_rate is not None:
        doc["sample_rate"] = sample_rate
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
