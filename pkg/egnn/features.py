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
Spectral feature extraction from multi-channel EEG recordings:
landmark windowing, the single-sided amplitude spectrum, the
max/mean features of the five classic bands and the online min-max
normalizer that maps instances into the unit cube.
"""

import dataclasses
import re
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from egnn.error import DataError, EmptyBandError, WindowError

#
# Electrode order of the 14-channel headset. The digit encodes the
# hemisphere: odd on the left, even on the right.
#
CHANNELS = ("AF3", "AF4", "F3", "F4", "F7", "F8", "FC5", "FC6", "T7", "T8",
            "P7", "P8", "O1", "O2")

STATISTICS = ("max", "mean")


def hemisphere(channel: str) -> str:
    """
    Return "left", "right" or "midline" for a 10-20 electrode name.
    """
    match = re.search(r"(\d+)$", channel)
    if match is None:
        return "midline"
    return "left" if int(match.group(1)) % 2 == 1 else "right"


@dataclasses.dataclass(frozen=True)
class Band:
    """
    A frequency band [low, high) in Hz, or [low, high] when `closed`.
    """

    name: str
    low: float
    high: float
    closed: bool = False

    def mask(self, freqs: np.ndarray) -> np.ndarray:
        # pylint: disable=missing-docstring
        upper = freqs <= self.high if self.closed else freqs < self.high
        return np.asarray((freqs >= self.low) & upper)


DEFAULT_BANDS: Tuple[Band, ...] = (
    Band("delta", 1.0, 4.0),
    Band("theta", 4.0, 8.0),
    Band("alpha", 8.0, 13.0),
    Band("beta", 13.0, 30.0),
    Band("gamma", 30.0, 64.0, closed=True),
)


@dataclasses.dataclass(frozen=True)
class Recording:
    """
    One subject playing one game: `data` holds one row per sample
    and one column per entry of `channels`.
    """

    subject: str
    game: str
    label: int
    sample_rate: float
    channels: Tuple[str, ...]
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.sample_rate <= 0:
            raise DataError(f"sample rate must be positive, got "
                            f"{self.sample_rate}")
        if self.data.ndim != 2 or self.data.shape[1] != len(self.channels):
            raise DataError(f"expected {len(self.channels)} channels of "
                            f"samples, got an array of shape "
                            f"{self.data.shape}")

    @property
    def n_samples(self) -> int:
        # pylint: disable=missing-docstring
        return int(self.data.shape[0])

    @property
    def duration(self) -> float:
        # pylint: disable=missing-docstring
        return self.n_samples / self.sample_rate


@dataclasses.dataclass(frozen=True)
class WindowSpec:
    """
    Back-to-back, non-overlapping windows of `length_seconds`.
    """

    length_seconds: float

    def __post_init__(self) -> None:
        if not self.length_seconds > 0:
            raise WindowError(
                f"window length must be positive, got {self.length_seconds}")

    def samples(self, sample_rate: float) -> int:
        # pylint: disable=missing-docstring
        count = int(round(self.length_seconds * sample_rate))
        if count < 2:
            raise WindowError(f"{self.length_seconds}s at {sample_rate}Hz "
                              f"gives fewer than 2 samples")
        return count


def segment(recording: Recording, spec: WindowSpec) -> List[np.ndarray]:
    """
    Cut `recording` into floor(duration / length) windows, dropping
    the trailing partial window.
    """
    size = spec.samples(recording.sample_rate)
    if size > recording.n_samples:
        raise WindowError(f"{spec.length_seconds}s window is longer than the "
                          f"{recording.duration:g}s recording of subject "
                          f"{recording.subject}, game {recording.game}")
    count = recording.n_samples // size
    return [recording.data[i * size:(i + 1) * size] for i in range(count)]


def magnitude_spectrum(samples: Any,
                       rate: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Single-sided amplitude spectrum of `samples` (a 1-d signal, or one
    column per channel) after removing the mean. A bin-aligned sine of
    amplitude A shows up as a single bin of height A.
    """
    x = np.asarray(samples, dtype=np.float64)
    n = x.shape[0]
    if n < 2:
        raise WindowError(f"need at least 2 samples, got {n}")
    if not np.all(np.isfinite(x)):
        raise DataError("signal contains non-finite samples")
    x = x - x.mean(axis=0)
    mags = np.abs(np.fft.rfft(x, axis=0)) * (2.0 / n)
    mags[0] /= 2.0
    if n % 2 == 0:
        mags[-1] /= 2.0
    freqs = np.fft.rfftfreq(n, d=1.0 / rate)
    return freqs, mags


def band_features(freqs: np.ndarray,
                  mags: np.ndarray,
                  bands: Sequence[Band] = DEFAULT_BANDS) -> np.ndarray:
    """
    Max and mean magnitude of every band, in band order with the max
    first. For a (bins, channels) spectrum the result has one row per
    channel.
    """
    out = []
    for band in bands:
        mask = band.mask(freqs)
        if not np.any(mask):
            raise EmptyBandError(band.name)
        sub = mags[mask]
        out.append(sub.max(axis=0))
        out.append(sub.mean(axis=0))
    return np.stack(out, axis=-1)


def extract_window_features(
        window: np.ndarray,
        rate: float,
        bands: Sequence[Band] = DEFAULT_BANDS) -> np.ndarray:
    """
    The feature vector of one (samples, channels) window, channel-major.
    """
    freqs, mags = magnitude_spectrum(window, rate)
    if mags.ndim == 1:
        mags = mags[:, np.newaxis]
    return np.asarray(band_features(freqs, mags, bands).ravel())


def extract_recording(recording: Recording,
                      spec: WindowSpec,
                      bands: Sequence[Band] = DEFAULT_BANDS) -> np.ndarray:
    """
    One feature vector per landmark window of `recording`.
    """
    rows = [
        extract_window_features(w, recording.sample_rate, bands)
        for w in segment(recording, spec)
    ]
    return np.vstack(rows)


@dataclasses.dataclass(frozen=True)
class FeatureInfo:
    """
    Where a feature column comes from. Columns whose name does not
    follow the CHANNEL_band_statistic pattern keep None fields.
    """

    name: str
    channel: Optional[str] = None
    band: Optional[str] = None
    statistic: Optional[str] = None

    @property
    def hemisphere(self) -> Optional[str]:
        # pylint: disable=missing-docstring
        return None if self.channel is None else hemisphere(self.channel)


def feature_layout(
        channels: Sequence[str] = CHANNELS,
        bands: Sequence[Band] = DEFAULT_BANDS) -> List[FeatureInfo]:
    # pylint: disable=missing-docstring
    layout = []
    for ch in channels:
        for band in bands:
            for stat in STATISTICS:
                layout.append(
                    FeatureInfo(f"{ch.upper()}_{band.name}_{stat}", ch.upper(),
                                band.name, stat))
    return layout


def parse_feature_name(name: str) -> FeatureInfo:
    # pylint: disable=missing-docstring
    parts = name.split("_")
    if len(parts) == 3 and parts[2] in STATISTICS and parts[0]:
        return FeatureInfo(name, parts[0].upper(), parts[1].lower(), parts[2])
    return FeatureInfo(name)


class Normalizer:
    """
    Expanding per-feature min-max scaler. Every instance first widens
    the observed range and is then mapped into [0, 1]; a feature that
    has only ever shown one value maps to 0.5.
    """

    __slots__ = "lo", "hi"

    def __init__(self) -> None:
        self.lo: Optional[np.ndarray] = None
        self.hi: Optional[np.ndarray] = None

    def update(self, x: np.ndarray) -> None:
        # pylint: disable=missing-docstring
        if self.lo is None or self.hi is None:
            self.lo, self.hi = x.copy(), x.copy()
            return
        self.lo = np.minimum(self.lo, x)
        self.hi = np.maximum(self.hi, x)

    def transform(self, x: np.ndarray) -> np.ndarray:
        # pylint: disable=missing-docstring
        assert self.lo is not None and self.hi is not None
        span = self.hi - self.lo
        scaled = np.divide(x - self.lo,
                           span,
                           out=np.full_like(x, 0.5),
                           where=span > 0)
        return np.clip(scaled, 0.0, 1.0)

    def __call__(self, x: Any) -> np.ndarray:
        arr = np.asarray(x, dtype=np.float64)
        if not np.all(np.isfinite(arr)):
            raise DataError("cannot normalize non-finite features")
        if self.lo is not None and arr.shape != self.lo.shape:
            raise DataError(f"expected {self.lo.size} features, "
                            f"got {arr.size}")
        self.update(arr)
        return self.transform(arr)


def normalize(state: Normalizer, x: Any) -> Tuple[np.ndarray, Normalizer]:
    # pylint: disable=missing-docstring
    return state(x), state
