"""Audio decoding, canonicalization, chunking, waveform bars, and features.

The canonical in-memory format is 16 kHz mono float64 in [-1, 1]. Decoding
accepts RIFF/WAVE with 16-bit PCM or 32-bit float payloads, 1-2 channels,
any common rate; everything else is a decode error. All functions here are
pure and deterministic: identical bytes in, identical values out.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DecodeError, InputError

CANONICAL_RATE = 16000
DEFAULT_CHUNK_S = 0.5
MAX_DURATION_S = 300.0

# Waveform rendering: 0.1 s bars, capped at 120 for long messages.
BAR_S = 0.1
MAX_BARS = 120
HEIGHT_FLOOR = 0.05

_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class AudioClip:
    """Immutable mono clip; samples are clamped to [-1, 1] on construction."""

    samples: np.ndarray
    sample_rate: int = CANONICAL_RATE

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise InputError("clip must be a non-empty 1-D sample array")
        if self.sample_rate <= 0:
            raise InputError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(arr)):
            raise InputError("clip samples must be finite")
        arr = np.clip(arr, -1.0, 1.0)
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate


@dataclass(frozen=True)
class ChunkSpan:
    """One analysis window; spans of a message are contiguous and exhaustive."""

    start_s: float
    end_s: float
    index: int

    def __post_init__(self):
        if not (0.0 <= self.start_s < self.end_s):
            raise InputError(f"bad chunk span [{self.start_s}, {self.end_s}]")


@dataclass(frozen=True)
class WaveBar:
    """One waveform bar; color is attached later by the pipeline."""

    start_s: float
    end_s: float
    height: float
    color: object | None = None  # BarColor once the pipeline has emotion data


@dataclass(frozen=True)
class AcousticFeatures:
    rms_dbfs: float
    spectral_centroid_hz: float
    zero_crossings_per_s: float


def _span_bounds(span) -> tuple[float, float]:
    """Accept a ChunkSpan-like object or a (start_s, end_s) pair."""
    if hasattr(span, "start_s"):
        return float(span.start_s), float(span.end_s)
    start, end = span
    return float(start), float(end)


# ---------------------------------------------------------------------------
# WAV decode / encode
# ---------------------------------------------------------------------------

def decode_wav(data: bytes) -> AudioClip:
    """Decode RIFF/WAVE bytes into the canonical 16 kHz mono clip.

    Stereo is downmixed by channel average; non-canonical rates are
    resampled by linear interpolation (deterministic, dependency-free).
    """
    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise DecodeError("not a RIFF/WAVE file")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        cid = data[pos : pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + size]
        if cid == b"fmt " and fmt is None:
            if len(body) < 16:
                raise DecodeError("truncated fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data" and payload is None:
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt is None:
        raise DecodeError("missing fmt chunk")
    if payload is None:
        raise DecodeError("missing data chunk")
    if len(payload) == 0:
        raise DecodeError("empty data chunk")

    audio_format, channels, rate, _byte_rate, _block_align, bits = fmt
    if channels not in (1, 2):
        raise DecodeError(f"unsupported channel count {channels}")
    if rate <= 0:
        raise DecodeError(f"bad sample rate {rate}")

    if audio_format == 1 and bits == 16:
        raw = np.frombuffer(payload[: len(payload) - len(payload) % (2 * channels)], dtype="<i2")
        samples = raw.astype(np.float64) / 32768.0
    elif audio_format == 3 and bits == 32:
        raw = np.frombuffer(payload[: len(payload) - len(payload) % (4 * channels)], dtype="<f4")
        samples = raw.astype(np.float64)
    else:
        raise DecodeError(f"unsupported codec (format={audio_format}, bits={bits})")

    if samples.size == 0:
        raise DecodeError("empty data chunk")
    if channels == 2:
        samples = samples[: samples.size - samples.size % 2].reshape(-1, 2).mean(axis=1)

    if rate != CANONICAL_RATE:
        n_out = max(1, round(samples.size * CANONICAL_RATE / rate))
        positions = np.arange(n_out, dtype=np.float64) * (rate / CANONICAL_RATE)
        samples = np.interp(positions, np.arange(samples.size, dtype=np.float64), samples)

    return AudioClip(samples=np.clip(samples, -1.0, 1.0), sample_rate=CANONICAL_RATE)


def pcm16_bytes(clip: AudioClip) -> bytes:
    """Canonical little-endian 16-bit quantization of the clip samples."""
    q = np.clip(np.rint(clip.samples * 32768.0), -32768, 32767).astype("<i2")
    return q.tobytes()


def encode_wav(clip: AudioClip) -> bytes:
    """Canonical WAV bytes: 16 kHz mono PCM16, minimal RIFF header."""
    pcm = pcm16_bytes(clip)
    rate = clip.sample_rate
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(pcm), b"WAVE",
        b"fmt ", 16, 1, 1, rate, rate * 2, 2, 16,
        b"data", len(pcm),
    )
    return header + pcm


# ---------------------------------------------------------------------------
# Chunking
# ---------------------------------------------------------------------------

def chunk_spans(duration_s: float, chunk_s: float = DEFAULT_CHUNK_S) -> list[ChunkSpan]:
    """Partition [0, duration] into analysis chunks.

    Interior chunks are exactly chunk_s long. A trailing remainder shorter
    than chunk_s/2 merges into the previous chunk (the emotion backend gets
    no fragment shorter than half a chunk); a message shorter than one chunk
    becomes a single span.
    """
    if not (duration_s > 0.0) or not math.isfinite(duration_s):
        raise InputError(f"duration_s must be positive, got {duration_s}")
    if not (chunk_s > 0.0):
        raise InputError(f"chunk_s must be positive, got {chunk_s}")

    n_full = int(duration_s / chunk_s + _EPS)
    if n_full == 0:
        return [ChunkSpan(0.0, duration_s, 0)]

    remainder = duration_s - n_full * chunk_s
    spans = [ChunkSpan(i * chunk_s, (i + 1) * chunk_s, i) for i in range(n_full)]
    if remainder <= _EPS:
        # exact fit; pin the last end to the true duration
        last = spans[-1]
        spans[-1] = ChunkSpan(last.start_s, duration_s, last.index)
    elif remainder < chunk_s / 2.0:
        last = spans[-1]
        spans[-1] = ChunkSpan(last.start_s, duration_s, last.index)
    else:
        spans.append(ChunkSpan(n_full * chunk_s, duration_s, n_full))
    return spans


# ---------------------------------------------------------------------------
# Waveform bars
# ---------------------------------------------------------------------------

def wave_bars(clip: AudioClip) -> list[WaveBar]:
    """Peak-normalized amplitude bars.

    0.1 s per bar up to 120 bars; longer clips stretch the bar duration so
    the count stays at 120. Heights are per-bar peak over message peak with
    a 0.05 floor; a silent message sits entirely on the floor.
    """
    duration = clip.duration_s
    n_samples = len(clip.samples)
    if duration <= MAX_BARS * BAR_S + _EPS:
        bar_s = BAR_S
        count = max(1, math.ceil(duration / bar_s - _EPS))
    else:
        bar_s = duration / MAX_BARS
        count = MAX_BARS

    edges = [min(n_samples, round(i * bar_s * clip.sample_rate)) for i in range(count)]
    edges.append(n_samples)

    abs_samples = np.abs(clip.samples)
    global_peak = float(abs_samples.max())

    bars: list[WaveBar] = []
    for i in range(count):
        lo, hi = edges[i], edges[i + 1]
        peak = float(abs_samples[lo:hi].max()) if hi > lo else 0.0
        if global_peak <= 0.0:
            height = HEIGHT_FLOOR
        else:
            # 9-decimal grid swallows last-ulp noise, so peak normalization
            # is exactly invariant under amplitude scaling
            height = max(HEIGHT_FLOOR, round(peak / global_peak, 9))
        start = i * bar_s
        end = duration if i == count - 1 else (i + 1) * bar_s
        bars.append(WaveBar(start_s=start, end_s=end, height=height))
    return bars


# ---------------------------------------------------------------------------
# Acoustic features
# ---------------------------------------------------------------------------

def features(clip: AudioClip, span) -> AcousticFeatures:
    """Deterministic acoustic features of one span of the clip.

    rms_dbfs uses a 1e-9 guard against log(0) and is capped at 0 dBFS;
    the spectral centroid is the magnitude-weighted mean frequency of the
    span's spectrum (rectangular window over the whole span); crossings
    are sign changes per second of span duration.
    """
    start, end = _span_bounds(span)
    duration = clip.duration_s
    if start < -1e-6 or end > duration + 1e-6 or end <= start:
        raise InputError(f"span [{start}, {end}] outside clip of {duration} s")

    i0 = max(0, int(round(start * clip.sample_rate)))
    i1 = min(len(clip.samples), int(round(end * clip.sample_rate)))
    if i1 <= i0:
        i1 = min(len(clip.samples), i0 + 1)
    x = clip.samples[i0:i1]

    rms = float(np.sqrt(np.mean(x * x)))
    rms_dbfs = min(0.0, 20.0 * math.log10(rms + 1e-9))

    mag = np.abs(np.fft.rfft(x))
    total = float(mag.sum())
    if total > 0.0:
        freqs = np.fft.rfftfreq(len(x), 1.0 / clip.sample_rate)
        centroid = float((mag * freqs).sum() / total)
    else:
        centroid = 0.0

    signs = x >= 0.0
    crossings = int(np.count_nonzero(signs[1:] != signs[:-1]))
    zc_per_s = crossings / (end - start)

    return AcousticFeatures(
        rms_dbfs=rms_dbfs,
        spectral_centroid_hz=centroid,
        zero_crossings_per_s=zc_per_s,
    )
