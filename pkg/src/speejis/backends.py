"""Analysis backends: the wire contract, a deterministic acoustic baseline,
and HTTP clients for external emotion and transcription models.

Wire protocol (both endpoints, HTTP POST, JSON body):

    POST {base}/analyze     {"sample_rate": int,
                             "spans": [{"start_s": f, "end_s": f}, ...],
                             "audio_b64": base64 of 16-bit LE mono PCM}
        -> {"results": [{"valence": f, "arousal": f, "dominance": f}, ...]}
           one result per request span, in order, raw scale [0, 1]

    POST {base}/transcribe  same body shape (spans list empty)
        -> {"segments": [{"start_s": f, "end_s": f, "text": str}, ...]}

Raw emotion values map to the canonical scale via x -> 2x - 1.
"""

from __future__ import annotations

import base64
import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import requests

from .audio import AudioClip, features, pcm16_bytes, _span_bounds
from .emotion import VadPoint
from .errors import BackendError, ConfigError, InputError

DEFAULT_TIMEOUT_S = 30.0
DEFAULT_RETRY_COUNT = 1

ANALYZE_PATH = "/analyze"
TRANSCRIBE_PATH = "/transcribe"


@dataclass(frozen=True)
class TranscriptSegment:
    """One timed piece of transcript text."""

    start_s: float
    end_s: float
    text: str

    def __post_init__(self):
        if not (self.start_s < self.end_s):
            raise InputError(f"bad transcript span [{self.start_s}, {self.end_s}]")


@dataclass(frozen=True)
class BackendConfig:
    kind: str  # "baseline" | "external"
    endpoint_url: str | None = None
    timeout_s: float = DEFAULT_TIMEOUT_S
    retry_count: int = DEFAULT_RETRY_COUNT

    def __post_init__(self):
        if self.kind not in ("baseline", "external"):
            raise ConfigError(f"unknown backend kind {self.kind!r}")
        if self.kind == "external" and not self.endpoint_url:
            raise ConfigError("external backend requires endpoint_url")
        if not (self.timeout_s > 0):
            raise ConfigError(f"timeout_s must be positive, got {self.timeout_s}")
        if self.retry_count < 0:
            raise ConfigError(f"retry_count must be >= 0, got {self.retry_count}")


class SerBackend(Protocol):
    """Emotion analysis contract: one VadPoint per requested span, in order.

    The whole-message span is analyzed like any other span; callers must
    request it explicitly rather than averaging chunk results.
    """

    def analyze(self, clip: AudioClip, spans: Sequence) -> list[VadPoint]: ...


# ---------------------------------------------------------------------------
# Deterministic baseline
# ---------------------------------------------------------------------------

def baseline_analyze(clip: AudioClip, span) -> VadPoint:
    """Map acoustic features onto the emotion axes.

    The mapping makes no claim of emotional validity; it exists so the
    whole pipeline runs offline, deterministically: louder reads as more
    aroused, brighter spectrum as more positive, busier signal as more
    dominant.
    """
    f = features(clip, span)
    arousal = (f.rms_dbfs + 40.0) / 15.0 - 1.0
    valence = (f.spectral_centroid_hz - 1500.0) / 1500.0
    dominance = (f.zero_crossings_per_s - 1500.0) / 1500.0
    clamp = lambda v: max(-1.0, min(1.0, v))
    return VadPoint(clamp(valence), clamp(arousal), clamp(dominance))


class BaselineBackend:
    """Built-in deterministic backend; no network, no state."""

    def analyze(self, clip: AudioClip, spans: Sequence) -> list[VadPoint]:
        return [baseline_analyze(clip, span) for span in spans]


# ---------------------------------------------------------------------------
# External HTTP backends
# ---------------------------------------------------------------------------

def _request_body(clip: AudioClip, spans: Sequence) -> dict:
    pairs = [_span_bounds(s) for s in spans]
    return {
        "sample_rate": clip.sample_rate,
        "spans": [{"start_s": a, "end_s": b} for a, b in pairs],
        "audio_b64": base64.b64encode(pcm16_bytes(clip)).decode("ascii"),
    }


def _post(cfg: BackendConfig, path: str, body: dict) -> dict:
    """POST with retries; transport failures and non-JSON replies raise."""
    url = cfg.endpoint_url.rstrip("/") + path
    attempts = cfg.retry_count + 1
    last_exc: Exception | None = None
    for _ in range(attempts):
        try:
            resp = requests.post(url, json=body, timeout=cfg.timeout_s)
        except (requests.Timeout, requests.ConnectionError) as exc:
            last_exc = exc
            continue
        if resp.status_code != 200:
            raise BackendError(f"{url} returned HTTP {resp.status_code}")
        try:
            obj = resp.json()
        except ValueError as exc:
            raise BackendError(f"{url} returned non-JSON body") from exc
        if not isinstance(obj, dict):
            raise BackendError(f"{url} returned non-object JSON")
        return obj
    raise BackendError(f"{url} unreachable after {attempts} attempts: {last_exc}")


def _raw_value(result: dict, key: str, index: int) -> float:
    v = result.get(key)
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(float(v)):
        raise BackendError(f"result {index}: {key} is not a finite number", [index])
    v = float(v)
    if not (0.0 <= v <= 1.0):
        raise BackendError(f"result {index}: {key}={v} outside raw range [0, 1]", [index])
    return v


def external_analyze(cfg: BackendConfig, clip: AudioClip, spans: Sequence) -> list[VadPoint]:
    """Query the external emotion model for every span in one request."""
    obj = _post(cfg, ANALYZE_PATH, _request_body(clip, spans))
    results = obj.get("results")
    if not isinstance(results, list):
        raise BackendError("response missing 'results' list")
    if len(results) != len(spans):
        raise BackendError(
            f"response arity mismatch: {len(results)} results for {len(spans)} spans",
            range(len(spans)),
        )
    points = []
    for i, result in enumerate(results):
        if not isinstance(result, dict):
            raise BackendError(f"result {i} is not an object", [i])
        v = _raw_value(result, "valence", i)
        a = _raw_value(result, "arousal", i)
        d = _raw_value(result, "dominance", i)
        points.append(VadPoint(2.0 * v - 1.0, 2.0 * a - 1.0, 2.0 * d - 1.0))
    return points


def external_transcribe(cfg: BackendConfig, clip: AudioClip) -> list[TranscriptSegment]:
    """Query the external transcription model; empty transcript is valid."""
    obj = _post(cfg, TRANSCRIBE_PATH, _request_body(clip, []))
    segments = obj.get("segments")
    if not isinstance(segments, list):
        raise BackendError("response missing 'segments' list")
    out: list[TranscriptSegment] = []
    prev_end = -math.inf
    for i, seg in enumerate(segments):
        if not isinstance(seg, dict):
            raise BackendError(f"segment {i} is not an object")
        try:
            start = float(seg["start_s"])
            end = float(seg["end_s"])
            text = seg["text"]
        except (KeyError, TypeError, ValueError) as exc:
            raise BackendError(f"segment {i} malformed: {exc}") from exc
        if not isinstance(text, str):
            raise BackendError(f"segment {i}: text is not a string")
        if not (math.isfinite(start) and math.isfinite(end)) or end <= start:
            raise BackendError(f"segment {i}: bad span [{start}, {end}]")
        if start < prev_end - 1e-9:
            raise BackendError(f"segment {i} overlaps the previous segment")
        prev_end = end
        out.append(TranscriptSegment(start, end, text))
    return out


class ExternalSerBackend:
    def __init__(self, cfg: BackendConfig):
        self.cfg = cfg

    def analyze(self, clip: AudioClip, spans: Sequence) -> list[VadPoint]:
        return external_analyze(self.cfg, clip, spans)


class ExternalTranscriber:
    def __init__(self, cfg: BackendConfig):
        self.cfg = cfg

    def transcribe(self, clip: AudioClip) -> list[TranscriptSegment]:
        return external_transcribe(self.cfg, clip)


# ---------------------------------------------------------------------------
# Transcript alignment
# ---------------------------------------------------------------------------

def align(anchors: Sequence, transcript: Sequence[TranscriptSegment]) -> list[str]:
    """Text for each anchor span: the in-order join of transcript segments
    whose overlap with the anchor is strictly positive (touching at a
    boundary does not count)."""
    out = []
    for anchor in anchors:
        start, end = _span_bounds(anchor)
        parts = [
            seg.text
            for seg in transcript
            if min(end, seg.end_s) - max(start, seg.start_s) > 0.0
        ]
        out.append(" ".join(parts))
    return out
