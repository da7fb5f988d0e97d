"""The augmentation descriptor: the immutable, machine-readable record of
everything computed for one voice message, plus its canonical JSON form.

Canonical serialization rules (shared by the CLI, the service, and tests):
fixed key order as listed in FIELD_ORDER, reals as 6-decimal fixed point,
emoji glyphs as raw UTF-8. Values are quantized to the same 6-decimal grid
when the descriptor is built, so serialize(parse(serialize(d))) is
byte-identical to serialize(d).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .audio import ChunkSpan, WaveBar
from .backends import TranscriptSegment
from .emotion import BarColor, EmojiEntry, VadPoint
from .errors import SchemaError

STATUS_DONE = "done"
STATUS_FAILED = "augmentation_failed"

GENERATED_BY = "ai"

FIELD_ORDER = (
    "message_id",
    "engine_version",
    "generated_by",
    "status",
    "duration_s",
    "ending_span",
    "overall",
    "ending",
    "overall_emoji",
    "ending_emoji",
    "chunks",
    "bars",
    "interest_segments",
    "transcript",
)


def q6(x: float) -> float:
    """Quantize to the 6-decimal serialization grid."""
    return round(float(x), 6)


@dataclass(frozen=True)
class AlignedSegment:
    """Interest segment as stored in the descriptor, with aligned text."""

    start_s: float
    end_s: float
    centroid: VadPoint
    emoji: EmojiEntry
    text: str = ""


@dataclass(frozen=True)
class AugmentationDescriptor:
    message_id: str
    duration_s: float
    status: str
    engine_version: str
    chunks: tuple[tuple[ChunkSpan, VadPoint], ...]
    overall: VadPoint | None
    ending_span: tuple[float, float]
    ending: VadPoint | None
    overall_emoji: EmojiEntry | None
    ending_emoji: EmojiEntry | None
    bars: tuple[WaveBar, ...]
    interest_segments: tuple[AlignedSegment, ...]
    transcript: tuple[TranscriptSegment, ...]
    generated_by: str = GENERATED_BY

    def __post_init__(self):
        if self.status not in (STATUS_DONE, STATUS_FAILED):
            raise ValueError(f"bad descriptor status {self.status!r}")
        if self.generated_by != GENERATED_BY:
            raise ValueError("descriptor attribution must be the fixed literal 'ai'")
        if self.status == STATUS_DONE:
            if self.overall is None or self.ending is None:
                raise ValueError("done descriptor requires overall and ending points")
            if self.overall_emoji is None or self.ending_emoji is None:
                raise ValueError("done descriptor requires both headline emojis")


# ---------------------------------------------------------------------------
# Canonical JSON writer
# ---------------------------------------------------------------------------

def _canon(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value == 0.0:
            value = 0.0  # normalize -0.0
        return f"{value:.6f}"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_canon(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_canon(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def canonical_json(obj: Any) -> str:
    """Render any JSON-able structure in the canonical form."""
    return _canon(obj)


def _vad_obj(p: VadPoint | None) -> dict | None:
    if p is None:
        return None
    return {"valence": p.valence, "arousal": p.arousal, "dominance": p.dominance}


def _emoji_obj(e: EmojiEntry | None) -> dict | None:
    if e is None:
        return None
    return {"glyph": e.glyph, "valence": e.valence, "arousal": e.arousal, "label": e.label}


def _color_obj(c: BarColor | None) -> dict:
    if c is None:
        c = BarColor(0.0, 0.0, 70.0, neutral=True)
    return {
        "hue": c.hue,
        "saturation": c.saturation,
        "lightness": c.lightness,
        "neutral": c.neutral,
    }


def to_obj(d: AugmentationDescriptor) -> dict:
    """Descriptor as a plain dict in canonical field order."""
    return {
        "message_id": d.message_id,
        "engine_version": d.engine_version,
        "generated_by": d.generated_by,
        "status": d.status,
        "duration_s": d.duration_s,
        "ending_span": {"start_s": d.ending_span[0], "end_s": d.ending_span[1]},
        "overall": _vad_obj(d.overall),
        "ending": _vad_obj(d.ending),
        "overall_emoji": _emoji_obj(d.overall_emoji),
        "ending_emoji": _emoji_obj(d.ending_emoji),
        "chunks": [
            {
                "span": {"start_s": span.start_s, "end_s": span.end_s, "index": span.index},
                "vad": _vad_obj(p),
            }
            for span, p in d.chunks
        ],
        "bars": [
            {
                "start_s": b.start_s,
                "end_s": b.end_s,
                "height": b.height,
                "color": _color_obj(b.color),
            }
            for b in d.bars
        ],
        "interest_segments": [
            {
                "start_s": s.start_s,
                "end_s": s.end_s,
                "centroid": _vad_obj(s.centroid),
                "emoji": _emoji_obj(s.emoji),
                "text": s.text,
            }
            for s in d.interest_segments
        ],
        "transcript": [
            {"start_s": t.start_s, "end_s": t.end_s, "text": t.text} for t in d.transcript
        ],
    }


def serialize_descriptor(d: AugmentationDescriptor) -> str:
    return canonical_json(to_obj(d))


# ---------------------------------------------------------------------------
# Validation and parsing
# ---------------------------------------------------------------------------

def _fail(path: str, reason: str):
    raise SchemaError(path, reason)


def _need(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        _fail(f"{path}/{key}", "missing required field")
    return obj[key]


def _check_real(value: Any, path: str, lo: float | None = None, hi: float | None = None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, "expected a number")
    v = float(value)
    if not math.isfinite(v):
        _fail(path, "number must be finite")
    if lo is not None and v < lo - 1e-9:
        _fail(path, f"must be >= {lo}")
    if hi is not None and v > hi + 1e-9:
        _fail(path, f"must be <= {hi}")
    return v


def _check_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        _fail(path, "expected a string")
    return value


def _check_vad(value: Any, path: str, allow_null: bool) -> VadPoint | None:
    if value is None:
        if allow_null:
            return None
        _fail(path, "must not be null")
    if not isinstance(value, dict):
        _fail(path, "expected an object")
    v = _check_real(_need(value, "valence", path), f"{path}/valence", -1.0, 1.0)
    a = _check_real(_need(value, "arousal", path), f"{path}/arousal", -1.0, 1.0)
    d = _check_real(_need(value, "dominance", path), f"{path}/dominance", -1.0, 1.0)
    return VadPoint(v, a, d)


def _check_emoji(value: Any, path: str, allow_null: bool) -> EmojiEntry | None:
    if value is None:
        if allow_null:
            return None
        _fail(path, "must not be null")
    if not isinstance(value, dict):
        _fail(path, "expected an object")
    glyph = _check_str(_need(value, "glyph", path), f"{path}/glyph")
    if not glyph:
        _fail(f"{path}/glyph", "must be non-empty")
    v = _check_real(_need(value, "valence", path), f"{path}/valence", -1.0, 1.0)
    a = _check_real(_need(value, "arousal", path), f"{path}/arousal", -1.0, 1.0)
    label = _check_str(value.get("label", ""), f"{path}/label")
    return EmojiEntry(glyph=glyph, valence=v, arousal=a, label=label)


def parse_descriptor(source: str | dict) -> AugmentationDescriptor:
    """Validate and parse canonical descriptor JSON.

    Raises SchemaError naming the first failing path (fields are checked in
    FIELD_ORDER, so a missing `bars` reports exactly `/bars`).
    """
    if isinstance(source, str):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SchemaError("/", f"invalid JSON: {exc}") from exc
    else:
        obj = source
    if not isinstance(obj, dict):
        _fail("/", "descriptor must be a JSON object")

    for key in FIELD_ORDER:
        if key not in obj:
            _fail(f"/{key}", "missing required field")

    message_id = _check_str(obj["message_id"], "/message_id")
    engine_version = _check_str(obj["engine_version"], "/engine_version")
    generated_by = _check_str(obj["generated_by"], "/generated_by")
    if generated_by != GENERATED_BY:
        _fail("/generated_by", f"must be the literal {GENERATED_BY!r}")
    status = _check_str(obj["status"], "/status")
    if status not in (STATUS_DONE, STATUS_FAILED):
        _fail("/status", f"must be '{STATUS_DONE}' or '{STATUS_FAILED}'")
    duration_s = _check_real(obj["duration_s"], "/duration_s")
    if duration_s <= 0:
        _fail("/duration_s", "must be positive")

    es = obj["ending_span"]
    if not isinstance(es, dict):
        _fail("/ending_span", "expected an object")
    es_start = _check_real(_need(es, "start_s", "/ending_span"), "/ending_span/start_s", 0.0)
    es_end = _check_real(_need(es, "end_s", "/ending_span"), "/ending_span/end_s")
    if es_end <= es_start:
        _fail("/ending_span/end_s", "must be greater than start_s")

    overall = _check_vad(obj["overall"], "/overall", allow_null=True)
    ending = _check_vad(obj["ending"], "/ending", allow_null=True)
    overall_emoji = _check_emoji(obj["overall_emoji"], "/overall_emoji", allow_null=True)
    ending_emoji = _check_emoji(obj["ending_emoji"], "/ending_emoji", allow_null=True)

    if status == STATUS_DONE:
        if overall is None:
            _fail("/overall", "required when status is done")
        if ending is None:
            _fail("/ending", "required when status is done")
        if overall_emoji is None:
            _fail("/overall_emoji", "required when status is done")
        if ending_emoji is None:
            _fail("/ending_emoji", "required when status is done")

    raw_chunks = obj["chunks"]
    if not isinstance(raw_chunks, list):
        _fail("/chunks", "expected an array")
    chunks = []
    for i, item in enumerate(raw_chunks):
        path = f"/chunks/{i}"
        if not isinstance(item, dict):
            _fail(path, "expected an object")
        span = _need(item, "span", path)
        if not isinstance(span, dict):
            _fail(f"{path}/span", "expected an object")
        start = _check_real(_need(span, "start_s", f"{path}/span"), f"{path}/span/start_s", 0.0)
        end = _check_real(_need(span, "end_s", f"{path}/span"), f"{path}/span/end_s")
        if end <= start:
            _fail(f"{path}/span/end_s", "must be greater than start_s")
        index = span.get("index")
        if isinstance(index, bool) or not isinstance(index, int):
            _fail(f"{path}/span/index", "expected an integer")
        vad = _check_vad(_need(item, "vad", path), f"{path}/vad", allow_null=False)
        chunks.append((ChunkSpan(start, end, index), vad))

    raw_bars = obj["bars"]
    if not isinstance(raw_bars, list):
        _fail("/bars", "expected an array")
    bars = []
    for i, item in enumerate(raw_bars):
        path = f"/bars/{i}"
        if not isinstance(item, dict):
            _fail(path, "expected an object")
        start = _check_real(_need(item, "start_s", path), f"{path}/start_s", 0.0)
        end = _check_real(_need(item, "end_s", path), f"{path}/end_s")
        if end <= start:
            _fail(f"{path}/end_s", "must be greater than start_s")
        height = _check_real(_need(item, "height", path), f"{path}/height", 0.05, 1.0)
        c = _need(item, "color", path)
        if not isinstance(c, dict):
            _fail(f"{path}/color", "expected an object")
        hue = _check_real(_need(c, "hue", f"{path}/color"), f"{path}/color/hue", 0.0, 360.0)
        sat = _check_real(
            _need(c, "saturation", f"{path}/color"), f"{path}/color/saturation", 0.0, 100.0
        )
        light = _check_real(
            _need(c, "lightness", f"{path}/color"), f"{path}/color/lightness", 0.0, 100.0
        )
        neutral = _need(c, "neutral", f"{path}/color")
        if not isinstance(neutral, bool):
            _fail(f"{path}/color/neutral", "expected a boolean")
        bars.append(
            WaveBar(
                start_s=start,
                end_s=end,
                height=height,
                color=BarColor(min(hue, 359.999999), sat, light, neutral),
            )
        )

    raw_segments = obj["interest_segments"]
    if not isinstance(raw_segments, list):
        _fail("/interest_segments", "expected an array")
    segments = []
    for i, item in enumerate(raw_segments):
        path = f"/interest_segments/{i}"
        if not isinstance(item, dict):
            _fail(path, "expected an object")
        start = _check_real(_need(item, "start_s", path), f"{path}/start_s", 0.0)
        end = _check_real(_need(item, "end_s", path), f"{path}/end_s")
        if end <= start:
            _fail(f"{path}/end_s", "must be greater than start_s")
        centroid = _check_vad(_need(item, "centroid", path), f"{path}/centroid", allow_null=False)
        emoji = _check_emoji(_need(item, "emoji", path), f"{path}/emoji", allow_null=False)
        text = _check_str(_need(item, "text", path), f"{path}/text")
        segments.append(AlignedSegment(start, end, centroid, emoji, text))

    raw_transcript = obj["transcript"]
    if not isinstance(raw_transcript, list):
        _fail("/transcript", "expected an array")
    transcript = []
    for i, item in enumerate(raw_transcript):
        path = f"/transcript/{i}"
        if not isinstance(item, dict):
            _fail(path, "expected an object")
        start = _check_real(_need(item, "start_s", path), f"{path}/start_s")
        end = _check_real(_need(item, "end_s", path), f"{path}/end_s")
        if end <= start:
            _fail(f"{path}/end_s", "must be greater than start_s")
        text = _check_str(_need(item, "text", path), f"{path}/text")
        transcript.append(TranscriptSegment(start, end, text))

    return AugmentationDescriptor(
        message_id=message_id,
        duration_s=duration_s,
        status=status,
        engine_version=engine_version,
        generated_by=generated_by,
        chunks=tuple(chunks),
        overall=overall,
        ending_span=(es_start, es_end),
        ending=ending,
        overall_emoji=overall_emoji,
        ending_emoji=ending_emoji,
        bars=tuple(bars),
        interest_segments=tuple(segments),
        transcript=tuple(transcript),
    )
