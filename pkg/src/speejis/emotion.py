"""Continuous emotion space and the mapping models built on top of it.

Everything here is a pure function over immutable values: the valence/
arousal/dominance point, the emoji lookup table, the waveform color ramp,
neutrality detection, and extraction of emotionally interesting segments
from a per-chunk emotion trajectory.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Protocol, Sequence

from .errors import ConfigError, InputError

AXIS_MIN = -1.0
AXIS_MAX = 1.0

DEFAULT_NEUTRAL_TAU = 0.15
DEFAULT_INTEREST_TAU = 0.35

# Segments of interest shorter than this are discarded.
MIN_SEGMENT_S = 0.5

_EPS = 1e-9


def _axis(name: str, value: float) -> float:
    """Validate one emotion-axis value: finite, clamped into [-1, 1]."""
    v = float(value)
    if not math.isfinite(v):
        raise InputError(f"{name} must be finite, got {value!r}")
    return min(AXIS_MAX, max(AXIS_MIN, v))


@dataclass(frozen=True)
class VadPoint:
    """A point in the continuous emotion space on the canonical [-1, 1] scale.

    Construction rejects non-finite values and clamps into range, so a
    VadPoint is always usable downstream without re-validation.
    """

    valence: float
    arousal: float
    dominance: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "valence", _axis("valence", self.valence))
        object.__setattr__(self, "arousal", _axis("arousal", self.arousal))
        object.__setattr__(self, "dominance", _axis("dominance", self.dominance))

    def va_norm(self) -> float:
        """Distance from the neutral origin in the valence/arousal plane."""
        return math.hypot(self.valence, self.arousal)


@dataclass(frozen=True)
class EmojiEntry:
    """One emoji with its valence/arousal coordinates.

    Dominance is deliberately absent: the emoji classification source the
    default table is adapted from labels valence and arousal only.
    """

    glyph: str
    valence: float
    arousal: float
    label: str = ""

    def __post_init__(self):
        if not self.glyph:
            raise ConfigError("emoji glyph must be non-empty")
        for name in ("valence", "arousal"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(float(v)):
                raise ConfigError(f"emoji {self.glyph!r}: {name} must be a finite number")
            if not (AXIS_MIN <= float(v) <= AXIS_MAX):
                raise ConfigError(
                    f"emoji {self.glyph!r}: {name}={v} outside [{AXIS_MIN}, {AXIS_MAX}]"
                )
            object.__setattr__(self, name, float(v))


@dataclass(frozen=True)
class EmojiTable:
    """Ordered emoji lookup table; order breaks nearest-neighbor ties.

    The table is configuration data: the engine never interprets which
    glyphs are present, only their coordinates and order.
    """

    entries: tuple[EmojiEntry, ...]
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ConfigError("emoji table must contain at least one entry")
        seen: set[str] = set()
        for e in self.entries:
            if e.glyph in seen:
                raise ConfigError(f"duplicate emoji glyph {e.glyph!r} in table")
            seen.add(e.glyph)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class BarColor:
    """HSL color of one waveform bar; `neutral` marks the fixed gray."""

    hue: float
    saturation: float
    lightness: float
    neutral: bool = False

    def __post_init__(self):
        if not (0.0 <= self.hue < 360.0):
            raise InputError(f"hue {self.hue} outside [0, 360)")
        if not (0.0 <= self.saturation <= 100.0):
            raise InputError(f"saturation {self.saturation} outside [0, 100]")
        if not (0.0 <= self.lightness <= 100.0):
            raise InputError(f"lightness {self.lightness} outside [0, 100]")


# Gray used wherever emotion coloring is suppressed (neutral chunks,
# failed augmentation).
NEUTRAL_GRAY = BarColor(hue=0.0, saturation=0.0, lightness=70.0, neutral=True)


class SpanLike(Protocol):
    start_s: float
    end_s: float


@dataclass(frozen=True)
class InterestSegment:
    """A maximal run of non-neutral chunks, at least MIN_SEGMENT_S long."""

    start_s: float
    end_s: float
    centroid: VadPoint
    emoji: EmojiEntry

    def __post_init__(self):
        if not (0.0 <= self.start_s < self.end_s):
            raise InputError(f"bad segment span [{self.start_s}, {self.end_s}]")
        if self.end_s - self.start_s < MIN_SEGMENT_S - _EPS:
            raise InputError(
                f"segment [{self.start_s}, {self.end_s}] shorter than {MIN_SEGMENT_S} s"
            )


def is_neutral(p: VadPoint, tau_neutral: float) -> bool:
    """True when the point sits inside the neutral disc (strict boundary).

    Dominance is ignored: neutrality is a valence/arousal property.
    """
    if not (0.0 <= tau_neutral < 1.0):
        raise InputError(f"tau_neutral {tau_neutral} outside [0, 1)")
    return p.va_norm() < tau_neutral


def nearest_emoji(p: VadPoint, table: EmojiTable) -> EmojiEntry:
    """Entry with least Euclidean distance in the valence/arousal plane.

    Ties resolve to the earliest entry in table order; dominance never
    participates.
    """
    if not isinstance(table, EmojiTable) or not table.entries:
        raise ConfigError("nearest_emoji requires a non-empty emoji table")
    best = table.entries[0]
    best_d = (p.valence - best.valence) ** 2 + (p.arousal - best.arousal) ** 2
    for e in table.entries[1:]:
        d = (p.valence - e.valence) ** 2 + (p.arousal - e.arousal) ** 2
        if d < best_d:
            best, best_d = e, d
    return best


def color_for(p: VadPoint, tau_neutral: float) -> BarColor:
    """Map an emotion point to a bar color.

    Neutral points get the fixed gray. Otherwise hue runs 0 (most negative
    valence, red) to 120 (most positive, green) and saturation runs 35-85 %
    with arousal; lightness is constant so bars stay legible on light and
    dark backgrounds.
    """
    if is_neutral(p, tau_neutral):
        return NEUTRAL_GRAY
    hue = 120.0 * (p.valence + 1.0) / 2.0
    saturation = 35.0 + 50.0 * (p.arousal + 1.0) / 2.0
    return BarColor(hue=hue, saturation=saturation, lightness=50.0)


def interest_segments(
    chunks: Sequence[tuple[SpanLike, VadPoint]],
    tau_interest: float,
    table: EmojiTable,
) -> list[InterestSegment]:
    """Merge consecutive non-neutral chunks into segments of interest.

    A chunk belongs to a run when its valence/arousal norm is >= tau_interest.
    Runs shorter than MIN_SEGMENT_S are dropped. The centroid is the
    duration-weighted mean of the member chunks' points, and each segment
    carries the nearest emoji of that centroid.
    """
    if not chunks:
        raise InputError("interest_segments requires at least one chunk")
    # above sqrt(2) no point qualifies; still a legal "never" setting
    if not (0.0 <= tau_interest <= 1.5):
        raise InputError(f"tau_interest {tau_interest} out of range")
    prev_end = None
    for span, _ in chunks:
        if prev_end is not None and abs(span.start_s - prev_end) > 1e-6:
            raise InputError("chunk spans must be contiguous and ordered")
        if span.end_s <= span.start_s:
            raise InputError(f"empty chunk span [{span.start_s}, {span.end_s}]")
        prev_end = span.end_s

    segments: list[InterestSegment] = []
    run: list[tuple[SpanLike, VadPoint]] = []

    def flush():
        if not run:
            return
        start = run[0][0].start_s
        end = run[-1][0].end_s
        if end - start < MIN_SEGMENT_S - _EPS:
            return
        total = 0.0
        v = a = d = 0.0
        for span, p in run:
            w = span.end_s - span.start_s
            total += w
            v += w * p.valence
            a += w * p.arousal
            d += w * p.dominance
        centroid = VadPoint(v / total, a / total, d / total)
        segments.append(InterestSegment(start, end, centroid, nearest_emoji(centroid, table)))

    for span, p in chunks:
        if p.va_norm() >= tau_interest:
            run.append((span, p))
        else:
            flush()
            run = []
    flush()
    return segments


# ---------------------------------------------------------------------------
# Table file format: UTF-8 JSON array of {glyph, valence, arousal, label},
# order significant (earlier entries win distance ties).
# ---------------------------------------------------------------------------

_DEFAULT_TABLE_RESOURCE = "emoji_table.json"
_DEFAULT_TABLE_SOURCE = (
    "builtin 22-emoji set; valence/arousal adapted from Kutsuzawa et al. (2022), "
    "'Classification of 74 facial emoji's emotional states on the valence-arousal "
    "axes' (Sci Rep 12:398), rescaled to [-1, 1]"
)


def table_from_obj(obj: object, source: str = "") -> EmojiTable:
    """Build a table from parsed JSON (the bare-array file format)."""
    if not isinstance(obj, list):
        raise ConfigError("emoji table file must be a JSON array")
    entries = []
    for i, item in enumerate(obj):
        if not isinstance(item, dict):
            raise ConfigError(f"table entry {i} is not an object")
        try:
            entries.append(
                EmojiEntry(
                    glyph=item["glyph"],
                    valence=item["valence"],
                    arousal=item["arousal"],
                    label=str(item.get("label", "")),
                )
            )
        except KeyError as exc:
            raise ConfigError(f"table entry {i} missing field {exc}") from exc
    return EmojiTable(entries=tuple(entries), source=source)


def table_to_json(table: EmojiTable) -> str:
    """Serialize entries back to the array file format (source is metadata,
    carried by the loader, not the file)."""
    items = [
        {"glyph": e.glyph, "valence": e.valence, "arousal": e.arousal, "label": e.label}
        for e in table.entries
    ]
    return json.dumps(items, ensure_ascii=False, indent=2) + "\n"


def load_table(path: str | Path) -> EmojiTable:
    p = Path(path)
    try:
        raw = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read emoji table {p}: {exc}") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"emoji table {p} is not valid JSON: {exc}") from exc
    return table_from_obj(obj, source=str(p))


def default_table() -> EmojiTable:
    """The shipped 22-emoji table."""
    raw = resources.files("speejis.data").joinpath(_DEFAULT_TABLE_RESOURCE).read_text("utf-8")
    return table_from_obj(json.loads(raw), source=_DEFAULT_TABLE_SOURCE)
