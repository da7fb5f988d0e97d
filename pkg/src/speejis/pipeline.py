"""End-to-end augmentation: chunk, analyze, map, compose.

One call to `augment` turns a decoded clip into the immutable descriptor
the service, CLI, and UI all consume. Emotion analysis and transcription
run concurrently and join before the descriptor is built. The descriptor
is deterministic for a fixed clip, table, and backend behavior.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .audio import (
    AudioClip,
    ChunkSpan,
    DEFAULT_CHUNK_S,
    WaveBar,
    chunk_spans,
    wave_bars,
)
from .backends import BaselineBackend, SerBackend, TranscriptSegment, align
from .descriptor import (
    AlignedSegment,
    AugmentationDescriptor,
    STATUS_DONE,
    STATUS_FAILED,
    q6,
)
from .emotion import (
    DEFAULT_INTEREST_TAU,
    DEFAULT_NEUTRAL_TAU,
    BarColor,
    EmojiTable,
    NEUTRAL_GRAY,
    VadPoint,
    color_for,
    interest_segments,
    nearest_emoji,
)
from .errors import BackendError, InputError

# Tail of the message that drives the second headline emoji: at least this
# long, or a fifth of the message, whichever is larger.
ENDING_MIN_S = 1.5
ENDING_FRACTION = 0.20


@dataclass
class PipelineConfig:
    """Backends and thresholds for one augmentation run."""

    ser: SerBackend = field(default_factory=BaselineBackend)
    transcriber: object | None = None  # needs .transcribe(clip); None disables
    neutral_tau: float = DEFAULT_NEUTRAL_TAU
    interest_tau: float = DEFAULT_INTEREST_TAU
    chunk_s: float = DEFAULT_CHUNK_S


def ending_span(duration_s: float) -> tuple[float, float]:
    """Span of the message ending, clamped to the whole message when short."""
    if not (duration_s > 0):
        raise InputError(f"duration_s must be positive, got {duration_s}")
    length = max(ENDING_MIN_S, ENDING_FRACTION * duration_s)
    return (max(0.0, duration_s - length), duration_s)


def _qvad(p: VadPoint) -> VadPoint:
    return VadPoint(q6(p.valence), q6(p.arousal), q6(p.dominance))


def _qcolor(c: BarColor) -> BarColor:
    return BarColor(q6(c.hue), q6(c.saturation), q6(c.lightness), c.neutral)


def _colored_bars(
    bars: list[WaveBar],
    chunks: list[tuple[ChunkSpan, VadPoint]],
    neutral_tau: float,
) -> tuple[WaveBar, ...]:
    """Color each bar from the chunk containing the bar's midpoint."""
    out = []
    ci = 0
    for bar in bars:
        mid = (bar.start_s + bar.end_s) / 2.0
        while ci < len(chunks) - 1 and mid >= chunks[ci][0].end_s:
            ci += 1
        color = _qcolor(color_for(chunks[ci][1], neutral_tau))
        out.append(WaveBar(q6(bar.start_s), q6(bar.end_s), q6(bar.height), color))
    return tuple(out)


def _gray_bars(bars: list[WaveBar]) -> tuple[WaveBar, ...]:
    return tuple(
        WaveBar(q6(b.start_s), q6(b.end_s), q6(b.height), NEUTRAL_GRAY) for b in bars
    )


def augment(
    clip: AudioClip,
    table: EmojiTable,
    cfg: PipelineConfig,
    message_id: str = "",
) -> AugmentationDescriptor:
    """Run the full augmentation for one message.

    The backend receives one request covering every chunk span plus the
    whole-message span plus the ending span; the two headline points are
    real inferences, never client-side averages. Emotion-backend failure
    degrades to a gray, emoji-free descriptor (status augmentation_failed);
    transcription failure only empties the transcript.
    """
    duration = clip.duration_s
    spans = chunk_spans(duration, cfg.chunk_s)
    tail = ending_span(duration)
    request = [(s.start_s, s.end_s) for s in spans] + [(0.0, duration), tail]
    bars = wave_bars(clip)

    transcript: list[TranscriptSegment] = []
    if cfg.transcriber is None:
        points, ser_error = _run_ser(cfg.ser, clip, request)
    else:
        with ThreadPoolExecutor(max_workers=2) as pool:
            ser_future = pool.submit(_run_ser, cfg.ser, clip, request)
            asr_future = pool.submit(cfg.transcriber.transcribe, clip)
            points, ser_error = ser_future.result()
            try:
                transcript = list(asr_future.result())
            except BackendError:
                transcript = []  # transcription is optional; keep the message

    ending = _qspan(tail)
    q_transcript = tuple(
        TranscriptSegment(q6(t.start_s), q6(t.end_s), t.text) for t in transcript
    )

    if ser_error is not None:
        return AugmentationDescriptor(
            message_id=message_id,
            duration_s=q6(duration),
            status=STATUS_FAILED,
            engine_version=__version__,
            chunks=(),
            overall=None,
            ending_span=ending,
            ending=None,
            overall_emoji=None,
            ending_emoji=None,
            bars=_gray_bars(bars),
            interest_segments=(),
            transcript=q_transcript,
        )

    chunk_points = points[: len(spans)]
    overall_point = _qvad(points[len(spans)])
    ending_point = _qvad(points[len(spans) + 1])

    chunks = [
        (ChunkSpan(q6(s.start_s), q6(s.end_s), s.index), _qvad(p))
        for s, p in zip(spans, chunk_points)
    ]

    segments = interest_segments(chunks, cfg.interest_tau, table)
    texts = align(segments, q_transcript) if q_transcript else [""] * len(segments)
    aligned = []
    for seg, text in zip(segments, texts):
        centroid = _qvad(seg.centroid)
        aligned.append(
            AlignedSegment(
                start_s=q6(seg.start_s),
                end_s=q6(seg.end_s),
                centroid=centroid,
                emoji=nearest_emoji(centroid, table),
                text=text,
            )
        )

    return AugmentationDescriptor(
        message_id=message_id,
        duration_s=q6(duration),
        status=STATUS_DONE,
        engine_version=__version__,
        chunks=tuple(chunks),
        overall=overall_point,
        ending_span=ending,
        ending=ending_point,
        overall_emoji=nearest_emoji(overall_point, table),
        ending_emoji=nearest_emoji(ending_point, table),
        bars=_colored_bars(bars, chunks, cfg.neutral_tau),
        interest_segments=tuple(aligned),
        transcript=q_transcript,
    )


def _qspan(span: tuple[float, float]) -> tuple[float, float]:
    return (q6(span[0]), q6(span[1]))


def _run_ser(
    ser: SerBackend, clip: AudioClip, request: list[tuple[float, float]]
) -> tuple[list[VadPoint], BackendError | None]:
    """Run the emotion backend, funneling failures into a value so the
    concurrent join stays simple."""
    try:
        points = ser.analyze(clip, request)
    except BackendError as exc:
        return [], exc
    if len(points) != len(request):
        return [], BackendError(
            f"backend returned {len(points)} results for {len(request)} spans"
        )
    return list(points), None
