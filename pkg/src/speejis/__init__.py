"""Voice-message augmentation: speech-emotion emojis and colored waveforms."""

__version__ = "0.1.0"

from .audio import AudioClip, ChunkSpan, WaveBar, chunk_spans, decode_wav, encode_wav, wave_bars
from .backends import (
    BackendConfig,
    BaselineBackend,
    ExternalSerBackend,
    ExternalTranscriber,
    TranscriptSegment,
    align,
    baseline_analyze,
    external_analyze,
    external_transcribe,
)
from .descriptor import (
    AlignedSegment,
    AugmentationDescriptor,
    parse_descriptor,
    serialize_descriptor,
)
from .emotion import (
    BarColor,
    EmojiEntry,
    EmojiTable,
    InterestSegment,
    VadPoint,
    color_for,
    default_table,
    interest_segments,
    is_neutral,
    load_table,
    nearest_emoji,
)
from .errors import (
    BackendError,
    ConfigError,
    DecodeError,
    InputError,
    SchemaError,
    SpeejisError,
)
from .pipeline import PipelineConfig, augment, ending_span
from .svg import render_svg

__all__ = [
    "__version__",
    "AudioClip",
    "ChunkSpan",
    "WaveBar",
    "chunk_spans",
    "decode_wav",
    "encode_wav",
    "wave_bars",
    "BackendConfig",
    "BaselineBackend",
    "ExternalSerBackend",
    "ExternalTranscriber",
    "TranscriptSegment",
    "align",
    "baseline_analyze",
    "external_analyze",
    "external_transcribe",
    "AlignedSegment",
    "AugmentationDescriptor",
    "parse_descriptor",
    "serialize_descriptor",
    "BarColor",
    "EmojiEntry",
    "EmojiTable",
    "InterestSegment",
    "VadPoint",
    "color_for",
    "default_table",
    "interest_segments",
    "is_neutral",
    "load_table",
    "nearest_emoji",
    "BackendError",
    "ConfigError",
    "DecodeError",
    "InputError",
    "SchemaError",
    "SpeejisError",
    "PipelineConfig",
    "augment",
    "ending_span",
    "render_svg",
]
