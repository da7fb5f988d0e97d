"""Shared test helpers: signal synthesis and independent WAV encoding.

The WAV builder here is written from the RIFF layout directly, independent
of the package's own encoder, so decode tests are not self-referential.
"""

from __future__ import annotations

import math
import struct

import numpy as np
import pytest

from speejis.audio import AudioClip


def build_wav(
    samples: np.ndarray,
    rate: int = 16000,
    channels: int = 1,
    fmt: str = "pcm16",
) -> bytes:
    """Independent RIFF/WAVE writer. `samples` is float in [-1, 1]; for
    stereo pass shape (n, 2)."""
    arr = np.asarray(samples, dtype=np.float64)
    if channels == 2 and arr.ndim == 1:
        arr = np.stack([arr, arr], axis=1)
    flat = arr.reshape(-1)
    if fmt == "pcm16":
        payload = np.clip(np.rint(flat * 32768.0), -32768, 32767).astype("<i2").tobytes()
        audio_format, bits = 1, 16
        block = 2 * channels
    elif fmt == "float32":
        payload = flat.astype("<f4").tobytes()
        audio_format, bits = 3, 32
        block = 4 * channels
    else:
        raise ValueError(fmt)
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16, audio_format, channels, rate, rate * block, block, bits,
        b"data", len(payload),
    )
    return header + payload


def wav_from_int16(values: np.ndarray, rate: int = 16000, channels: int = 1) -> bytes:
    """WAV with exact int16 payload values (no float quantization)."""
    arr = np.asarray(values, dtype="<i2")
    payload = arr.tobytes()
    block = 2 * channels
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16, 1, channels, rate, rate * block, block, 16,
        b"data", len(payload),
    )
    return header + payload


def sine(freq: float, duration_s: float, amplitude: float = 1.0, rate: int = 16000) -> np.ndarray:
    t = np.arange(round(duration_s * rate)) / rate
    return amplitude * np.sin(2.0 * math.pi * freq * t)


def sine_clip(freq: float, duration_s: float, amplitude: float = 1.0) -> AudioClip:
    return AudioClip(samples=sine(freq, duration_s, amplitude))


def silence_clip(duration_s: float) -> AudioClip:
    return AudioClip(samples=np.zeros(round(duration_s * 16000)))


def square_1khz_clip(duration_s: float = 0.5, rate: int = 16000) -> AudioClip:
    """Full-scale 1 kHz square wave phased so every transition falls between
    two in-span samples: sample 0 is +1, then sign flips every 8 samples."""
    n = round(duration_s * rate)
    k = np.arange(n)
    samples = np.where(((k + 7) // 8) % 2 == 0, 1.0, -1.0)
    return AudioClip(samples=samples)


@pytest.fixture
def default_table():
    from speejis.emotion import default_table as load

    return load()
