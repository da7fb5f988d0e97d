"""WAV decode, chunking, waveform bars, and acoustic features."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speejis.audio import (
    AudioClip,
    chunk_spans,
    decode_wav,
    encode_wav,
    features,
    wave_bars,
)
from speejis.errors import DecodeError, InputError

from conftest import build_wav, sine, sine_clip, silence_clip, square_1khz_clip, wav_from_int16


def naive_dft_centroid(x: np.ndarray, rate: int) -> float:
    """Independent spectral-centroid oracle: direct DFT sum per bin, no FFT."""
    n = len(x)
    j = np.arange(n)
    total = 0.0
    weighted = 0.0
    for k in range(n // 2 + 1):
        re = float(np.sum(x * np.cos(-2.0 * math.pi * k * j / n)))
        im = float(np.sum(x * np.sin(-2.0 * math.pi * k * j / n)))
        mag = math.hypot(re, im)
        total += mag
        weighted += mag * (k * rate / n)
    return weighted / total if total > 0 else 0.0


class TestDecodeWav:
    def test_stereo_44k_pcm16_constant(self):
        n = 44100
        data = wav_from_int16(np.full((n, 2), 8192, dtype="<i2").reshape(-1), rate=44100, channels=2)
        clip = decode_wav(data)
        assert clip.sample_rate == 16000
        assert len(clip.samples) == 16000
        assert np.allclose(clip.samples, 0.25)
        assert clip.samples[0] == 8192 / 32768

    def test_zero_length_data_chunk(self):
        data = build_wav(np.zeros(10))
        # truncate to header only: RIFF(12) + fmt(24) + data header(8)
        with pytest.raises(DecodeError):
            decode_wav(data[:44])

    def test_16k_mono_pcm16_passthrough(self):
        values = np.arange(-100, 100, dtype="<i2")
        clip = decode_wav(wav_from_int16(values))
        assert len(clip.samples) == 200
        assert np.array_equal(clip.samples, values.astype(np.float64) / 32768.0)

    def test_float32_payload(self):
        samples = sine(440, 0.1)
        clip = decode_wav(build_wav(samples, fmt="float32"))
        assert np.allclose(clip.samples, samples, atol=1e-6)

    def test_malformed_header(self):
        with pytest.raises(DecodeError):
            decode_wav(b"OGGS" + b"\x00" * 64)
        with pytest.raises(DecodeError):
            decode_wav(b"")

    def test_unsupported_codec(self):
        import struct

        # 8-bit PCM is outside the supported surface
        header = struct.pack(
            "<4sI4s4sIHHIIHH4sI",
            b"RIFF", 36 + 4, b"WAVE",
            b"fmt ", 16, 1, 1, 16000, 16000, 1, 8,
            b"data", 4,
        )
        with pytest.raises(DecodeError):
            decode_wav(header + b"\x80\x80\x80\x80")

    def test_three_channels_rejected(self):
        import struct

        header = struct.pack(
            "<4sI4s4sIHHIIHH4sI",
            b"RIFF", 36 + 6, b"WAVE",
            b"fmt ", 16, 1, 3, 16000, 96000, 6, 16,
            b"data", 6,
        )
        with pytest.raises(DecodeError):
            decode_wav(header + b"\x00" * 6)

    def test_idempotent_on_canonical_input(self):
        rng = np.random.default_rng(7)
        clip = AudioClip(samples=rng.uniform(-1, 1, 16000))
        once = decode_wav(encode_wav(clip))
        assert np.max(np.abs(once.samples - clip.samples)) <= 1.0 / 32768
        twice = decode_wav(encode_wav(once))
        assert np.array_equal(twice.samples, once.samples)  # fixed point after one pass

    def test_resample_preserves_duration(self):
        clip = decode_wav(build_wav(sine(440, 1.0, rate=44100), rate=44100))
        assert len(clip.samples) == 16000


class TestChunkSpans:
    def test_exact_fit(self):
        spans = [(s.start_s, s.end_s) for s in chunk_spans(2.0)]
        assert spans == [(0.0, 0.5), (0.5, 1.0), (1.0, 1.5), (1.5, 2.0)]

    def test_short_remainder_merges(self):
        spans = [(s.start_s, s.end_s) for s in chunk_spans(1.2)]
        assert spans == [(0.0, 0.5), (0.5, 1.2)]

    def test_long_remainder_keeps_own_span(self):
        spans = [(s.start_s, s.end_s) for s in chunk_spans(1.3)]
        assert spans == [(0.0, 0.5), (0.5, 1.0), (1.0, 1.3)]

    def test_single_short_message(self):
        spans = [(s.start_s, s.end_s) for s in chunk_spans(0.2)]
        assert spans == [(0.0, 0.2)]

    def test_non_positive_duration(self):
        with pytest.raises(InputError):
            chunk_spans(0.0)
        with pytest.raises(InputError):
            chunk_spans(-1.0)

    @given(st.floats(min_value=0.1, max_value=120.0, allow_nan=False))
    @settings(max_examples=300, deadline=None)
    def test_partition_property(self, duration):
        spans = chunk_spans(duration)
        assert spans[0].start_s == 0.0
        assert spans[-1].end_s == duration
        for prev, cur in zip(spans, spans[1:]):
            assert prev.end_s == cur.start_s  # no gaps, no overlaps
        for s in spans[:-1]:
            assert s.end_s - s.start_s == pytest.approx(0.5, abs=1e-12)
        for s in spans:
            assert s.end_s - s.start_s >= 0.25 - 1e-9 or len(spans) == 1
        assert [s.index for s in spans] == list(range(len(spans)))


class TestWaveBars:
    def test_ten_seconds_is_100_bars(self):
        bars = wave_bars(sine_clip(440, 10.0))
        assert len(bars) == 100
        assert all(b.end_s - b.start_s == pytest.approx(0.1) for b in bars)

    def test_thirty_seconds_caps_at_120(self):
        bars = wave_bars(sine_clip(440, 30.0))
        assert len(bars) == 120
        assert all(b.end_s - b.start_s == pytest.approx(0.25) for b in bars)

    def test_silence_floors_every_bar(self):
        bars = wave_bars(silence_clip(2.0))
        assert all(b.height == 0.05 for b in bars)

    def test_peak_bar_is_one(self):
        samples = np.zeros(16000)
        samples[4000] = 0.7  # single spike, non-full-scale
        bars = wave_bars(AudioClip(samples=samples))
        assert max(b.height for b in bars) == 1.0
        assert min(b.height for b in bars) == 0.05

    def test_scale_invariance(self):
        rng = np.random.default_rng(3)
        samples = rng.uniform(-1, 1, 32000)
        base = [b.height for b in wave_bars(AudioClip(samples=samples))]
        for c in (0.9, 0.5, 0.17, 0.01):
            scaled = [b.height for b in wave_bars(AudioClip(samples=c * samples))]
            assert scaled == base

    def test_bars_partition_duration(self):
        clip = sine_clip(440, 7.03)
        bars = wave_bars(clip)
        assert bars[0].start_s == 0.0
        assert bars[-1].end_s == pytest.approx(clip.duration_s)
        for prev, cur in zip(bars, bars[1:]):
            assert prev.end_s == pytest.approx(cur.start_s)


class TestFeatures:
    def test_all_zero_span(self):
        f = features(silence_clip(1.0), (0.0, 1.0))
        assert f.rms_dbfs == pytest.approx(-180.0, abs=1e-9)
        assert f.spectral_centroid_hz == 0.0
        assert f.zero_crossings_per_s == 0.0

    def test_full_scale_square_wave(self):
        clip = square_1khz_clip(0.5)
        f = features(clip, (0.0, 0.5))
        assert f.rms_dbfs == 0.0
        assert f.zero_crossings_per_s == 2000.0

    def test_sine_centroid_matches_dft_oracle(self):
        clip = sine_clip(1500, 0.5)
        f = features(clip, (0.0, 0.5))
        assert abs(f.spectral_centroid_hz - 1500.0) <= 20.0
        oracle = naive_dft_centroid(np.asarray(clip.samples), clip.sample_rate)
        assert f.spectral_centroid_hz == pytest.approx(oracle, abs=1e-3)

    def test_composite_signal_matches_dft_oracle(self):
        # mixed tones plus noise over a short span keeps the oracle cheap
        rng = np.random.default_rng(11)
        samples = 0.5 * sine(523, 0.1) + 0.3 * sine(2333, 0.1) + 0.05 * rng.uniform(-1, 1, 1600)
        clip = AudioClip(samples=np.clip(samples, -1, 1))
        f = features(clip, (0.0, 0.1))
        oracle = naive_dft_centroid(np.asarray(clip.samples), clip.sample_rate)
        assert f.spectral_centroid_hz == pytest.approx(oracle, rel=1e-6)

    def test_centroid_within_nyquist(self):
        rng = np.random.default_rng(5)
        clip = AudioClip(samples=rng.uniform(-1, 1, 8000))
        f = features(clip, (0.0, 0.5))
        assert 0.0 <= f.spectral_centroid_hz <= clip.sample_rate / 2

    def test_deterministic(self):
        clip = sine_clip(777, 1.3, amplitude=0.4)
        a = features(clip, (0.5, 1.0))
        b = features(clip, (0.5, 1.0))
        assert (a.rms_dbfs, a.spectral_centroid_hz, a.zero_crossings_per_s) == (
            b.rms_dbfs,
            b.spectral_centroid_hz,
            b.zero_crossings_per_s,
        )

    def test_span_outside_clip_rejected(self):
        with pytest.raises(InputError):
            features(silence_clip(1.0), (0.5, 1.5))


class TestAudioClip:
    def test_rejects_empty(self):
        with pytest.raises(InputError):
            AudioClip(samples=np.array([]))

    def test_clamps_samples(self):
        clip = AudioClip(samples=np.array([2.0, -3.0, 0.5]))
        assert list(clip.samples) == [1.0, -1.0, 0.5]

    def test_immutable(self):
        clip = AudioClip(samples=np.zeros(4))
        with pytest.raises(ValueError):
            clip.samples[0] = 1.0
