// Client-side canonical WAV encoding: mono, 16 kHz, 16-bit PCM.
// The server only accepts WAV, so the browser does the downmix/resample.
export const TARGET_RATE = 16000;
/** Average all channels into one. */
export function downmix(channels) {
    if (channels.length === 0)
        return new Float32Array(0);
    if (channels.length === 1)
        return channels[0];
    const n = Math.min(...channels.map((c) => c.length));
    const out = new Float32Array(n);
    for (let i = 0; i < n; i++) {
        let sum = 0;
        for (const c of channels)
            sum += c[i];
        out[i] = sum / channels.length;
    }
    return out;
}
/** Linear-interpolation resampling; deterministic and dependency-free. */
export function resampleLinear(samples, fromRate, toRate = TARGET_RATE) {
    if (fromRate === toRate || samples.length === 0)
        return samples;
    const nOut = Math.max(1, Math.round((samples.length * toRate) / fromRate));
    const out = new Float32Array(nOut);
    const step = fromRate / toRate;
    for (let i = 0; i < nOut; i++) {
        const pos = i * step;
        const lo = Math.floor(pos);
        const hi = Math.min(lo + 1, samples.length - 1);
        const frac = pos - lo;
        const a = samples[Math.min(lo, samples.length - 1)];
        out[i] = a + (samples[hi] - a) * frac;
    }
    return out;
}
export function floatToPcm16(samples) {
    const out = new Int16Array(samples.length);
    for (let i = 0; i < samples.length; i++) {
        const q = Math.round(Math.max(-1, Math.min(1, samples[i])) * 32768);
        out[i] = Math.max(-32768, Math.min(32767, q));
    }
    return out;
}
export function encodeWav(samples, rate = TARGET_RATE) {
    const pcm = floatToPcm16(samples);
    const buffer = new ArrayBuffer(44 + pcm.length * 2);
    const view = new DataView(buffer);
    const writeStr = (off, str) => {
        for (let i = 0; i < str.length; i++)
            view.setUint8(off + i, str.charCodeAt(i));
    };
    writeStr(0, "RIFF");
    view.setUint32(4, 36 + pcm.length * 2, true);
    writeStr(8, "WAVEfmt ");
    view.setUint32(16, 16, true);
    view.setUint16(20, 1, true); // PCM
    view.setUint16(22, 1, true); // mono
    view.setUint32(24, rate, true);
    view.setUint32(28, rate * 2, true);
    view.setUint16(32, 2, true);
    view.setUint16(34, 16, true);
    writeStr(36, "data");
    view.setUint32(40, pcm.length * 2, true);
    for (let i = 0; i < pcm.length; i++)
        view.setInt16(44 + i * 2, pcm[i], true);
    return buffer;
}
/** Capture output -> canonical upload payload. */
export function captureToWav(channels, sampleRate) {
    const mono = downmix(channels);
    const resampled = resampleLinear(mono, sampleRate, TARGET_RATE);
    return new Blob([encodeWav(resampled, TARGET_RATE)], { type: "audio/wav" });
}
