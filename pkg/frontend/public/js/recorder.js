// Microphone capture. The capture source is injectable so the send flow is
// testable without a real microphone; the browser implementation collects
// Float32 frames from an AudioContext tap.
import { captureToWav } from "./wav.js";
export class PermissionDenied extends Error {
}
export class MicrophoneSource {
    constructor() {
        this.context = null;
        this.stream = null;
        this.processor = null;
        this.frames = [];
    }
    async start() {
        let stream;
        try {
            stream = await navigator.mediaDevices.getUserMedia({ audio: true });
        }
        catch (err) {
            throw new PermissionDenied(err instanceof Error ? err.message : "microphone denied");
        }
        this.stream = stream;
        this.frames = [];
        this.context = new AudioContext();
        const source = this.context.createMediaStreamSource(stream);
        this.processor = this.context.createScriptProcessor(4096, 1, 1);
        this.processor.onaudioprocess = (ev) => {
            this.frames.push(new Float32Array(ev.inputBuffer.getChannelData(0)));
        };
        source.connect(this.processor);
        this.processor.connect(this.context.destination);
    }
    async stop() {
        const rate = this.context?.sampleRate ?? 48000;
        this.processor?.disconnect();
        this.stream?.getTracks().forEach((t) => t.stop());
        await this.context?.close();
        this.context = null;
        this.stream = null;
        this.processor = null;
        let total = 0;
        for (const f of this.frames)
            total += f.length;
        const samples = new Float32Array(total);
        let off = 0;
        for (const f of this.frames) {
            samples.set(f, off);
            off += f.length;
        }
        this.frames = [];
        return { samples, sampleRate: rate };
    }
}
export class Recorder {
    constructor(source) {
        this.source = source;
        this.recording = false;
    }
    async begin() {
        await this.source.start();
        this.recording = true;
    }
    /** Stop and encode what was heard as a canonical WAV upload payload. */
    async finish() {
        const capture = await this.source.stop();
        this.recording = false;
        return captureToWav([capture.samples], capture.sampleRate);
    }
}
