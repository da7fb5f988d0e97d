import { describe, expect, it } from "vitest";

import { downmix, encodeWav, floatToPcm16, resampleLinear, TARGET_RATE } from "../src/wav.js";

describe("downmix", () => {
  it("averages channels", () => {
    const left = new Float32Array([1, 0.5, 0]);
    const right = new Float32Array([0, 0.5, 1]);
    expect([...downmix([left, right])]).toEqual([0.5, 0.5, 0.5]);
  });

  it("passes mono through", () => {
    const mono = new Float32Array([0.1, 0.2]);
    expect(downmix([mono])).toBe(mono);
  });
});

describe("resampleLinear", () => {
  it("hits the 16 kHz target length from 44.1 kHz", () => {
    const out = resampleLinear(new Float32Array(44100), 44100);
    expect(out.length).toBe(16000);
  });

  it("keeps a constant signal constant", () => {
    const out = resampleLinear(new Float32Array(4410).fill(0.25), 44100);
    for (const v of out) expect(v).toBeCloseTo(0.25, 6);
  });

  it("is identity at the target rate", () => {
    const input = new Float32Array([0.1, -0.2, 0.3]);
    expect(resampleLinear(input, TARGET_RATE)).toBe(input);
  });

  it("interpolates between neighbors", () => {
    // 2x upsampling of a ramp stays on the ramp
    const out = resampleLinear(new Float32Array([0, 1]), 8000, 16000);
    expect(out.length).toBe(4);
    expect(out[0]).toBeCloseTo(0);
    expect(out[1]).toBeCloseTo(0.5);
    expect(out[2]).toBeCloseTo(1);
  });
});

describe("floatToPcm16", () => {
  it("scales by 32768 and clamps full scale", () => {
    const out = floatToPcm16(new Float32Array([0.25, 1.0, -1.0, 0]));
    expect([...out]).toEqual([8192, 32767, -32768, 0]);
  });
});

describe("encodeWav", () => {
  it("writes a canonical header the server will accept", () => {
    const buffer = encodeWav(new Float32Array(16000).fill(0.25));
    const view = new DataView(buffer);
    const tag = (off: number, len: number) =>
      String.fromCharCode(...new Uint8Array(buffer, off, len));
    expect(tag(0, 4)).toBe("RIFF");
    expect(tag(8, 4)).toBe("WAVE");
    expect(view.getUint16(20, true)).toBe(1); // PCM
    expect(view.getUint16(22, true)).toBe(1); // mono
    expect(view.getUint32(24, true)).toBe(16000);
    expect(view.getUint16(34, true)).toBe(16); // bits
    expect(view.getUint32(40, true)).toBe(32000); // data bytes
    expect(view.getInt16(44, true)).toBe(8192); // 0.25 full scale
    expect(buffer.byteLength).toBe(44 + 32000);
  });
});
