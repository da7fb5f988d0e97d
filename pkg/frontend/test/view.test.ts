import { describe, expect, it } from "vitest";

import { SegmentPlayer } from "../src/player.js";
import type { Variant } from "../src/types.js";
import { renderMessage } from "../src/view.js";
import { FakeAudio, makeDescriptor, makeMessage } from "./helpers.js";

function deps() {
  const player = new SegmentPlayer(() => new FakeAudio());
  return {
    player,
    audioUrl: (mid: string) => `/api/messages/${mid}/audio`,
  };
}

function render(message = makeMessage(), variant: Variant = "emoji+color", d = deps()) {
  return { node: renderMessage(message, variant, d), deps: d };
}

describe("renderMessage variants", () => {
  it("emoji+color shows two headline emojis and colored bars", () => {
    const { node } = render();
    const emojis = node.querySelectorAll(".speeji-overall, .speeji-ending");
    expect(emojis.length).toBe(2);
    const bars = node.querySelectorAll<HTMLElement>(".bar");
    expect(bars.length).toBe(100);
    expect(bars[0].style.backgroundColor).not.toBe("");
  });

  it("emoji variant keeps emojis but drops bar coloring", () => {
    const { node } = render(makeMessage(), "emoji");
    expect(node.querySelectorAll(".speeji-overall, .speeji-ending").length).toBe(2);
    const bars = node.querySelectorAll<HTMLElement>(".bar");
    expect(bars[0].style.backgroundColor).toBe("");
  });

  it("baseline variant renders plain bars and no emojis at all", () => {
    const { node } = render(makeMessage(), "baseline");
    expect(node.querySelectorAll(".speeji").length).toBe(0);
    expect(node.querySelectorAll(".ai-badge").length).toBe(0);
    expect(node.querySelectorAll(".bar").length).toBe(100);
    expect(node.querySelector(".play")).not.toBeNull();
  });

  it("variant toggle round-trip restores an equivalent DOM", () => {
    const message = makeMessage();
    const first = renderMessage(message, "baseline", deps());
    renderMessage(message, "emoji+color", deps());
    const again = renderMessage(message, "baseline", deps());
    expect(again.outerHTML).toBe(first.outerHTML);
  });

  it("processing message shows the shimmer", () => {
    const { node } = render(makeMessage({ status: "processing", descriptor: null }));
    expect(node.querySelector(".shimmer")).not.toBeNull();
    expect(node.querySelectorAll(".speeji").length).toBe(0);
  });

  it("failed augmentation falls back to baseline plus a subtle notice", () => {
    const d = makeDescriptor({
      status: "augmentation_failed",
      overall: null,
      ending: null,
      overall_emoji: null,
      ending_emoji: null,
      chunks: [],
      interest_segments: [],
    });
    const { node } = render(makeMessage({ status: "augmentation_failed", descriptor: d }));
    expect(node.querySelectorAll(".speeji").length).toBe(0);
    expect(node.querySelector(".notice")?.textContent).toContain("unavailable");
    expect(node.querySelectorAll(".bar").length).toBe(100);
  });
});

describe("attribution", () => {
  it("every rendered emoji carries the AI marker", () => {
    const { node } = render();
    const speejis = node.querySelectorAll<HTMLElement>(".speeji");
    expect(speejis.length).toBeGreaterThanOrEqual(2);
    for (const speeji of speejis) {
      expect(speeji.dataset.generatedBy).toBe("ai");
    }
    expect(node.querySelector<HTMLElement>(".ai-badge")?.dataset.generatedBy).toBe("ai");
  });
});

describe("tap-to-play", () => {
  it("tapping the ending emoji plays exactly the ending span", () => {
    const { node, deps: d } = render(); // 10 s message: ending span (8, 10)
    node.querySelector<HTMLButtonElement>(".speeji-ending")!.click();
    expect(d.player.lastRequest).toEqual({
      url: "/api/messages/m1/audio",
      startS: 8.0,
      endS: 10.0,
    });
  });

  it("tapping a segment emoji plays its span and highlights its text", () => {
    const { node, deps: d } = render();
    const segButtons = node.querySelectorAll<HTMLButtonElement>(".speeji-segment");
    expect(segButtons.length).toBe(2);
    segButtons[0].click();
    expect(d.player.lastRequest).toEqual({
      url: "/api/messages/m1/audio",
      startS: 1.0,
      endS: 3.0,
    });
    const active = node.querySelectorAll<HTMLElement>(".transcript-piece.active");
    expect(active.length).toBe(1);
    expect(active[0].textContent).toContain("hello there");
  });

  it("starting a new tap stops the previous playback", () => {
    const { node, deps: d } = render();
    node.querySelector<HTMLButtonElement>(".play")!.click();
    node.querySelector<HTMLButtonElement>(".speeji-ending")!.click();
    expect(d.player.lastRequest?.startS).toBe(8.0);
  });
});

describe("transcript", () => {
  it("interest-segment text is highlighted with the segment's bar color", () => {
    const { node } = render();
    const hot = node.querySelectorAll<HTMLElement>(".transcript-hot");
    expect(hot.length).toBe(2);
    for (const piece of hot) {
      expect(piece.style.backgroundColor).not.toBe("");
    }
  });

  it("no transcript block when the transcript is empty", () => {
    const d = makeDescriptor({ transcript: [], interest_segments: [] });
    const { node } = render(makeMessage({ descriptor: d }));
    expect(node.querySelector(".transcript")).toBeNull();
  });
});
