// Message bubble rendering. Three presentation variants over one immutable
// descriptor: the client never computes emotion values, it only lays out
// what the server said, and every emoji the AI added is marked as such.

import type { Descriptor, InterestSegment, Message, Variant } from "./types.js";
import type { SegmentPlayer } from "./player.js";

export interface ViewDeps {
  player: SegmentPlayer;
  audioUrl: (messageId: string) => string;
  onRetry?: (message: Message) => void;
}

const AI_BADGE_TITLE = "Added automatically from the sound of the voice";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function cssColor(color: { hue: number; saturation: number; lightness: number }): string {
  return `hsl(${color.hue}, ${color.saturation}%, ${color.lightness}%)`;
}

function speejiButton(
  glyph: string,
  role: string,
  title: string,
  onTap: () => void,
): HTMLButtonElement {
  const btn = el("button", `speeji speeji-${role}`);
  btn.type = "button";
  btn.textContent = glyph;
  btn.title = title;
  btn.dataset.generatedBy = "ai"; // attribution rides on every emoji
  btn.addEventListener("click", onTap);
  return btn;
}

function renderBars(d: Descriptor, colored: boolean): HTMLElement {
  const wave = el("div", "waveform");
  for (const bar of d.bars) {
    const node = el("span", "bar");
    node.style.height = `${Math.round(bar.height * 100)}%`;
    if (colored) {
      node.style.backgroundColor = cssColor(bar.color);
      if (bar.color.neutral) node.classList.add("bar-neutral");
    }
    wave.appendChild(node);
  }
  return wave;
}

function renderTranscript(d: Descriptor, deps: ViewDeps, mid: string): HTMLElement | null {
  if (d.transcript.length === 0) return null;
  const block = el("p", "transcript");
  for (const seg of d.transcript) {
    const overlapping = d.interest_segments.find(
      (s) => Math.min(s.end_s, seg.end_s) - Math.max(s.start_s, seg.start_s) > 0,
    );
    const piece = el("span", "transcript-piece", seg.text + " ");
    if (overlapping) {
      piece.classList.add("transcript-hot");
      piece.style.backgroundColor = cssColor({
        ...barColorOf(d, overlapping),
      });
      piece.dataset.segmentStart = String(overlapping.start_s);
      piece.addEventListener("click", () => {
        void deps.player.play(deps.audioUrl(mid), overlapping.start_s, overlapping.end_s);
      });
    }
    block.appendChild(piece);
  }
  return block;
}

/** The highlight color for a segment: the color of a bar inside it. */
function barColorOf(d: Descriptor, seg: InterestSegment) {
  const mid = (seg.start_s + seg.end_s) / 2;
  const bar = d.bars.find((b) => b.start_s <= mid && mid < b.end_s) ?? d.bars[0];
  return { ...bar.color, lightness: Math.min(92, bar.color.lightness + 38) };
}

function highlightTranscript(bubble: HTMLElement, seg: InterestSegment): void {
  bubble.querySelectorAll(".transcript-piece").forEach((node) => {
    const piece = node as HTMLElement;
    piece.classList.toggle("active", piece.dataset.segmentStart === String(seg.start_s));
  });
}

export function renderMessage(message: Message, variant: Variant, deps: ViewDeps): HTMLElement {
  const bubble = el("article", `message message-${message.status}`);
  bubble.dataset.messageId = message.message_id;
  bubble.dataset.variant = variant;

  const meta = el("header", "meta");
  meta.appendChild(el("span", "sender", message.sender || "anonymous"));
  meta.appendChild(el("time", "stamp", message.created_at.slice(11, 19)));
  bubble.appendChild(meta);

  if (message.status === "processing" || message.descriptor === null) {
    const shimmer = el("div", "shimmer");
    shimmer.setAttribute("aria-label", "analyzing voice message");
    bubble.appendChild(shimmer);
    return bubble;
  }

  const d = message.descriptor;
  const url = deps.audioUrl(message.message_id);
  const failed = d.status === "augmentation_failed";
  const wantEmojis = variant !== "baseline" && !failed;
  const wantColor = variant === "emoji+color" && !failed;

  const row = el("div", "wave-row");

  const playBtn = el("button", "play");
  playBtn.type = "button";
  playBtn.textContent = "▶";
  playBtn.title = "play the whole message";
  playBtn.addEventListener("click", () => {
    void deps.player.play(url, 0, null);
  });
  row.appendChild(playBtn);

  if (wantEmojis && d.overall_emoji) {
    row.appendChild(
      speejiButton(d.overall_emoji.glyph, "overall", `overall tone — ${AI_BADGE_TITLE}`, () => {
        void deps.player.play(url, 0, null);
      }),
    );
  }

  row.appendChild(renderBars(d, wantColor));

  if (wantEmojis && d.ending_emoji) {
    row.appendChild(
      speejiButton(
        d.ending_emoji.glyph,
        "ending",
        `how it ends — tap to hear just that part — ${AI_BADGE_TITLE}`,
        () => {
          void deps.player.play(url, d.ending_span.start_s, d.ending_span.end_s);
        },
      ),
    );
  }

  bubble.appendChild(row);

  if (wantColor && d.interest_segments.length > 0) {
    const strip = el("div", "segments");
    for (const seg of d.interest_segments) {
      strip.appendChild(
        speejiButton(
          seg.emoji.glyph,
          "segment",
          `tap to hear ${seg.start_s.toFixed(1)}–${seg.end_s.toFixed(1)} s — ${AI_BADGE_TITLE}`,
          () => {
            void deps.player.play(url, seg.start_s, seg.end_s);
            highlightTranscript(bubble, seg);
          },
        ),
      );
    }
    bubble.appendChild(strip);
  }

  if (wantEmojis) {
    const transcript = renderTranscript(d, deps, message.message_id);
    if (transcript) bubble.appendChild(transcript);
    const badge = el("span", "ai-badge", "AI");
    badge.title = AI_BADGE_TITLE;
    badge.dataset.generatedBy = "ai";
    bubble.appendChild(badge);
  }

  if (failed) {
    bubble.appendChild(el("p", "notice", "emotion cues unavailable for this message"));
  }

  return bubble;
}

/** A locally failed upload: keep the recording and offer a retry. */
export function renderFailedUpload(
  reason: string,
  retry: () => void,
): HTMLElement {
  const bubble = el("article", "message message-upload-failed");
  bubble.appendChild(el("p", "notice", `upload failed: ${reason}`));
  const btn = el("button", "retry", "retry");
  btn.type = "button";
  btn.addEventListener("click", retry);
  bubble.appendChild(btn);
  return bubble;
}
