// Shared fakes: in-memory API, scriptable socket, stub audio, tone capture.

import type { Api } from "../src/api.js";
import type { AudioLike } from "../src/player.js";
import type { Capture, CaptureSource } from "../src/recorder.js";
import type { SocketLike } from "../src/live.js";
import type { Descriptor, LiveEvent, Message } from "../src/types.js";

export function makeDescriptor(overrides: Partial<Descriptor> = {}): Descriptor {
  const bars = Array.from({ length: 100 }, (_, i) => ({
    start_s: i * 0.1,
    end_s: (i + 1) * 0.1,
    height: 0.05 + 0.9 * Math.abs(Math.sin(i / 7)),
    color: { hue: 60 + (i % 30), saturation: 70, lightness: 50, neutral: false },
  }));
  const chunks = Array.from({ length: 20 }, (_, i) => ({
    span: { start_s: i * 0.5, end_s: (i + 1) * 0.5, index: i },
    vad: { valence: 0.4, arousal: 0.3, dominance: 0 },
  }));
  return {
    message_id: "m1",
    engine_version: "0.1.0",
    generated_by: "ai",
    status: "done",
    duration_s: 10.0,
    ending_span: { start_s: 8.0, end_s: 10.0 },
    overall: { valence: 0.6, arousal: 0.5, dominance: 0 },
    ending: { valence: -0.4, arousal: 0.2, dominance: 0 },
    overall_emoji: { glyph: "😄", valence: 0.78, arousal: 0.58, label: "grinning" },
    ending_emoji: { glyph: "😟", valence: -0.45, arousal: 0.25, label: "worried" },
    chunks,
    bars,
    interest_segments: [
      {
        start_s: 1.0,
        end_s: 3.0,
        centroid: { valence: 0.7, arousal: 0.6, dominance: 0 },
        emoji: { glyph: "😀", valence: 0.72, arousal: 0.5, label: "grinning" },
        text: "hello there",
      },
      {
        start_s: 6.0,
        end_s: 8.5,
        centroid: { valence: -0.5, arousal: 0.4, dominance: 0 },
        emoji: { glyph: "😢", valence: -0.65, arousal: 0.12, label: "crying" },
        text: "see you soon",
      },
    ],
    transcript: [
      { start_s: 0.5, end_s: 3.2, text: "hello there" },
      { start_s: 5.8, end_s: 8.6, text: "see you soon" },
    ],
    ...overrides,
  };
}

export function makeMessage(overrides: Partial<Message> = {}): Message {
  const descriptor = overrides.descriptor !== undefined ? overrides.descriptor : makeDescriptor();
  return {
    message_id: "m1",
    conversation_id: "c1",
    sender: "alex",
    created_at: "2026-08-08T10:00:00+00:00",
    status: descriptor === null ? "processing" : descriptor.status,
    audio_ref: "abc123",
    descriptor,
    ...overrides,
  };
}

export class FakeAudio implements AudioLike {
  src = "";
  currentTime = 0;
  playCalls = 0;
  pauseCalls = 0;
  private listeners = new Map<string, Set<() => void>>();

  play(): Promise<void> {
    this.playCalls += 1;
    return Promise.resolve();
  }

  pause(): void {
    this.pauseCalls += 1;
  }

  addEventListener(type: string, listener: () => void): void {
    if (!this.listeners.has(type)) this.listeners.set(type, new Set());
    this.listeners.get(type)!.add(listener);
  }

  removeEventListener(type: string, listener: () => void): void {
    this.listeners.get(type)?.delete(listener);
  }

  fire(type: string): void {
    for (const listener of [...(this.listeners.get(type) ?? [])]) listener();
  }
}

export class FakeApi implements Api {
  messages = new Map<string, Message>();
  posted: { cid: string; wav: Blob; sender: string }[] = [];
  listCalls: { cid: string; since?: string }[] = [];
  failNextPost: string | null = null;
  private counter = 0;

  async createConversation(_title: string) {
    return { conversation_id: "c1" };
  }

  async listMessages(cid: string, since?: string): Promise<Message[]> {
    this.listCalls.push({ cid, since });
    return [...this.messages.values()]
      .filter((m) => m.conversation_id === cid)
      .filter((m) => (since ? m.created_at > since : true))
      .sort((a, b) => (a.created_at < b.created_at ? -1 : 1));
  }

  async postMessage(cid: string, wav: Blob, sender: string): Promise<Message> {
    if (this.failNextPost) {
      const reason = this.failNextPost;
      this.failNextPost = null;
      throw new Error(reason);
    }
    this.posted.push({ cid, wav, sender });
    this.counter += 1;
    const message = makeMessage({
      message_id: `posted-${this.counter}`,
      conversation_id: cid,
      sender,
      created_at: `2026-08-08T10:00:0${this.counter}+00:00`,
      status: "processing",
      descriptor: null,
    });
    this.messages.set(message.message_id, message);
    return message;
  }

  async getMessage(mid: string): Promise<Message> {
    const message = this.messages.get(mid);
    if (!message) throw new Error(`unknown message ${mid}`);
    return message;
  }

  audioUrl(mid: string): string {
    return `/api/messages/${mid}/audio`;
  }

  wsUrl(cid: string): string {
    return `ws://test/api/ws?conversation=${cid}`;
  }

  /** Test hook: mark a message augmented, as the server worker would. */
  complete(mid: string, descriptor: Descriptor): void {
    const message = this.messages.get(mid)!;
    this.messages.set(mid, { ...message, status: descriptor.status, descriptor });
  }
}

export class FakeSocket implements SocketLike {
  onmessage: ((ev: { data: string }) => void) | null = null;
  onclose: ((ev: unknown) => void) | null = null;
  onopen: ((ev: unknown) => void) | null = null;
  closedByClient = false;

  open(): void {
    this.onopen?.({});
  }

  emit(event: LiveEvent): void {
    this.onmessage?.({ data: JSON.stringify(event) });
  }

  drop(): void {
    this.onclose?.({});
  }

  close(): void {
    this.closedByClient = true;
  }
}

export function socketFactory(): { sockets: FakeSocket[]; make: (url: string) => SocketLike } {
  const sockets: FakeSocket[] = [];
  return {
    sockets,
    make: () => {
      const socket = new FakeSocket();
      sockets.push(socket);
      return socket;
    },
  };
}

export class FakeCapture implements CaptureSource {
  started = 0;
  denied = false;

  constructor(private sampleRate = 48000, private seconds = 1.0) {}

  async start(): Promise<void> {
    if (this.denied) {
      const { PermissionDenied } = await import("../src/recorder.js");
      throw new PermissionDenied("denied by test");
    }
    this.started += 1;
  }

  async stop(): Promise<Capture> {
    const n = Math.round(this.sampleRate * this.seconds);
    const samples = new Float32Array(n);
    for (let i = 0; i < n; i++) samples[i] = 0.5 * Math.sin((2 * Math.PI * 440 * i) / this.sampleRate);
    return { samples, sampleRate: this.sampleRate };
  }
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

/** jsdom's Blob has no arrayBuffer(); go through FileReader instead. */
export function blobBytes(blob: Blob): Promise<Uint8Array> {
  return new Promise((resolve, reject) => {
    const reader = new FileReader();
    reader.onload = () => resolve(new Uint8Array(reader.result as ArrayBuffer));
    reader.onerror = () => reject(reader.error);
    reader.readAsArrayBuffer(blob);
  });
}
