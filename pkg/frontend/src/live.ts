// Live event feed over WebSocket with automatic reconnect.
// Events are live-only on the wire; after a reconnect the app backfills via
// the listing endpoint, so `onReconnect` is where missed history comes from.

import type { LiveEvent } from "./types.js";

export interface SocketLike {
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: ((ev: unknown) => void) | null;
  onopen: ((ev: unknown) => void) | null;
  close(): void;
}

export interface LiveFeedOptions {
  makeSocket?: (url: string) => SocketLike;
  reconnectDelayMs?: number;
}

export class LiveFeed {
  private socket: SocketLike | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private closed = false;
  private everConnected = false;
  private makeSocket: (url: string) => SocketLike;
  private reconnectDelayMs: number;

  constructor(
    private url: string,
    private onEvent: (ev: LiveEvent) => void,
    private onReconnect: () => void,
    options: LiveFeedOptions = {},
  ) {
    this.makeSocket = options.makeSocket ?? ((u) => new WebSocket(u) as unknown as SocketLike);
    this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
  }

  connect(): void {
    if (this.closed) return;
    const socket = this.makeSocket(this.url);
    this.socket = socket;
    socket.onopen = () => {
      if (this.everConnected) this.onReconnect();
      this.everConnected = true;
    };
    socket.onmessage = (ev) => {
      let parsed: LiveEvent;
      try {
        parsed = JSON.parse(ev.data);
      } catch {
        return;
      }
      this.onEvent(parsed);
    };
    socket.onclose = () => {
      this.socket = null;
      if (this.closed) return;
      this.timer = setTimeout(() => this.connect(), this.reconnectDelayMs);
    };
  }

  close(): void {
    this.closed = true;
    if (this.timer !== null) clearTimeout(this.timer);
    this.socket?.close();
    this.socket = null;
  }
}
