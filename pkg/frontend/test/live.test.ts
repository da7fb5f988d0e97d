import { describe, expect, it, vi } from "vitest";

import { LiveFeed } from "../src/live.js";
import type { LiveEvent } from "../src/types.js";
import { socketFactory } from "./helpers.js";

describe("LiveFeed", () => {
  it("forwards parsed events", () => {
    const { sockets, make } = socketFactory();
    const events: LiveEvent[] = [];
    const feed = new LiveFeed("ws://x", (ev) => events.push(ev), () => {}, { makeSocket: make });
    feed.connect();
    sockets[0].open();
    sockets[0].emit({ type: "message.created", message_id: "m1", status: "processing" });
    expect(events).toEqual([{ type: "message.created", message_id: "m1", status: "processing" }]);
    feed.close();
  });

  it("ignores unparseable frames", () => {
    const { sockets, make } = socketFactory();
    const events: LiveEvent[] = [];
    const feed = new LiveFeed("ws://x", (ev) => events.push(ev), () => {}, { makeSocket: make });
    feed.connect();
    sockets[0].onmessage?.({ data: "{broken" });
    expect(events).toEqual([]);
    feed.close();
  });

  it("reconnects after a drop and calls the backfill hook once per reconnect", async () => {
    vi.useFakeTimers();
    try {
      const { sockets, make } = socketFactory();
      const reconnects: number[] = [];
      const feed = new LiveFeed("ws://x", () => {}, () => reconnects.push(1), {
        makeSocket: make,
        reconnectDelayMs: 50,
      });
      feed.connect();
      sockets[0].open(); // first connection: no backfill
      expect(reconnects.length).toBe(0);

      sockets[0].drop();
      await vi.advanceTimersByTimeAsync(60);
      expect(sockets.length).toBe(2);
      sockets[1].open();
      expect(reconnects.length).toBe(1);
      feed.close();
    } finally {
      vi.useRealTimers();
    }
  });

  it("stays closed after close()", async () => {
    vi.useFakeTimers();
    try {
      const { sockets, make } = socketFactory();
      const feed = new LiveFeed("ws://x", () => {}, () => {}, {
        makeSocket: make,
        reconnectDelayMs: 10,
      });
      feed.connect();
      feed.close();
      expect(sockets[0].closedByClient).toBe(true);
      sockets[0].drop();
      await vi.advanceTimersByTimeAsync(100);
      expect(sockets.length).toBe(1); // no zombie reconnect
    } finally {
      vi.useRealTimers();
    }
  });
});
