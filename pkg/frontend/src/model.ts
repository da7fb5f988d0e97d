// Conversation state: ordered, deduplicated messages keyed by id.
// Events and backfills both funnel through upsert, so a message seen twice
// (live event + reconnect backfill) lands exactly once.

import type { Message } from "./types.js";

export class ConversationModel {
  private byId = new Map<string, Message>();

  /** Newest created_at seen; the reconnect backfill cursor. */
  lastSeen: string | null = null;

  upsert(message: Message): void {
    this.byId.set(message.message_id, message);
    if (this.lastSeen === null || message.created_at > this.lastSeen) {
      this.lastSeen = message.created_at;
    }
  }

  get(messageId: string): Message | undefined {
    return this.byId.get(messageId);
  }

  has(messageId: string): boolean {
    return this.byId.has(messageId);
  }

  /** Creation order, ties broken by id — same contract as the server. */
  ordered(): Message[] {
    return [...this.byId.values()].sort((a, b) =>
      a.created_at < b.created_at
        ? -1
        : a.created_at > b.created_at
          ? 1
          : a.message_id < b.message_id
            ? -1
            : 1,
    );
  }

  get size(): number {
    return this.byId.size;
  }
}
