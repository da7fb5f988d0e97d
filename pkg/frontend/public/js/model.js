// Conversation state: ordered, deduplicated messages keyed by id.
// Events and backfills both funnel through upsert, so a message seen twice
// (live event + reconnect backfill) lands exactly once.
export class ConversationModel {
    constructor() {
        this.byId = new Map();
        /** Newest created_at seen; the reconnect backfill cursor. */
        this.lastSeen = null;
    }
    upsert(message) {
        this.byId.set(message.message_id, message);
        if (this.lastSeen === null || message.created_at > this.lastSeen) {
            this.lastSeen = message.created_at;
        }
    }
    get(messageId) {
        return this.byId.get(messageId);
    }
    has(messageId) {
        return this.byId.has(messageId);
    }
    /** Creation order, ties broken by id — same contract as the server. */
    ordered() {
        return [...this.byId.values()].sort((a, b) => a.created_at < b.created_at
            ? -1
            : a.created_at > b.created_at
                ? 1
                : a.message_id < b.message_id
                    ? -1
                    : 1);
    }
    get size() {
        return this.byId.size;
    }
}
