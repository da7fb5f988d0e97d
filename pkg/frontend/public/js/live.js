// Live event feed over WebSocket with automatic reconnect.
// Events are live-only on the wire; after a reconnect the app backfills via
// the listing endpoint, so `onReconnect` is where missed history comes from.
export class LiveFeed {
    constructor(url, onEvent, onReconnect, options = {}) {
        this.url = url;
        this.onEvent = onEvent;
        this.onReconnect = onReconnect;
        this.socket = null;
        this.timer = null;
        this.closed = false;
        this.everConnected = false;
        this.makeSocket = options.makeSocket ?? ((u) => new WebSocket(u));
        this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
    }
    connect() {
        if (this.closed)
            return;
        const socket = this.makeSocket(this.url);
        this.socket = socket;
        socket.onopen = () => {
            if (this.everConnected)
                this.onReconnect();
            this.everConnected = true;
        };
        socket.onmessage = (ev) => {
            let parsed;
            try {
                parsed = JSON.parse(ev.data);
            }
            catch {
                return;
            }
            this.onEvent(parsed);
        };
        socket.onclose = () => {
            this.socket = null;
            if (this.closed)
                return;
            this.timer = setTimeout(() => this.connect(), this.reconnectDelayMs);
        };
    }
    close() {
        this.closed = true;
        if (this.timer !== null)
            clearTimeout(this.timer);
        this.socket?.close();
        this.socket = null;
    }
}
