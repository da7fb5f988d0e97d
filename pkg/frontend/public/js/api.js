// Thin REST client; the message service is the only network surface.
export class ApiError extends Error {
    constructor(status, detail) {
        super(detail);
        this.status = status;
    }
}
async function asJson(resp) {
    if (!resp.ok) {
        let detail = `HTTP ${resp.status}`;
        try {
            const body = await resp.json();
            if (body && typeof body.detail === "string")
                detail = body.detail;
        }
        catch {
            // keep the status line
        }
        throw new ApiError(resp.status, detail);
    }
    return resp.json();
}
export class ApiClient {
    constructor(base = "", fetchFn = (...args) => fetch(...args)) {
        this.base = base;
        this.fetchFn = fetchFn;
    }
    async createConversation(title) {
        const resp = await this.fetchFn(`${this.base}/api/conversations`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ title }),
        });
        return asJson(resp);
    }
    async listMessages(cid, since) {
        const query = since ? `?since=${encodeURIComponent(since)}` : "";
        const resp = await this.fetchFn(`${this.base}/api/conversations/${cid}/messages${query}`);
        const body = await asJson(resp);
        return body.messages;
    }
    async postMessage(cid, wav, sender) {
        const form = new FormData();
        form.append("audio", wav, "message.wav");
        form.append("sender", sender);
        const resp = await this.fetchFn(`${this.base}/api/conversations/${cid}/messages`, {
            method: "POST",
            body: form,
        });
        return asJson(resp);
    }
    async getMessage(mid) {
        const resp = await this.fetchFn(`${this.base}/api/messages/${mid}`);
        return asJson(resp);
    }
    audioUrl(mid) {
        return `${this.base}/api/messages/${mid}/audio`;
    }
    wsUrl(cid) {
        const loc = typeof location !== "undefined" ? location : { protocol: "http:", host: "localhost" };
        const proto = loc.protocol === "https:" ? "wss" : "ws";
        const host = this.base ? this.base.replace(/^https?:\/\//, "") : loc.host;
        return `${proto}://${host}/api/ws?conversation=${cid}`;
    }
}
