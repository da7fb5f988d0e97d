// Thin REST client; the message service is the only network surface.

import type { Message } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function asJson(resp: Response): Promise<any> {
  if (!resp.ok) {
    let detail = `HTTP ${resp.status}`;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep the status line
    }
    throw new ApiError(resp.status, detail);
  }
  return resp.json();
}

export interface Api {
  createConversation(title: string): Promise<{ conversation_id: string }>;
  listMessages(cid: string, since?: string): Promise<Message[]>;
  postMessage(cid: string, wav: Blob, sender: string): Promise<Message>;
  getMessage(mid: string): Promise<Message>;
  audioUrl(mid: string): string;
  wsUrl(cid: string): string;
}

export class ApiClient implements Api {
  constructor(
    private base: string = "",
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  async createConversation(title: string): Promise<{ conversation_id: string }> {
    const resp = await this.fetchFn(`${this.base}/api/conversations`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ title }),
    });
    return asJson(resp);
  }

  async listMessages(cid: string, since?: string): Promise<Message[]> {
    const query = since ? `?since=${encodeURIComponent(since)}` : "";
    const resp = await this.fetchFn(`${this.base}/api/conversations/${cid}/messages${query}`);
    const body = await asJson(resp);
    return body.messages;
  }

  async postMessage(cid: string, wav: Blob, sender: string): Promise<Message> {
    const form = new FormData();
    form.append("audio", wav, "message.wav");
    form.append("sender", sender);
    const resp = await this.fetchFn(`${this.base}/api/conversations/${cid}/messages`, {
      method: "POST",
      body: form,
    });
    return asJson(resp);
  }

  async getMessage(mid: string): Promise<Message> {
    const resp = await this.fetchFn(`${this.base}/api/messages/${mid}`);
    return asJson(resp);
  }

  audioUrl(mid: string): string {
    return `${this.base}/api/messages/${mid}/audio`;
  }

  wsUrl(cid: string): string {
    const loc = typeof location !== "undefined" ? location : ({ protocol: "http:", host: "localhost" } as Location);
    const proto = loc.protocol === "https:" ? "wss" : "ws";
    const host = this.base ? this.base.replace(/^https?:\/\//, "") : loc.host;
    return `${proto}://${host}/api/ws?conversation=${cid}`;
  }
}
