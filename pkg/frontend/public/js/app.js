// Application wiring: conversation bootstrap, recording flow, live updates,
// variant toggling. Everything external (API, sockets, microphone, audio
// output) is injected so the whole flow runs under test.
import { ApiClient } from "./api.js";
import { LiveFeed } from "./live.js";
import { ConversationModel } from "./model.js";
import { SegmentPlayer } from "./player.js";
import { MicrophoneSource, PermissionDenied, Recorder } from "./recorder.js";
import { VARIANTS } from "./types.js";
import { renderFailedUpload, renderMessage } from "./view.js";
export class App {
    constructor(root, deps) {
        this.root = root;
        this.deps = deps;
        this.model = new ConversationModel();
        this.variant = "emoji+color";
        this.conversationId = "";
        this.feed = null;
        this.pendingUpload = null;
        this.recorder = new Recorder(deps.captureSource);
    }
    async start() {
        this.renderShell();
        this.conversationId = this.deps.conversationId ?? (await this.ensureConversation());
        for (const message of await this.deps.api.listMessages(this.conversationId)) {
            this.model.upsert(message);
        }
        this.renderAllMessages();
        this.feed = new LiveFeed(this.deps.api.wsUrl(this.conversationId), (ev) => void this.onLiveEvent(ev.message_id), () => void this.backfill(), this.deps.liveOptions);
        this.feed.connect();
    }
    stop() {
        this.feed?.close();
        this.deps.player.stop();
    }
    async ensureConversation() {
        const fromUrl = new URLSearchParams(location.search).get("conversation");
        if (fromUrl)
            return fromUrl;
        const stored = localStorage.getItem("speejis.conversation");
        if (stored)
            return stored;
        const conv = await this.deps.api.createConversation("voice messages");
        localStorage.setItem("speejis.conversation", conv.conversation_id);
        return conv.conversation_id;
    }
    // -- live updates --------------------------------------------------------
    async onLiveEvent(messageId) {
        const message = await this.deps.api.getMessage(messageId);
        this.applyMessage(message);
    }
    async backfill() {
        const since = this.model.lastSeen ?? undefined;
        for (const message of await this.deps.api.listMessages(this.conversationId, since)) {
            this.applyMessage(message); // upsert dedups replays by id
        }
    }
    applyMessage(message) {
        const known = this.model.has(message.message_id);
        this.model.upsert(message);
        if (known) {
            this.replaceBubble(message);
        }
        else {
            this.appendBubble(message);
        }
    }
    // -- recording flow ------------------------------------------------------
    async toggleRecording() {
        const button = this.root.querySelector(".record");
        if (!this.recorder.recording) {
            try {
                await this.recorder.begin();
            }
            catch (err) {
                if (err instanceof PermissionDenied) {
                    this.showMicPrompt();
                    return; // no network request happened
                }
                throw err;
            }
            button.classList.add("recording");
            button.textContent = "stop recording";
            return;
        }
        button.classList.remove("recording");
        button.textContent = "start recording";
        const wav = await this.recorder.finish();
        await this.send(wav);
    }
    async send(wav) {
        const sender = this.root.querySelector(".sender")?.value ?? "";
        try {
            const message = await this.deps.api.postMessage(this.conversationId, wav, sender);
            this.applyMessage(message); // shows the processing shimmer immediately
        }
        catch (err) {
            this.pendingUpload = wav; // recording retained for retry
            const reason = err instanceof Error ? err.message : String(err);
            const bubble = renderFailedUpload(reason, () => {
                bubble.remove();
                const retained = this.pendingUpload;
                this.pendingUpload = null;
                if (retained)
                    void this.send(retained);
            });
            this.messagesNode().appendChild(bubble);
        }
    }
    showMicPrompt() {
        if (this.root.querySelector(".mic-prompt"))
            return;
        const prompt = document.createElement("p");
        prompt.className = "mic-prompt";
        prompt.textContent = "microphone access is needed to record a voice message";
        this.root.querySelector("footer")?.appendChild(prompt);
    }
    // -- variants ------------------------------------------------------------
    setVariant(variant) {
        if (variant === this.variant)
            return;
        this.variant = variant; // presentation only: no network, no mutation
        this.renderAllMessages();
        this.root.querySelectorAll(".variant").forEach((btn) => {
            btn.classList.toggle("selected", btn.dataset.variant === variant);
        });
    }
    // -- rendering -----------------------------------------------------------
    viewDeps() {
        return {
            player: this.deps.player,
            audioUrl: (mid) => this.deps.api.audioUrl(mid),
        };
    }
    messagesNode() {
        return this.root.querySelector(".messages");
    }
    appendBubble(message) {
        this.messagesNode().appendChild(renderMessage(message, this.variant, this.viewDeps()));
    }
    replaceBubble(message) {
        const existing = this.messagesNode().querySelector(`[data-message-id="${message.message_id}"]`);
        const fresh = renderMessage(message, this.variant, this.viewDeps());
        if (existing) {
            existing.replaceWith(fresh); // in place, no refresh
        }
        else {
            this.messagesNode().appendChild(fresh);
        }
    }
    renderAllMessages() {
        const node = this.messagesNode();
        node.textContent = "";
        for (const message of this.model.ordered()) {
            node.appendChild(renderMessage(message, this.variant, this.viewDeps()));
        }
    }
    renderShell() {
        this.root.textContent = "";
        const header = document.createElement("header");
        header.className = "topbar";
        const title = document.createElement("h1");
        title.textContent = "speejis";
        header.appendChild(title);
        for (const variant of VARIANTS) {
            const btn = document.createElement("button");
            btn.type = "button";
            btn.className = "variant" + (variant === this.variant ? " selected" : "");
            btn.dataset.variant = variant;
            btn.textContent = variant;
            btn.addEventListener("click", () => this.setVariant(variant));
            header.appendChild(btn);
        }
        this.root.appendChild(header);
        const main = document.createElement("main");
        main.className = "messages";
        this.root.appendChild(main);
        const footer = document.createElement("footer");
        const sender = document.createElement("input");
        sender.className = "sender";
        sender.placeholder = "your name";
        footer.appendChild(sender);
        const record = document.createElement("button");
        record.type = "button";
        record.className = "record";
        record.textContent = "start recording";
        record.addEventListener("click", () => void this.toggleRecording());
        footer.appendChild(record);
        this.root.appendChild(footer);
    }
}
/** Browser entry point with the real implementations. */
export function bootDefault() {
    const root = document.getElementById("speejis-app");
    if (!root)
        throw new Error("missing #speejis-app element");
    const app = new App(root, {
        api: new ApiClient(""),
        captureSource: new MicrophoneSource(),
        player: new SegmentPlayer(undefined, (msg) => showToast(msg)),
    });
    void app.start();
    return app;
}
function showToast(message) {
    const toast = document.createElement("div");
    toast.className = "toast";
    toast.textContent = message;
    document.body.appendChild(toast);
    setTimeout(() => toast.remove(), 4000);
}
