// Single-player audio playback with span support (tap a speeji, hear just
// that part). Starting any playback stops the previous one first.
export class SegmentPlayer {
    constructor(createAudio = () => new Audio(), onError = () => { }) {
        this.createAudio = createAudio;
        this.onError = onError;
        this.audio = null;
        this.cleanup = null;
        /** Most recent request, observable by the UI (and by tests). */
        this.lastRequest = null;
    }
    get playing() {
        return this.audio !== null;
    }
    async play(url, startS = 0, endS = null) {
        this.stop(); // single-player rule
        const audio = this.createAudio();
        this.audio = audio;
        this.lastRequest = { url, startS, endS };
        audio.src = url;
        audio.currentTime = startS;
        const onEnded = () => this.stop();
        audio.addEventListener("ended", onEnded);
        let onTime = null;
        if (endS !== null) {
            onTime = () => {
                if (audio.currentTime >= endS)
                    this.stop();
            };
            audio.addEventListener("timeupdate", onTime);
        }
        this.cleanup = () => {
            audio.removeEventListener("ended", onEnded);
            if (onTime)
                audio.removeEventListener("timeupdate", onTime);
        };
        try {
            await audio.play();
        }
        catch (err) {
            this.stop();
            this.onError(err instanceof Error ? err.message : String(err));
        }
    }
    stop() {
        if (this.audio === null)
            return;
        const audio = this.audio;
        this.cleanup?.();
        this.cleanup = null;
        this.audio = null;
        try {
            audio.pause();
        }
        catch {
            // a stub or an unloaded element; nothing to stop
        }
    }
}
