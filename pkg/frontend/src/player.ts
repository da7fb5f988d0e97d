// Single-player audio playback with span support (tap a speeji, hear just
// that part). Starting any playback stops the previous one first.

export interface AudioLike {
  src: string;
  currentTime: number;
  play(): Promise<void>;
  pause(): void;
  addEventListener(type: string, listener: () => void): void;
  removeEventListener(type: string, listener: () => void): void;
}

export interface PlayRequest {
  url: string;
  startS: number;
  endS: number | null; // null: play to the natural end
}

export class SegmentPlayer {
  private audio: AudioLike | null = null;
  private cleanup: (() => void) | null = null;

  /** Most recent request, observable by the UI (and by tests). */
  lastRequest: PlayRequest | null = null;

  constructor(
    private createAudio: () => AudioLike = () => new Audio(),
    private onError: (message: string) => void = () => {},
  ) {}

  get playing(): boolean {
    return this.audio !== null;
  }

  async play(url: string, startS = 0, endS: number | null = null): Promise<void> {
    this.stop(); // single-player rule
    const audio = this.createAudio();
    this.audio = audio;
    this.lastRequest = { url, startS, endS };
    audio.src = url;
    audio.currentTime = startS;

    const onEnded = () => this.stop();
    audio.addEventListener("ended", onEnded);
    let onTime: (() => void) | null = null;
    if (endS !== null) {
      onTime = () => {
        if (audio.currentTime >= endS) this.stop();
      };
      audio.addEventListener("timeupdate", onTime);
    }
    this.cleanup = () => {
      audio.removeEventListener("ended", onEnded);
      if (onTime) audio.removeEventListener("timeupdate", onTime);
    };

    try {
      await audio.play();
    } catch (err) {
      this.stop();
      this.onError(err instanceof Error ? err.message : String(err));
    }
  }

  stop(): void {
    if (this.audio === null) return;
    const audio = this.audio;
    this.cleanup?.();
    this.cleanup = null;
    this.audio = null;
    try {
      audio.pause();
    } catch {
      // a stub or an unloaded element; nothing to stop
    }
  }
}
