// Wire types mirroring the service API and descriptor schema.

export interface VadPoint {
  valence: number;
  arousal: number;
  dominance: number;
}

export interface EmojiEntry {
  glyph: string;
  valence: number;
  arousal: number;
  label: string;
}

export interface BarColor {
  hue: number;
  saturation: number;
  lightness: number;
  neutral: boolean;
}

export interface WaveBar {
  start_s: number;
  end_s: number;
  height: number;
  color: BarColor;
}

export interface ChunkEntry {
  span: { start_s: number; end_s: number; index: number };
  vad: VadPoint;
}

export interface InterestSegment {
  start_s: number;
  end_s: number;
  centroid: VadPoint;
  emoji: EmojiEntry;
  text: string;
}

export interface TranscriptSegment {
  start_s: number;
  end_s: number;
  text: string;
}

export interface Descriptor {
  message_id: string;
  engine_version: string;
  generated_by: "ai";
  status: "done" | "augmentation_failed";
  duration_s: number;
  ending_span: { start_s: number; end_s: number };
  overall: VadPoint | null;
  ending: VadPoint | null;
  overall_emoji: EmojiEntry | null;
  ending_emoji: EmojiEntry | null;
  chunks: ChunkEntry[];
  bars: WaveBar[];
  interest_segments: InterestSegment[];
  transcript: TranscriptSegment[];
}

export interface Message {
  message_id: string;
  conversation_id: string;
  sender: string;
  created_at: string;
  status: "processing" | "done" | "augmentation_failed";
  audio_ref: string;
  descriptor: Descriptor | null;
}

export interface LiveEvent {
  type: "message.created" | "message.augmented";
  message_id: string;
  status: string;
}

/** The three presentation probes; switching never touches the descriptor. */
export type Variant = "baseline" | "emoji" | "emoji+color";

export const VARIANTS: Variant[] = ["baseline", "emoji", "emoji+color"];
