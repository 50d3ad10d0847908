// The 17 admissible ratio values and the direction toggle. The selector
// offers magnitudes 1..9 with verbal anchors; the toggle decides which
// node of the pair dominates, mapping magnitude v to "v" or "1/v".

export const SCALE_TOKENS = [
  "1/9", "1/8", "1/7", "1/6", "1/5", "1/4", "1/3", "1/2",
  "1", "2", "3", "4", "5", "6", "7", "8", "9",
] as const;

export type ScaleToken = (typeof SCALE_TOKENS)[number];

export const MAGNITUDES = ["1", "2", "3", "4", "5", "6", "7", "8", "9"] as const;

export const ANCHORS: Record<string, string> = {
  "1": "equal",
  "3": "moderate",
  "5": "strong",
  "7": "very strong",
  "9": "extreme",
};

export function anchorFor(magnitude: string): string {
  return ANCHORS[magnitude] ?? "";
}

export function isScaleToken(value: string): value is ScaleToken {
  return (SCALE_TOKENS as readonly string[]).includes(value);
}

/** Submission value for a magnitude and a direction choice. */
export function toSubmissionValue(magnitude: string, rowDominates: boolean): ScaleToken {
  if (!(MAGNITUDES as readonly string[]).includes(magnitude)) {
    throw new Error(`magnitude ${magnitude} is not on the scale`);
  }
  if (magnitude === "1" || rowDominates) {
    return magnitude as ScaleToken;
  }
  return `1/${magnitude}` as ScaleToken;
}

/** Split a stored token back into selector state. */
export function fromToken(token: ScaleToken): { magnitude: string; rowDominates: boolean } {
  if (token.startsWith("1/")) {
    return { magnitude: token.slice(2), rowDominates: false };
  }
  return { magnitude: token, rowDominates: true };
}
