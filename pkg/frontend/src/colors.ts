// Same palette as the core plotting module; label 0 (noise) is grey.

export const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#e15759",
  "#76b7b2",
  "#59a147",
  "#edc948",
  "#b07aa1",
  "#ff9da7",
  "#9c755f",
  "#bab0ac",
] as const;

export const NOISE_COLOR = "#999999";

export function colorFor(label: number): string {
  if (label === 0) return NOISE_COLOR;
  return PALETTE[(label - 1) % PALETTE.length];
}
