/** Color helpers shared by the chart renderers. */

/** Gray reserved for "no data": a heatmap cell with no articles must be
 * visually distinct from a cell whose mean is 0. */
export const ABSENT_COLOR = "#cccccc";

const PALETTE = [
  "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
];

export function categorical(index: number): string {
  return PALETTE[((index % PALETTE.length) + PALETTE.length) % PALETTE.length];
}

/** Diverging blue–white–red scale over [-1, 1]; 0 maps to white. */
export function diverging(value: number): string {
  const v = Math.max(-1, Math.min(1, value));
  const t = Math.abs(v);
  const mix = (channel: number) => Math.round(255 + (channel - 255) * t);
  // negative → blue (#2166ac), positive → red (#b2182b)
  const target = v < 0 ? [33, 102, 172] : [178, 24, 43];
  return `rgb(${mix(target[0])}, ${mix(target[1])}, ${mix(target[2])})`;
}
