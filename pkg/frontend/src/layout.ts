/** Deterministic 2D force-directed layout (Fruchterman–Reingold). The
 * server exports topology only; positions are a client concern. */

export interface Point {
  x: number;
  y: number;
}

/** Small seeded PRNG (mulberry32) so layouts are stable across renders. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  nodeIds: string[],
  edges: [string, string][],
  width: number,
  height: number,
  iterations = 60,
  seed = 7,
): Map<string, Point> {
  const rand = mulberry32(seed);
  const n = nodeIds.length;
  const positions = new Map<string, Point>();
  if (n === 0) return positions;

  const index = new Map(nodeIds.map((id, i) => [id, i]));
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    xs[i] = (rand() - 0.5) * width;
    ys[i] = (rand() - 0.5) * height;
  }
  const area = width * height;
  const ideal = Math.sqrt(area / n);
  let temperature = width / 10;

  const pairs: [number, number][] = [];
  for (const [u, v] of edges) {
    const i = index.get(u);
    const j = index.get(v);
    if (i !== undefined && j !== undefined && i !== j) pairs.push([i, j]);
  }

  for (let iter = 0; iter < iterations; iter++) {
    const dx = new Float64Array(n);
    const dy = new Float64Array(n);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let vx = xs[i] - xs[j];
        let vy = ys[i] - ys[j];
        let dist = Math.hypot(vx, vy);
        if (dist < 1e-9) {
          vx = rand() - 0.5;
          vy = rand() - 0.5;
          dist = Math.hypot(vx, vy);
        }
        const repulse = (ideal * ideal) / dist;
        dx[i] += (vx / dist) * repulse;
        dy[i] += (vy / dist) * repulse;
        dx[j] -= (vx / dist) * repulse;
        dy[j] -= (vy / dist) * repulse;
      }
    }
    for (const [i, j] of pairs) {
      const vx = xs[i] - xs[j];
      const vy = ys[i] - ys[j];
      const dist = Math.max(Math.hypot(vx, vy), 1e-9);
      const attract = (dist * dist) / ideal;
      dx[i] -= (vx / dist) * attract;
      dy[i] -= (vy / dist) * attract;
      dx[j] += (vx / dist) * attract;
      dy[j] += (vy / dist) * attract;
    }
    for (let i = 0; i < n; i++) {
      const norm = Math.max(Math.hypot(dx[i], dy[i]), 1e-9);
      xs[i] += (dx[i] / norm) * Math.min(norm, temperature);
      ys[i] += (dy[i] / norm) * Math.min(norm, temperature);
    }
    temperature *= 0.95;
  }

  // scale into the viewport with a margin
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const margin = 20;
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  nodeIds.forEach((id, i) => {
    positions.set(id, {
      x: margin + ((xs[i] - minX) / spanX) * (width - 2 * margin),
      y: margin + ((ys[i] - minY) / spanY) * (height - 2 * margin),
    });
  });
  return positions;
}
