export interface Point {
  x: number;
  y: number;
}

/**
 * Small deterministic force-directed layout: nodes start on a circle,
 * springs pull linked nodes together, and every pair repels. Layout is
 * cosmetic only; all displayed numbers come from the API.
 */
export function forceLayout(
  n: number,
  edges: number[][],
  width: number,
  height: number,
  iterations = 200,
): Point[] {
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.38;
  const pos: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / Math.max(n, 1);
    pos.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }
  if (n <= 2) return pos;

  const linked = new Set(edges.map(([a, b]) => `${Math.min(a, b)}:${Math.max(a, b)}`));
  const spring = radius * 0.9;
  for (let step = 0; step < iterations; step++) {
    const cool = 1 - step / iterations;
    const fx = new Array(n).fill(0);
    const fy = new Array(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i].x - pos[j].x;
        let dy = pos[i].y - pos[j].y;
        const dist = Math.max(Math.hypot(dx, dy), 1e-3);
        dx /= dist;
        dy /= dist;
        const repel = (spring * spring) / dist / n;
        fx[i] += dx * repel;
        fy[i] += dy * repel;
        fx[j] -= dx * repel;
        fy[j] -= dy * repel;
        if (linked.has(`${i}:${j}`)) {
          const pull = (dist - spring) * 0.08;
          fx[i] -= dx * pull;
          fy[i] -= dy * pull;
          fx[j] += dx * pull;
          fy[j] += dy * pull;
        }
      }
      // gentle pull to the center keeps disconnected pieces on screen
      fx[i] += (cx - pos[i].x) * 0.01;
      fy[i] += (cy - pos[i].y) * 0.01;
    }
    for (let i = 0; i < n; i++) {
      pos[i].x += fx[i] * cool;
      pos[i].y += fy[i] * cool;
      pos[i].x = Math.min(Math.max(pos[i].x, 16), width - 16);
      pos[i].y = Math.min(Math.max(pos[i].y, 16), height - 16);
    }
  }
  return pos;
}
