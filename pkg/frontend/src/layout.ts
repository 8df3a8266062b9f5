// Pure geometry and palettes for the board view.

export interface Point {
  x: number;
  y: number;
}

export function circularLayout(n: number, size: number, margin = 40): Point[] {
  const r = Math.max(size / 2 - margin, 10);
  const cx = size / 2;
  const cy = size / 2;
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    pts.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  return pts;
}

const TYPE_FILL: Record<string, string> = {
  "1": "#8fce9b",
  "2": "#8fb8e8",
  "3a": "#e8c76f",
  "3b": "#e89a6f",
  "-": "#d88adb",
};

export function typeColor(type: string): string {
  return TYPE_FILL[type] ?? "#cccccc";
}

export function typeLabel(type: string): string {
  return type === "-" ? "—" : type;
}

/** Hull outline of a component on the circular layout: its vertices in
 * board order already trace a convex polygon. */
export function hullPoints(vertices: number[], positions: Point[]): Point[] {
  return [...vertices].sort((a, b) => a - b).map((v) => positions[v]);
}
