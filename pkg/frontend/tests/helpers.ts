export interface Point {
  x: number;
  y: number;
}

/** Pull the vertex list of a named polyline out of a rendered SVG. */
export function polylinePoints(svg: string, label: string): Point[] {
  const pattern = new RegExp(`<polyline data-series="${label}" points="([^"]*)"`);
  const match = svg.match(pattern);
  if (!match) throw new Error(`no polyline labelled ${label}`);
  return match[1].split(" ").map((pair) => {
    const [x, y] = pair.split(",").map(Number);
    return { x, y };
  });
}

export function circleCount(svg: string, label: string): number {
  return svg.split(`<circle data-series="${label}"`).length - 1;
}

/** Density in pixel units: larger = taller curve (SVG y grows downward). */
export function heights(points: Point[]): number[] {
  const base = Math.max(...points.map((p) => p.y));
  return points.map((p) => base - p.y);
}
