import { join } from 'node:path';

export interface Recipe {
  name: string;
  /** CSV files consumed; the first is required, the rest optional. */
  files: string[];
  render(dataDir: string): string;
}

export function dataPath(dir: string, file: string): string {
  return join(dir, file);
}

export function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

/** Long-format (x, y, value) triples onto a dense grid keyed by position. */
export function gridFromLong(xs: number[], ys: number[], vs: number[]) {
  const gx = uniqueSorted(xs);
  const gy = uniqueSorted(ys);
  const lookup = new Map<string, number>();
  for (let i = 0; i < xs.length; i++) lookup.set(`${xs[i]}|${ys[i]}`, vs[i]);
  return {
    xs: gx,
    ys: gy,
    get(ix: number, iy: number): number {
      const v = lookup.get(`${gx[ix]}|${gy[iy]}`);
      return v === undefined ? NaN : v;
    },
  };
}

/** Cell boundaries around bin centers (midpoints, extrapolated at the ends). */
export function cellEdges(centers: number[]): number[] {
  if (centers.length === 1) return [centers[0] - 0.5, centers[0] + 0.5];
  const edges = [centers[0] - (centers[1] - centers[0]) / 2];
  for (let i = 0; i < centers.length - 1; i++) {
    edges.push((centers[i] + centers[i + 1]) / 2);
  }
  const n = centers.length;
  edges.push(centers[n - 1] + (centers[n - 1] - centers[n - 2]) / 2);
  return edges;
}
