import { scaleLinear, type ScaleLinear } from 'd3-scale';
import { el, fmt, text } from './svg.js';

export const PALETTE = [
  '#4477aa', '#ee6677', '#228833', '#ccbb44', '#66ccee', '#aa3377', '#bbbbbb',
  '#222222',
];

export interface SeriesStyle {
  color?: string;
  width?: number;
  dash?: string;
  opacity?: number;
}

export interface PanelOptions {
  x: number;
  y: number;
  width: number;
  height: number;
  xDomain: [number, number];
  yDomain: [number, number];
  xLabel: string;
  yLabel: string;
  title?: string;
  nice?: boolean;
}

export function extent(values: number[], pad = 0.05): [number, number] {
  const finite = values.filter(Number.isFinite);
  if (finite.length === 0) return [0, 1];
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const span = hi - lo;
  return [lo - pad * span, hi + pad * span];
}

function tickFormat(t: number): string {
  if (t !== 0 && (Math.abs(t) >= 1e4 || Math.abs(t) < 1e-3)) return t.toExponential(0);
  return String(Math.round(t * 1e6) / 1e6);
}

/** One cartesian panel: axes, grid, line/point/band/cell marks. */
export class Panel {
  readonly sx: ScaleLinear<number, number>;
  readonly sy: ScaleLinear<number, number>;
  private readonly o: PanelOptions;
  private readonly marks: string[] = [];

  constructor(o: PanelOptions) {
    this.o = o;
    this.sx = scaleLinear().domain(o.xDomain).range([o.x, o.x + o.width]);
    this.sy = scaleLinear().domain(o.yDomain).range([o.y + o.height, o.y]);
    if (o.nice !== false) {
      this.sx.nice();
      this.sy.nice();
    }
  }

  line(xs: number[], ys: number[], style: SeriesStyle = {}): this {
    // break the polyline at NaN instead of drawing through it
    let run: string[] = [];
    const flush = () => {
      if (run.length >= 2) {
        this.marks.push(
          el('polyline', {
            points: run.join(' '),
            fill: 'none',
            stroke: style.color ?? PALETTE[0],
            'stroke-width': style.width ?? 1.5,
            ...(style.dash ? { 'stroke-dasharray': style.dash } : {}),
            ...(style.opacity !== undefined ? { opacity: style.opacity } : {}),
          }),
        );
      }
      run = [];
    };
    for (let i = 0; i < xs.length; i++) {
      if (Number.isFinite(xs[i]) && Number.isFinite(ys[i])) {
        run.push(`${fmt(this.sx(xs[i]))},${fmt(this.sy(ys[i]))}`);
      } else {
        flush();
      }
    }
    flush();
    return this;
  }

  points(xs: number[], ys: number[], style: SeriesStyle = {}, r = 2.5): this {
    for (let i = 0; i < xs.length; i++) {
      if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) continue;
      this.marks.push(
        el('circle', {
          cx: this.sx(xs[i]),
          cy: this.sy(ys[i]),
          r,
          fill: style.color ?? PALETTE[0],
        }),
      );
    }
    return this;
  }

  /** Shaded y-band, e.g. mean +- sem. */
  band(xs: number[], lo: number[], hi: number[], color: string, opacity = 0.25): this {
    const fwd: string[] = [];
    const back: string[] = [];
    for (let i = 0; i < xs.length; i++) {
      if (!Number.isFinite(xs[i]) || !Number.isFinite(lo[i]) || !Number.isFinite(hi[i])) continue;
      fwd.push(`${fmt(this.sx(xs[i]))},${fmt(this.sy(lo[i]))}`);
      back.push(`${fmt(this.sx(xs[i]))},${fmt(this.sy(hi[i]))}`);
    }
    if (fwd.length >= 2) {
      this.marks.push(
        el('polygon', { points: [...fwd, ...back.reverse()].join(' '), fill: color, opacity }),
      );
    }
    return this;
  }

  errorBars(xs: number[], ys: number[], err: number[], color: string): this {
    for (let i = 0; i < xs.length; i++) {
      if (!Number.isFinite(ys[i]) || !Number.isFinite(err[i])) continue;
      const x = this.sx(xs[i]);
      this.marks.push(
        el('line', {
          x1: x, x2: x,
          y1: this.sy(ys[i] - err[i]), y2: this.sy(ys[i] + err[i]),
          stroke: color, 'stroke-width': 1,
        }),
      );
    }
    return this;
  }

  /** Filled rectangle in data coordinates (heatmap cell). */
  cell(x0: number, x1: number, y0: number, y1: number, fill: string): this {
    const px = Math.min(this.sx(x0), this.sx(x1));
    const py = Math.min(this.sy(y0), this.sy(y1));
    this.marks.push(
      el('rect', {
        x: px, y: py,
        width: Math.abs(this.sx(x1) - this.sx(x0)) + 0.5,
        height: Math.abs(this.sy(y1) - this.sy(y0)) + 0.5,
        fill,
      }),
    );
    return this;
  }

  hline(y: number, style: SeriesStyle = {}): this {
    this.marks.push(
      el('line', {
        x1: this.sx.range()[0], x2: this.sx.range()[1],
        y1: this.sy(y), y2: this.sy(y),
        stroke: style.color ?? '#888888',
        'stroke-width': style.width ?? 1,
        'stroke-dasharray': style.dash ?? '4,3',
      }),
    );
    return this;
  }

  render(): string {
    const { x, y, width, height, xLabel, yLabel, title } = this.o;
    const parts: string[] = [];
    const xt = this.sx.ticks(6);
    const yt = this.sy.ticks(6);
    for (const t of xt) {
      const px = this.sx(t);
      parts.push(el('line', { x1: px, x2: px, y1: y, y2: y + height, stroke: '#eeeeee' }));
      parts.push(el('line', { x1: px, x2: px, y1: y + height, y2: y + height + 4, stroke: '#333333' }));
      parts.push(text(px, y + height + 16, tickFormat(t), { 'font-size': 10, 'text-anchor': 'middle' }));
    }
    for (const t of yt) {
      const py = this.sy(t);
      parts.push(el('line', { x1: x, x2: x + width, y1: py, y2: py, stroke: '#eeeeee' }));
      parts.push(el('line', { x1: x - 4, x2: x, y1: py, y2: py, stroke: '#333333' }));
      parts.push(text(x - 6, py + 3, tickFormat(t), { 'font-size': 10, 'text-anchor': 'end' }));
    }
    parts.push(el('rect', { x, y, width, height, fill: 'none', stroke: '#333333' }));
    parts.push(text(x + width / 2, y + height + 32, xLabel, { 'font-size': 12, 'text-anchor': 'middle' }));
    parts.push(
      text(0, 0, yLabel, {
        'font-size': 12,
        'text-anchor': 'middle',
        transform: `translate(${fmt(x - 40)} ${fmt(y + height / 2)}) rotate(-90)`,
      }),
    );
    if (title) {
      parts.push(text(x + width / 2, y - 8, title, { 'font-size': 12, 'text-anchor': 'middle', 'font-weight': 'bold' }));
    }
    return parts.join('') + this.marks.join('');
  }
}

export interface LegendEntry {
  label: string;
  color: string;
  dash?: string;
}

export function legend(entries: LegendEntry[], x: number, y: number): string {
  const parts: string[] = [];
  entries.forEach((e, i) => {
    const ly = y + i * 16;
    parts.push(
      el('line', {
        x1: x, x2: x + 18, y1: ly, y2: ly,
        stroke: e.color, 'stroke-width': 2,
        ...(e.dash ? { 'stroke-dasharray': e.dash } : {}),
      }),
    );
    parts.push(text(x + 24, ly + 4, e.label, { 'font-size': 11 }));
  });
  return parts.join('');
}

/** Vertical colorbar for heatmaps. */
export function colorbar(
  x: number, y: number, height: number,
  domain: [number, number], colormap: (t: number) => string, label: string,
): string {
  const parts: string[] = [];
  const n = 64;
  const step = height / n;
  for (let i = 0; i < n; i++) {
    parts.push(
      el('rect', {
        x, y: y + height - (i + 1) * step,
        width: 12, height: step + 0.5,
        fill: colormap(i / (n - 1)),
      }),
    );
  }
  parts.push(el('rect', { x, y, width: 12, height, fill: 'none', stroke: '#333333' }));
  parts.push(text(x + 16, y + 8, tickFormat(domain[1]), { 'font-size': 10 }));
  parts.push(text(x + 16, y + height, tickFormat(domain[0]), { 'font-size': 10 }));
  parts.push(
    text(0, 0, label, {
      'font-size': 11,
      'text-anchor': 'middle',
      transform: `translate(${fmt(x + 40)} ${fmt(y + height / 2)}) rotate(-90)`,
    }),
  );
  return parts.join('');
}
