import { describe, expect, it } from 'vitest';
import { PALETTE, Panel, colorbar, extent, legend } from '../src/plot.js';
import { document, el, esc, fmt, text } from '../src/svg.js';

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe('svg primitives', () => {
  it('escapes markup characters', () => {
    expect(esc('a<b & "c">')).toBe('a&lt;b &amp; &quot;c&quot;&gt;');
  });

  it('formats coordinates to two decimals', () => {
    expect(fmt(1.234567)).toBe('1.23');
    expect(fmt(2)).toBe('2');
    expect(fmt(-0.001)).toBe('0');
    expect(fmt(NaN)).toBe('0');
    expect(fmt(-Infinity)).toBe('0');
  });

  it('self-closes empty elements', () => {
    expect(el('rect', { x: 1 })).toBe('<rect x="1"/>');
    expect(el('g', {}, '<a/>')).toBe('<g><a/></g>');
  });

  it('text escapes content', () => {
    const s = text(0, 0, 'Γ < Γ₀');
    expect(s).toContain('Γ &lt; Γ₀');
    expect(s).toContain('font-family');
  });

  it('document wraps parts with a white background', () => {
    const s = document(400, 300, ['<g/>']);
    expect(s).toContain('viewBox="0 0 400 300"');
    expect(s).toContain('fill="white"');
    expect(s.startsWith('<svg xmlns=')).toBe(true);
    expect(s.endsWith('</svg>')).toBe(true);
  });
});

describe('extent', () => {
  it('pads the data range', () => {
    expect(extent([0, 10])).toEqual([-0.5, 10.5]);
  });

  it('ignores NaN values', () => {
    const [lo, hi] = extent([1, NaN, 5]);
    expect(lo).toBeCloseTo(0.8, 12);
    expect(hi).toBeCloseTo(5.2, 12);
  });

  it('falls back to [0, 1] with no finite data', () => {
    expect(extent([NaN, NaN])).toEqual([0, 1]);
  });

  it('opens up a degenerate range', () => {
    const [lo, hi] = extent([3, 3]);
    expect(lo).toBeLessThan(3);
    expect(hi).toBeGreaterThan(3);
  });
});

function panel(): Panel {
  return new Panel({
    x: 50, y: 20, width: 200, height: 150,
    xDomain: [0, 10], yDomain: [0, 10],
    xLabel: 'xq', yLabel: 'yq', title: 'tq', nice: false,
  });
}

describe('Panel', () => {
  it('breaks polylines at NaN', () => {
    const s = panel().line([0, 1, 2, 3, 4], [1, 2, NaN, 3, 4]).render();
    expect(count(s, '<polyline')).toBe(2);
  });

  it('drops runs shorter than two points', () => {
    const s = panel().line([0, 1, 2], [1, NaN, 2]).render();
    expect(count(s, '<polyline')).toBe(0);
  });

  it('skips non-finite points and error bars', () => {
    const s = panel()
      .points([1, 2, 3], [1, NaN, 3])
      .errorBars([1, 2, 3], [1, 1, NaN], [0.1, NaN, 0.1], '#000000')
      .render();
    expect(count(s, '<circle')).toBe(2);
    expect(count(s, 'stroke="#000000"')).toBe(1);
  });

  it('draws bands as a single polygon', () => {
    const s = panel().band([0, 1, 2], [1, 1, 1], [2, 2, 2], '#ff0000').render();
    expect(count(s, '<polygon')).toBe(1);
  });

  it('renders labels, title, frame, and ticks', () => {
    const s = panel().render();
    expect(s).toContain('>xq</text>');
    expect(s).toContain('>yq</text>');
    expect(s).toContain('>tq</text>');
    expect(s).toContain('fill="none" stroke="#333333"');
    expect(s).toContain('>0</text>');
    expect(s).toContain('>10</text>');
  });

  it('uses exponential tick labels for tiny values', () => {
    const p = new Panel({
      x: 0, y: 0, width: 100, height: 100,
      xDomain: [0, 5e-4], yDomain: [0, 1],
      xLabel: '', yLabel: '', nice: false,
    });
    expect(p.render()).toContain('1e-4');
  });

  it('heatmap cells cover the data rectangle', () => {
    const s = panel().cell(0, 5, 0, 5, '#123456').render();
    expect(s).toContain('fill="#123456"');
    expect(count(s, '<rect')).toBe(2); // frame + cell
  });

  it('hline is dashed by default', () => {
    expect(panel().hline(5).render()).toContain('stroke-dasharray="4,3"');
  });
});

describe('legend and colorbar', () => {
  it('legend lists every entry', () => {
    const s = legend(
      [
        { label: 'one', color: PALETTE[0] },
        { label: 'two', color: PALETTE[1], dash: '5,3' },
      ],
      10, 10,
    );
    expect(s).toContain('>one</text>');
    expect(s).toContain('>two</text>');
    expect(count(s, 'stroke-dasharray')).toBe(1);
  });

  it('colorbar draws the ramp and its label', () => {
    const s = colorbar(0, 0, 128, [0, 2], (t) => `rgb(0,0,${Math.round(255 * t)})`, 'zlab');
    expect(count(s, '<rect')).toBe(65); // 64 steps + frame
    expect(s).toContain('>zlab</text>');
    expect(s).toContain('>2</text>');
    expect(s).toContain('>0</text>');
  });
});
