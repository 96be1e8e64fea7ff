import { existsSync } from 'node:fs';
import { distinct, numbers, readCsv, where, type Table } from '../csv.js';
import { PALETTE, Panel, extent, legend, type LegendEntry } from '../plot.js';
import { document } from '../svg.js';
import { dataPath, type Recipe } from './common.js';

function orderPanel(t: Table, x0: number): [string, LegendEntry[]] {
  const configs = distinct(t, 'config');
  const p = new Panel({
    x: x0, y: 30, width: 300, height: 300,
    xDomain: [0, 1.05],
    yDomain: extent([...numbers(t, 'reflectance'), 0, 1]),
    xLabel: 'numerical aperture NA',
    yLabel: 'reflectance (fraction)',
    title: 'Order block',
  });
  const entries: LegendEntry[] = [];
  configs.forEach((cfg, i) => {
    const sub = where(t, 'config', cfg);
    const mirror = cfg === 'mirror';
    const style = mirror
      ? { color: '#222222', dash: '5,3' as string | undefined }
      : { color: PALETTE[i % PALETTE.length], dash: undefined };
    p.line(numbers(sub, 'na'), numbers(sub, 'reflectance'), { ...style, width: 1.8 });
    entries.push({ label: cfg, color: style.color, dash: style.dash });
  });
  return [p.render(), entries];
}

function fillingPanel(t: Table, x0: number): [string, LegendEntry[]] {
  const models = distinct(t, 'model');
  const fillings = distinct(t, 'filling');
  const p = new Panel({
    x: x0, y: 30, width: 300, height: 300,
    xDomain: [0, 1.05],
    yDomain: extent([...numbers(t, 'reflectance'), 0, 1]),
    xLabel: 'numerical aperture NA',
    yLabel: 'reflectance (fraction)',
    title: 'Filling block',
  });
  const entries: LegendEntry[] = [];
  models.forEach((m, mi) => {
    const dash = mi === 0 ? undefined : '5,3';
    fillings.forEach((f, fi) => {
      const sub = where(where(t, 'model', m), 'filling', f);
      const color = PALETTE[fi % PALETTE.length];
      p.line(numbers(sub, 'na'), numbers(sub, 'reflectance'),
        { color, width: 1.8, ...(dash ? { dash } : {}) });
      if (mi === 0) entries.push({ label: `η = ${f}`, color });
    });
    entries.push({ label: m, color: '#555555', dash });
  });
  return [p.render(), entries];
}

export const naSweep: Recipe = {
  name: 'na-sweep',
  files: ['na_sweep_order.csv', 'na_sweep_filling.csv'],
  render(dir) {
    const parts: string[] = [];
    let entries: LegendEntry[] = [];
    let x0 = 70;
    const orderPath = dataPath(dir, 'na_sweep_order.csv');
    const fillingPath = dataPath(dir, 'na_sweep_filling.csv');
    if (!existsSync(orderPath) && !existsSync(fillingPath)) {
      throw new Error(`na-sweep: neither CSV block found in ${dir}`);
    }
    if (existsSync(orderPath)) {
      const [svg, e] = orderPanel(readCsv(orderPath), x0);
      parts.push(svg);
      entries = entries.concat(e);
      x0 += 360;
    }
    if (existsSync(fillingPath)) {
      const [svg, e] = fillingPanel(readCsv(fillingPath), x0);
      parts.push(svg);
      entries = entries.concat(e);
      x0 += 360;
    }
    parts.push(legend(entries, x0, 40));
    return document(x0 + 140, 390, parts);
  },
};
