import { distinct, numbers, readCsv, where } from '../csv.js';
import { PALETTE, Panel, extent, legend } from '../plot.js';
import { document } from '../svg.js';
import { dataPath, type Recipe } from './common.js';

export const spreadSweep: Recipe = {
  name: 'spread-sweep',
  files: ['spread_sweep.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'spread_sweep.csv'));
    const waists = distinct(t, 'waist_w0_a');
    const xDomain = extent(numbers(t, 'spread_a'), 0);

    const top = new Panel({
      x: 70, y: 30, width: 440, height: 190,
      xDomain, yDomain: extent([...numbers(t, 'r_peak'), 0]),
      xLabel: '', yLabel: 'peak reflectance (fraction)',
      title: 'Response vs positional spread',
    });
    const bottom = new Panel({
      x: 70, y: 270, width: 440, height: 190,
      xDomain, yDomain: extent([...numbers(t, 'gamma_a_Gamma0'), 1.0]),
      xLabel: 'isotropic spread σ (a)', yLabel: 'linewidth Γ (Γ₀)',
    });
    bottom.hline(1);
    waists.forEach((w, i) => {
      const sub = where(t, 'waist_w0_a', w);
      const x = numbers(sub, 'spread_a');
      const color = PALETTE[i % PALETTE.length];
      top.line(x, numbers(sub, 'r_peak'), { color, width: 1.8 })
        .points(x, numbers(sub, 'r_peak'), { color });
      bottom.line(x, numbers(sub, 'gamma_a_Gamma0'), { color, width: 1.8 })
        .points(x, numbers(sub, 'gamma_a_Gamma0'), { color });
    });

    return document(680, 525, [
      top.render(),
      bottom.render(),
      legend(waists.map((w, i) => ({
        label: `w₀ = ${w} a`,
        color: PALETTE[i % PALETTE.length],
      })), 530, 40),
    ]);
  },
};
