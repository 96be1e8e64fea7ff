import { distinct, numbers, readCsv, where } from '../csv.js';
import { PALETTE, Panel, extent, legend } from '../plot.js';
import { document } from '../svg.js';
import { dataPath, type Recipe } from './common.js';

export const fillingSweep: Recipe = {
  name: 'filling-sweep',
  files: ['filling_sweep.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'filling_sweep.csv'));
    const sigmas = distinct(t, 'sigma_z_a');
    const p = new Panel({
      x: 70, y: 30, width: 440, height: 330,
      xDomain: extent(numbers(t, 'filling')),
      yDomain: extent([...numbers(t, 'gamma_a_Gamma0'), 1.0]),
      xLabel: 'filling fraction η',
      yLabel: 'collective linewidth Γ (Γ₀)',
      title: 'Linewidth vs filling and vertical spread',
    });
    p.hline(1);
    sigmas.forEach((sz, i) => {
      const sub = where(t, 'sigma_z_a', sz);
      const x = numbers(sub, 'filling');
      const y = numbers(sub, 'gamma_a_Gamma0');
      const err = numbers(sub, 'gamma_a_err_Gamma0');
      const color = PALETTE[i % PALETTE.length];
      p.line(x, y, { color, width: 1.8 }).points(x, y, { color }).errorBars(x, y, err, color);
    });
    return document(700, 420, [
      p.render(),
      legend(sigmas.map((sz, i) => ({
        label: `σ_z = ${sz} a`,
        color: PALETTE[i % PALETTE.length],
      })), 530, 40),
    ]);
  },
};
