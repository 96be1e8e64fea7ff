import { distinct, numbers, readCsv, where } from '../csv.js';
import { PALETTE, Panel, extent, legend } from '../plot.js';
import { document } from '../svg.js';
import { dataPath, type Recipe } from './common.js';

const VARIANT_LABELS: Record<string, string> = {
  i: 'i: point, isotropic',
  ii: 'ii: + in-plane spread',
  iii: 'iii: + hot σ_z',
  iv: 'iv: σ⁻ model',
  v: 'v: + local detunings',
};

export const effectLadder: Recipe = {
  name: 'effect-ladder',
  files: ['effect_ladder.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'effect_ladder.csv'));
    const variants = distinct(t, 'variant');
    const p = new Panel({
      x: 70, y: 30, width: 420, height: 330,
      xDomain: extent(numbers(t, 'filling')),
      yDomain: extent([...numbers(t, 'gamma_a_Gamma0'), 1.0]),
      xLabel: 'filling fraction η',
      yLabel: 'collective linewidth Γ (Γ₀)',
      title: 'Imperfection ladder',
    });
    p.hline(1);
    variants.forEach((v, i) => {
      const sub = where(t, 'variant', v);
      const x = numbers(sub, 'filling');
      const y = numbers(sub, 'gamma_a_Gamma0');
      const color = PALETTE[i % PALETTE.length];
      p.line(x, y, { color, width: 1.8 })
        .points(x, y, { color })
        .errorBars(x, y, numbers(sub, 'gamma_a_err_Gamma0'), color);
    });
    return document(720, 420, [
      p.render(),
      legend(variants.map((v, i) => ({
        label: VARIANT_LABELS[v] ?? v,
        color: PALETTE[i % PALETTE.length],
      })), 510, 40),
    ]);
  },
};
