import { numbers, readCsv } from '../csv.js';
import { PALETTE, Panel, extent, legend } from '../plot.js';
import { document } from '../svg.js';
import { dataPath, type Recipe } from './common.js';

export const pairSweep: Recipe = {
  name: 'pair-sweep',
  files: ['pair_sweep.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'pair_sweep.csv'));
    const sep = numbers(t, 'separation_lambda');
    const ds = numbers(t, 'delta_sym_Gamma0');
    const da = numbers(t, 'delta_anti_Gamma0');
    const gs = numbers(t, 'gamma_sym_Gamma0');
    const ga = numbers(t, 'gamma_anti_Gamma0');

    const xDomain = extent(sep, 0);
    const shifts = new Panel({
      x: 70, y: 30, width: 480, height: 200,
      xDomain, yDomain: extent([...ds, ...da]),
      xLabel: '', yLabel: 'cooperative shift Δ (Γ₀)',
      title: 'Two-emitter response vs separation',
    });
    shifts.hline(0).line(sep, ds, { color: PALETTE[0] }).line(sep, da, { color: PALETTE[1] });

    const rates = new Panel({
      x: 70, y: 280, width: 480, height: 200,
      xDomain, yDomain: extent([...gs, ...ga]),
      xLabel: 'separation r (λ)', yLabel: 'decay rate Γ (Γ₀)',
    });
    rates.hline(1).line(sep, gs, { color: PALETTE[0] }).line(sep, ga, { color: PALETTE[1] });

    return document(700, 545, [
      shifts.render(),
      rates.render(),
      legend(
        [
          { label: 'symmetric', color: PALETTE[0] },
          { label: 'antisymmetric', color: PALETTE[1] },
        ],
        575, 40,
      ),
    ]);
  },
};
