import { numbers, readCsv } from '../csv.js';
import { PALETTE, Panel, extent, legend } from '../plot.js';
import { document } from '../svg.js';
import { dataPath, type Recipe } from './common.js';

export const spacingSweep: Recipe = {
  name: 'spacing-sweep',
  files: ['spacing_sweep.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'spacing_sweep.csv'));
    const x = numbers(t, 'spacing_over_lambda');
    const gammaFit = numbers(t, 'gamma_a_Gamma0');
    const gammaErr = numbers(t, 'gamma_a_err_Gamma0');
    const gammaMode = numbers(t, 'gamma_mode_Gamma0');
    const gammaInf = numbers(t, 'gamma_infinite_Gamma0');

    const p = new Panel({
      x: 70, y: 30, width: 480, height: 340,
      xDomain: extent(x, 0),
      yDomain: extent([...gammaFit, ...gammaMode, ...gammaInf, 1.0]),
      xLabel: 'lattice spacing a/λ',
      yLabel: 'collective linewidth Γ (Γ₀)',
      title: 'Linewidth vs lattice spacing',
    });
    p.hline(1)
      .line(x, gammaInf, { color: '#888888', dash: '5,3' })
      .line(x, gammaMode, { color: PALETTE[2] })
      .line(x, gammaFit, { color: PALETTE[0], width: 2 })
      .errorBars(x, gammaFit, gammaErr, PALETTE[0])
      .points(x, gammaFit, { color: PALETTE[0] });

    return document(720, 430, [
      p.render(),
      legend(
        [
          { label: 'fitted (absorptance)', color: PALETTE[0] },
          { label: 'dominant mode', color: PALETTE[2] },
          { label: 'infinite array', color: '#888888', dash: '5,3' },
        ],
        568, 40,
      ),
    ]);
  },
};
