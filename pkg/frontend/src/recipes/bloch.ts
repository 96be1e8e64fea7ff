import { numbers, readCsv } from '../csv.js';
import { PALETTE, Panel, extent } from '../plot.js';
import { document } from '../svg.js';
import { dataPath, type Recipe } from './common.js';

export const bloch: Recipe = {
  name: 'bloch',
  files: ['bloch.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'bloch.csv'));
    const time = numbers(t, 'time_tb');
    const rPeak = numbers(t, 'r_peak');
    const gamma = numbers(t, 'gamma_a_Gamma0');
    const gammaErr = numbers(t, 'gamma_a_err_Gamma0');
    const xDomain = extent(time, 0);

    const top = new Panel({
      x: 70, y: 30, width: 480, height: 190,
      xDomain, yDomain: extent([...rPeak, 0]),
      xLabel: '', yLabel: 'peak reflectance (fraction)',
      title: 'Bloch-oscillation breathing',
    });
    top.line(time, rPeak, { color: PALETTE[0], width: 2 }).points(time, rPeak, { color: PALETTE[0] });

    const bottom = new Panel({
      x: 70, y: 270, width: 480, height: 190,
      xDomain, yDomain: extent([...gamma, 1.0]),
      xLabel: 'time t (T_B)', yLabel: 'linewidth Γ (Γ₀)',
    });
    bottom.hline(1)
      .line(time, gamma, { color: PALETTE[1], width: 2 })
      .points(time, gamma, { color: PALETTE[1] })
      .errorBars(time, gamma, gammaErr, PALETTE[1]);

    return document(620, 525, [top.render(), bottom.render()]);
  },
};
