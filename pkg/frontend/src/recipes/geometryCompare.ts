import { distinct, numbers, readCsv, where } from '../csv.js';
import { PALETTE, Panel, extent, legend, type LegendEntry } from '../plot.js';
import { document } from '../svg.js';
import { dataPath, type Recipe } from './common.js';

export const geometryCompare: Recipe = {
  name: 'geometry-compare',
  files: ['geometry_compare_spectra.csv', 'geometry_compare_fits.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'geometry_compare_spectra.csv'));
    const configs = distinct(t, 'config');

    const allR = numbers(t, 'r_mean');
    const allA = numbers(t, 'a_mean');
    const xDomain = extent(numbers(t, 'detuning_Gamma0'), 0);
    const panels: Array<[string, string, string]> = [
      ['r', 'reflectance R (fraction)', 'Reflection'],
      ['a', 'absorptance A (fraction)', 'Extinction'],
    ];
    const rendered: string[] = [];
    panels.forEach(([key, yLabel, title], pi) => {
      const p = new Panel({
        x: 70 + pi * 360, y: 30, width: 300, height: 300,
        xDomain,
        yDomain: extent(key === 'r' ? allR : allA),
        xLabel: 'detuning δ (Γ₀)',
        yLabel,
        title,
      });
      configs.forEach((cfg, ci) => {
        const sub = where(t, 'config', cfg);
        const x = numbers(sub, 'detuning_Gamma0');
        const mean = numbers(sub, `${key}_mean`);
        const sem = numbers(sub, `${key}_sem`);
        const color = PALETTE[ci % PALETTE.length];
        p.band(x, mean.map((m, i) => m - sem[i]), mean.map((m, i) => m + sem[i]), color);
        p.line(x, mean, { color, width: 1.8 });
      });
      rendered.push(p.render());
    });

    const entries: LegendEntry[] = configs.map((cfg, ci) => ({
      label: cfg,
      color: PALETTE[ci % PALETTE.length],
    }));
    rendered.push(legend(entries, 760, 40));
    return document(900, 390, rendered);
  },
};
