import { interpolateViridis } from 'd3-scale-chromatic';
import { distinct, numbers, readCsv, where } from '../csv.js';
import { Panel, colorbar, extent } from '../plot.js';
import { document } from '../svg.js';
import { cellEdges, dataPath, gridFromLong, type Recipe } from './common.js';

export const modePdf: Recipe = {
  name: 'mode-pdf',
  files: ['mode_pdf.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'mode_pdf.csv'));
    const configs = distinct(t, 'config');
    const vmax = Math.max(...numbers(t, 'density').filter(Number.isFinite));
    const size = 250;
    const perRow = Math.min(configs.length, 2);
    const parts: string[] = [];

    configs.forEach((cfg, i) => {
      const sub = where(t, 'config', cfg);
      const grid = gridFromLong(
        numbers(sub, 'delta_Gamma0'),
        numbers(sub, 'gamma_Gamma0'),
        numbers(sub, 'density'),
      );
      const ex = cellEdges(grid.xs);
      const ey = cellEdges(grid.ys);
      const col = i % perRow;
      const row = Math.floor(i / perRow);
      const p = new Panel({
        x: 70 + col * (size + 70),
        y: 30 + row * (size + 70),
        width: size, height: size,
        xDomain: extent(grid.xs, 0.02),
        yDomain: extent(grid.ys, 0.02),
        xLabel: 'shift Δ (Γ₀)',
        yLabel: 'decay rate Γ (Γ₀)',
        title: cfg,
        nice: false,
      });
      for (let ix = 0; ix < grid.xs.length; ix++) {
        for (let iy = 0; iy < grid.ys.length; iy++) {
          const v = grid.get(ix, iy);
          if (!Number.isFinite(v) || v <= 0) continue; // empty bins stay white
          p.cell(ex[ix], ex[ix + 1], ey[iy], ey[iy + 1],
            interpolateViridis(Math.min(1, v / vmax)));
        }
      }
      parts.push(p.render());
    });

    const rows = Math.ceil(configs.length / perRow);
    const width = 70 + perRow * (size + 70) + 60;
    const height = 30 + rows * (size + 70) + 20;
    parts.push(colorbar(width - 95, 30, size, [0, vmax], interpolateViridis,
      'drive weight per bin (unit total)'));
    return document(width, height, parts);
  },
};
