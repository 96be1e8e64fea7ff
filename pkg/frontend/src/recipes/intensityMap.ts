import { interpolateViridis } from 'd3-scale-chromatic';
import { column, distinct, numbers, readCsv, filterRows } from '../csv.js';
import { Panel, colorbar, extent } from '../plot.js';
import { document } from '../svg.js';
import { cellEdges, dataPath, gridFromLong, type Recipe } from './common.js';

export const intensityMap: Recipe = {
  name: 'intensity-map',
  files: ['intensity_map.csv'],
  render(dir) {
    const t = readCsv(dataPath(dir, 'intensity_map.csv'));
    // one heatmap per (waist, config) pair, in file order
    const waistCol = column(t, 'waist_w0_a');
    const configCol = column(t, 'config');
    const combos: Array<[string, string]> = [];
    const seen = new Set<string>();
    for (let i = 0; i < waistCol.length; i++) {
      const key = `${waistCol[i]}|${configCol[i]}`;
      if (!seen.has(key)) {
        seen.add(key);
        combos.push([waistCol[i], configCol[i]]);
      }
    }
    const vAll = numbers(t, 'intensity_total').filter(Number.isFinite);
    const vmax = Math.max(...vAll);
    const size = 240;
    const parts: string[] = [];

    combos.forEach(([w, cfg], i) => {
      const sub = filterRows(t, (r) =>
        r[t.header.indexOf('waist_w0_a')] === w && r[t.header.indexOf('config')] === cfg);
      const grid = gridFromLong(
        numbers(sub, 'x_a'),
        numbers(sub, 'z_a'),
        numbers(sub, 'intensity_total'),
      );
      const ex = cellEdges(grid.xs);
      const ez = cellEdges(grid.ys);
      const p = new Panel({
        x: 70 + i * (size + 60), y: 40,
        width: size, height: size,
        xDomain: extent(grid.xs, 0.02),
        yDomain: extent(grid.ys, 0.02),
        xLabel: 'x (a)',
        yLabel: i === 0 ? 'z (a)' : 'z (a)',
        title: `w₀ = ${w} a, ${cfg}`,
        nice: false,
      });
      for (let ix = 0; ix < grid.xs.length; ix++) {
        for (let iz = 0; iz < grid.ys.length; iz++) {
          const v = grid.get(ix, iz);
          // masked cells (on top of an emitter) drawn grey
          const fill = Number.isFinite(v)
            ? interpolateViridis(Math.min(1, v / vmax))
            : '#cccccc';
          p.cell(ex[ix], ex[ix + 1], ez[iz], ez[iz + 1], fill);
        }
      }
      parts.push(p.render());
    });

    const width = 70 + combos.length * (size + 60) + 80;
    parts.push(colorbar(width - 100, 40, size, [0, vmax], interpolateViridis,
      'total intensity I/I₀'));
    return document(width, size + 110, parts);
  },
};
