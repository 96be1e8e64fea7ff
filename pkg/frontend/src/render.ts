import { writeFileSync } from 'node:fs';
import { extname } from 'node:path';
import { Resvg } from '@resvg/resvg-js';
import { recipes } from './recipes/index.js';

export function renderRecipe(name: string, dataDir: string): string {
  const recipe = recipes[name];
  if (!recipe) {
    const known = Object.keys(recipes).sort().join(', ');
    throw new Error(`unknown recipe '${name}'; available: ${known}`);
  }
  return recipe.render(dataDir);
}

export function rasterize(svg: string): Buffer {
  const r = new Resvg(svg, { background: 'white' });
  return r.render().asPng();
}

/** Write SVG text or a rasterized PNG depending on the output extension. */
export function writeOutput(svg: string, outPath: string): void {
  const ext = extname(outPath).toLowerCase();
  if (ext === '.svg') {
    writeFileSync(outPath, svg);
  } else if (ext === '.png') {
    writeFileSync(outPath, rasterize(svg));
  } else {
    throw new Error(`unsupported output extension '${ext}' (use .svg or .png)`);
  }
}
