#!/usr/bin/env node
import { parseArgs } from 'node:util';
import { recipes } from './recipes/index.js';
import { renderRecipe, writeOutput } from './render.js';

const USAGE = `usage: coopscatter-figures render --recipe <name> --data <dir> --out <file.svg|file.png>

recipes: ${Object.keys(recipes).sort().join(', ')}`;

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        recipe: { type: 'string' },
        data: { type: 'string' },
        out: { type: 'string' },
        help: { type: 'boolean', short: 'h' },
      },
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}\n${USAGE}`);
    return 2;
  }
  if (parsed.values.help) {
    console.log(USAGE);
    return 0;
  }
  const [command] = parsed.positionals;
  const { recipe, data, out } = parsed.values;
  if (command !== 'render' || !recipe || !data || !out) {
    console.error(USAGE);
    return 2;
  }
  try {
    writeOutput(renderRecipe(recipe, data), out);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  console.log(out);
  return 0;
}

// invoked directly (not imported by tests)
if (process.argv[1] && import.meta.url === new URL(`file://${process.argv[1]}`).href) {
  process.exit(main(process.argv.slice(2)));
}
