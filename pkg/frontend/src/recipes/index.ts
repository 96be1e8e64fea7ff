import { bloch } from './bloch.js';
import { effectLadder } from './effectLadder.js';
import { fillingSweep } from './fillingSweep.js';
import { geometryCompare } from './geometryCompare.js';
import { intensityMap } from './intensityMap.js';
import { modePdf } from './modePdf.js';
import { naSweep } from './naSweep.js';
import { pairSweep } from './pairSweep.js';
import { spacingSweep } from './spacingSweep.js';
import { spreadSweep } from './spreadSweep.js';
import type { Recipe } from './common.js';

export type { Recipe } from './common.js';

export const recipes: Record<string, Recipe> = Object.fromEntries(
  [
    pairSweep, spacingSweep, geometryCompare, fillingSweep, bloch,
    spreadSweep, effectLadder, naSweep, modePdf, intensityMap,
  ].map((r) => [r.name, r]),
);
