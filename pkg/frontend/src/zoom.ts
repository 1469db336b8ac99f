/**
 * Zoom-ladder layout: each row re-draws the previous enclosure at full
 * width and places the next one inside it. Because every row rescales by
 * the shrink factor, geometrically shrinking enclosures stay visible at
 * any depth (linear placement would blank out within a few rounds).
 *
 * Positions are floats for CSS only; labels keep the exact "p/q" strings.
 */

import { Frac } from "./fraction.js";
import type { Band } from "./state.js";

export interface BandRow {
  /** exact labels, carried through untouched */
  lower: string;
  upper: string;
  parentLower: string;
  parentUpper: string;
  /** layout percentages of this band inside its parent row */
  leftPct: number;
  widthPct: number;
}

export function bandRows(bands: Band[]): BandRow[] {
  const rows: BandRow[] = [];
  for (let i = 1; i < bands.length; i++) {
    const parent = bands[i - 1]!;
    const child = bands[i]!;
    const parentLo = Frac.parse(parent.lower);
    const parentHi = Frac.parse(parent.upper);
    const lo = Frac.parse(child.lower);
    const hi = Frac.parse(child.upper);
    const left = lo.positionWithin(parentLo, parentHi);
    const right = hi.positionWithin(parentLo, parentHi);
    rows.push({
      lower: child.lower,
      upper: child.upper,
      parentLower: parent.lower,
      parentUpper: parent.upper,
      leftPct: 100 * left,
      widthPct: Math.max(100 * (right - left), 0.4),
    });
  }
  return rows;
}
