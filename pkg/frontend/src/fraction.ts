/**
 * Exact rationals over bigint, mirroring the service's "p/q" wire format.
 *
 * The UI parses user input exactly ("p/q" or a terminating decimal) and
 * renders exact labels; floating point only ever appears in layout
 * percentages, never in values sent to the service.
 */

export class FractionParseError extends Error {}

const RATIONAL_RE = /^[+-]?\d+(?:\/\d+)?$/;
const DECIMAL_RE = /^[+-]?(?:\d+\.\d*|\.\d+)$/;

function gcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b) {
    [a, b] = [b, a % b];
  }
  return a;
}

export class Frac {
  readonly num: bigint;
  readonly den: bigint;

  constructor(num: bigint, den: bigint = 1n) {
    if (den === 0n) throw new FractionParseError("zero denominator");
    if (den < 0n) {
      num = -num;
      den = -den;
    }
    const d = gcd(num, den) || 1n;
    this.num = num / d;
    this.den = den / d;
  }

  /** Accepts "p/q" and terminating decimals; anything suggesting a
   * non-terminating expansion (ellipses, words) is rejected locally,
   * before any network call. */
  static parse(text: string): Frac {
    const trimmed = text.trim();
    if (RATIONAL_RE.test(trimmed)) {
      const [p, q] = trimmed.split("/") as [string, string?];
      return new Frac(BigInt(p), q === undefined ? 1n : BigInt(q));
    }
    if (DECIMAL_RE.test(trimmed)) {
      const negative = trimmed.startsWith("-");
      const unsigned = trimmed.replace(/^[+-]/, "");
      const [whole = "0", fracPart = ""] = unsigned.split(".");
      const scale = 10n ** BigInt(fracPart.length);
      const num = BigInt(whole) * scale + BigInt(fracPart || "0");
      return new Frac(negative ? -num : num, scale);
    }
    throw new FractionParseError(
      `not an exact rational: "${text}" (use p/q or a terminating decimal)`,
    );
  }

  toString(): string {
    return this.den === 1n ? `${this.num}` : `${this.num}/${this.den}`;
  }

  cmp(other: Frac): -1 | 0 | 1 {
    const left = this.num * other.den;
    const right = other.num * this.den;
    return left < right ? -1 : left > right ? 1 : 0;
  }

  sub(other: Frac): Frac {
    return new Frac(this.num * other.den - other.num * this.den, this.den * other.den);
  }

  /** (this - lo) / (hi - lo) as a float in [0,1], for layout only. */
  positionWithin(lo: Frac, hi: Frac): number {
    const numer = this.sub(lo);
    const denom = hi.sub(lo);
    if (denom.num === 0n) return 0;
    const scaled = (numer.num * denom.den * 1_000_000n) / (numer.den * denom.num);
    return Number(scaled) / 1_000_000;
  }
}
