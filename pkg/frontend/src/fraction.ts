/**
 * Exact rationals over bigint, mirroring the service's fraction strings.
 * The UI never rounds internally; decimals are presentation only.
 */

export interface Frac {
  readonly num: bigint;
  readonly den: bigint; // always positive
}

function gcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b) {
    [a, b] = [b, a % b];
  }
  return a;
}

export function frac(num: bigint, den: bigint = 1n): Frac {
  if (den === 0n) throw new Error("zero denominator");
  if (den < 0n) {
    num = -num;
    den = -den;
  }
  const g = gcd(num, den) || 1n;
  return { num: num / g, den: den / g };
}

export const ZERO: Frac = frac(0n);

/** Parse "5", "-3/2" or "0.25" exactly. */
export function parseFrac(text: string): Frac {
  const s = text.trim();
  const slash = s.indexOf("/");
  if (slash >= 0) {
    return frac(BigInt(s.slice(0, slash)), BigInt(s.slice(slash + 1)));
  }
  const dot = s.indexOf(".");
  if (dot >= 0) {
    const sign = s.startsWith("-") ? -1n : 1n;
    const whole = s.slice(0, dot).replace("-", "") || "0";
    const fracPart = s.slice(dot + 1);
    if (!/^\d*$/.test(whole) || !/^\d+$/.test(fracPart)) throw new Error(`bad number: ${text}`);
    const den = 10n ** BigInt(fracPart.length);
    return frac(sign * (BigInt(whole) * den + BigInt(fracPart)), den);
  }
  return frac(BigInt(s));
}

export function fromInt(n: number): Frac {
  return frac(BigInt(n));
}

export function add(a: Frac, b: Frac): Frac {
  return frac(a.num * b.den + b.num * a.den, a.den * b.den);
}

export function sub(a: Frac, b: Frac): Frac {
  return frac(a.num * b.den - b.num * a.den, a.den * b.den);
}

export function mul(a: Frac, b: Frac): Frac {
  return frac(a.num * b.num, a.den * b.den);
}

/** -1, 0 or 1 as a is <, =, > b. */
export function cmp(a: Frac, b: Frac): number {
  const diff = a.num * b.den - b.num * a.den;
  return diff < 0n ? -1 : diff > 0n ? 1 : 0;
}

/** Canonical fraction string, identical to the service's rendering. */
export function fracStr(a: Frac): string {
  return a.den === 1n ? a.num.toString() : `${a.num}/${a.den}`;
}

/** Fixed-precision decimal, for labeled approximations only. */
export function toDecimal(a: Frac, digits = 2): string {
  const scale = 10n ** BigInt(digits);
  const neg = a.num < 0n;
  const num = neg ? -a.num : a.num;
  const scaled = (num * scale + a.den / 2n) / a.den;
  const whole = scaled / scale;
  const rest = (scaled % scale).toString().padStart(digits, "0");
  return `${neg ? "-" : ""}${whole}.${rest}`;
}

/** Exact value plus a tilde-labeled decimal when the fraction is not integral. */
export function displayMoney(text: string): string {
  const f = parseFrac(text);
  return f.den === 1n ? text : `${text} (~${toDecimal(f)})`;
}
