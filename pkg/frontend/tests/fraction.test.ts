import { describe, expect, it } from "vitest";

import {
  add,
  cmp,
  displayMoney,
  frac,
  fracStr,
  fromInt,
  mul,
  parseFrac,
  sub,
  toDecimal,
  ZERO,
} from "../src/fraction.js";

describe("parseFrac", () => {
  it("parses integers, fractions and decimals exactly", () => {
    expect(parseFrac("5")).toEqual(frac(5n));
    expect(parseFrac("-3/2")).toEqual(frac(-3n, 2n));
    expect(parseFrac("0.25")).toEqual(frac(1n, 4n));
    expect(parseFrac("-0.1")).toEqual(frac(-1n, 10n));
  });

  it("round-trips the service rendering", () => {
    for (const s of ["0", "7", "-12", "3/2", "-355/113"]) {
      expect(fracStr(parseFrac(s))).toBe(s);
    }
  });

  it("rejects junk", () => {
    expect(() => parseFrac("abc")).toThrow();
    expect(() => parseFrac("1/0")).toThrow();
  });
});

describe("arithmetic", () => {
  it("adds, subtracts, multiplies exactly", () => {
    expect(fracStr(add(parseFrac("1/3"), parseFrac("1/6")))).toBe("1/2");
    expect(fracStr(sub(ZERO, parseFrac("3/2")))).toBe("-3/2");
    expect(fracStr(mul(fromInt(-4), parseFrac("3/2")))).toBe("-6");
  });

  it("compares by sign of the difference", () => {
    expect(cmp(parseFrac("2/3"), parseFrac("3/4"))).toBe(-1);
    expect(cmp(parseFrac("1/2"), parseFrac("2/4"))).toBe(0);
    expect(cmp(ZERO, parseFrac("-1/100"))).toBe(1);
  });
});

describe("display", () => {
  it("labels non-integers with a decimal approximation", () => {
    expect(displayMoney("3/2")).toBe("3/2 (~1.50)");
    expect(displayMoney("7")).toBe("7");
  });

  it("fixed-precision decimals round half away from zero", () => {
    expect(toDecimal(parseFrac("1/3"), 3)).toBe("0.333");
    expect(toDecimal(parseFrac("-3/2"))).toBe("-1.50");
  });
});
