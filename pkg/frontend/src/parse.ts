/** Parsing of pasted spectra: comma/whitespace/newline separated decimals. */

export const EXPECTED_POINTS = 126;

export type ParseResult =
  | { ok: true; values: number[] }
  | { ok: false; error: string };

/**
 * Parse a pasted spectrum into exactly `expected` finite numbers.
 * Errors name the offending token position or the count found.
 */
export function parsePastedSpectrum(
  text: string,
  expected: number = EXPECTED_POINTS,
): ParseResult {
  const tokens = text
    .split(/[\s,;]+/)
    .map((t) => t.trim())
    .filter((t) => t.length > 0);

  const values: number[] = [];
  for (let i = 0; i < tokens.length; i++) {
    const v = Number(tokens[i]);
    if (!Number.isFinite(v)) {
      return { ok: false, error: `token ${i + 1} ("${tokens[i]}") is not a number` };
    }
    values.push(v);
  }
  if (values.length !== expected) {
    return { ok: false, error: `expected ${expected} values, found ${values.length}` };
  }
  return { ok: true, values };
}
