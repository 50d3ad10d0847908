// Fixed display formats. CI/CR strings must be byte-equal to the API
// value formatted to 6 decimals, weights to 5 -- the tests pin this.

export function formatConsistency(value: number): string {
  return value.toFixed(6);
}

export function formatWeight(value: number): string {
  return value.toFixed(5);
}

export function gaugeLine(ci: number, cr: number): string {
  return `CI ${formatConsistency(ci)} · CR ${formatConsistency(cr)}`;
}
