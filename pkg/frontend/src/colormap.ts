// Viridis anchor colors, interpolated linearly in RGB.
const STOPS: [number, number, number][] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

/** Map t in [0, 1] to an RGB triple. */
export function viridis(t: number): [number, number, number] {
  const clamped = Math.min(1, Math.max(0, t));
  const scaled = clamped * (STOPS.length - 1);
  const low = Math.floor(scaled);
  const high = Math.min(low + 1, STOPS.length - 1);
  const frac = scaled - low;
  return [0, 1, 2].map((c) =>
    Math.round(STOPS[low][c] + frac * (STOPS[high][c] - STOPS[low][c])),
  ) as [number, number, number];
}

/** Diverging map for phase panels: blue -> white -> red. */
export function divergent(t: number): [number, number, number] {
  const clamped = Math.min(1, Math.max(0, t));
  const mix = (a: number, b: number, f: number) => Math.round(a + (b - a) * f);
  if (clamped < 0.5) {
    const f = clamped * 2;
    return [mix(33, 247, f), mix(102, 247, f), mix(172, 247, f)];
  }
  const f = (clamped - 0.5) * 2;
  return [mix(247, 178, f), mix(247, 24, f), mix(247, 43, f)];
}
