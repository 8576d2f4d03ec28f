/** Color scales: sequential for numeric values, categorical for strings. */

export interface SequentialScale {
  kind: "sequential";
  domain: [number, number];
  color(value: number): string;
}

export interface CategoricalScale {
  kind: "categorical";
  categories: string[];
  color(value: string): string;
}

const SEQUENTIAL_STOPS: [number, number, number][] = [
  [38, 70, 120],
  [60, 120, 160],
  [110, 175, 170],
  [200, 210, 120],
  [240, 200, 80],
];

export const CATEGORICAL_PALETTE = [
  "#7fb2e5",
  "#e8a15d",
  "#8fd18a",
  "#d98fb8",
  "#b3a2e3",
  "#e5dd7f",
  "#7fdbd2",
  "#e58a8a",
];

function channel(a: number, b: number, t: number): number {
  return Math.round(a + (b - a) * t);
}

export function sequentialScale(values: number[]): SequentialScale {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!Number.isFinite(lo)) {
    lo = 0;
    hi = 1;
  }
  const domain: [number, number] = [lo, hi];
  return {
    kind: "sequential",
    domain,
    color(value: number): string {
      const span = hi - lo;
      const t = span > 0 ? Math.min(1, Math.max(0, (value - lo) / span)) : 0.5;
      const scaled = t * (SEQUENTIAL_STOPS.length - 1);
      const i = Math.min(SEQUENTIAL_STOPS.length - 2, Math.floor(scaled));
      const frac = scaled - i;
      const [r1, g1, b1] = SEQUENTIAL_STOPS[i];
      const [r2, g2, b2] = SEQUENTIAL_STOPS[i + 1];
      return `rgb(${channel(r1, r2, frac)}, ${channel(g1, g2, frac)}, ${channel(b1, b2, frac)})`;
    },
  };
}

/** Stable assignment: categories sorted, palette cycled. */
export function categoricalScale(values: string[]): CategoricalScale {
  const categories = [...new Set(values)].sort();
  const index = new Map(categories.map((c, i) => [c, i]));
  return {
    kind: "categorical",
    categories,
    color(value: string): string {
      const i = index.get(value);
      return i === undefined ? "#888888" : CATEGORICAL_PALETTE[i % CATEGORICAL_PALETTE.length];
    },
  };
}

/** Legend descriptor shown next to the canvas. */
export interface LegendInfo {
  title: string;
  entries: { label: string; color: string }[];
}

export function legendFor(scale: SequentialScale | CategoricalScale, title: string): LegendInfo {
  if (scale.kind === "categorical") {
    return { title, entries: scale.categories.map((c) => ({ label: c, color: scale.color(c) })) };
  }
  const [lo, hi] = scale.domain;
  return {
    title,
    entries: [
      { label: formatNumber(lo), color: scale.color(lo) },
      { label: formatNumber((lo + hi) / 2), color: scale.color((lo + hi) / 2) },
      { label: formatNumber(hi), color: scale.color(hi) },
    ],
  };
}

export function formatNumber(v: number | null): string {
  if (v === null) return "–";
  if (Number.isInteger(v)) return String(v);
  return v.toPrecision(4);
}
