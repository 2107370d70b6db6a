/**
 * Minimal SVG line-chart builder: axes, ticks, dash patterns, star markers,
 * legends and an optional inset panel. Pure string assembly, no DOM.
 *
 * The root element carries data-x-domain / data-y-domain attributes so tests
 * can assert axis coverage without rasterising anything.
 */

export type LineStyle = "solid" | "dashed" | "dashdot" | "dotted" | "starsolid" | "markers";

export interface Series {
  label: string;
  points: Array<[number, number]>;
  style: LineStyle;
  color?: string;
}

export interface ChartSpec {
  title?: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  width?: number;
  height?: number;
  yLog?: boolean;
  xDomain?: [number, number];
  yDomain?: [number, number];
  legend?: boolean;
  inset?: ChartSpec;
}

const PALETTE = ["#1f3b73", "#b03a2e", "#1e8449", "#7d3c98", "#b7950b", "#117a8b"];

const DASH: Record<Exclude<LineStyle, "markers">, string> = {
  solid: "",
  dashed: "10,6",
  dashdot: "10,4,2,4",
  dotted: "2,4",
  starsolid: "",
};

function finitePoints(series: Series, yLog: boolean): Array<[number, number]> {
  return series.points.filter(
    ([x, y]) => Number.isFinite(x) && Number.isFinite(y) && (!yLog || y > 0),
  );
}

function dataDomain(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}

/** tick positions at 1/2/5 multiples covering [lo, hi] */
export function linearTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  const rawStep = span / Math.max(target - 1, 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= rawStep) {
      step = mult * power;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); Math.pow(10, e) <= hi * (1 + 1e-12); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

function fmt(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 0.01 && abs < 10000) {
    return String(Number(value.toPrecision(6)));
  }
  return value.toExponential(0).replace("+", "");
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function starPath(cx: number, cy: number, r: number): string {
  const pts: string[] = [];
  for (let i = 0; i < 10; i++) {
    const radius = i % 2 === 0 ? r : 0.45 * r;
    const angle = -Math.PI / 2 + (i * Math.PI) / 5;
    pts.push(`${(cx + radius * Math.cos(angle)).toFixed(2)},${(cy + radius * Math.sin(angle)).toFixed(2)}`);
  }
  return pts.join(" ");
}

interface Frame {
  toX(v: number): number;
  toY(v: number): number;
  x0: number;
  y0: number;
  plotW: number;
  plotH: number;
}

function render(spec: ChartSpec, isInset: boolean): string {
  const width = spec.width ?? (isInset ? 280 : 760);
  const height = spec.height ?? (isInset ? 200 : 500);
  const margin = isInset
    ? { left: 52, right: 10, top: 10, bottom: 34 }
    : { left: 70, right: 20, top: spec.title ? 40 : 24, bottom: 52 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const yLog = spec.yLog ?? false;
  const cleaned = spec.series.map((s) => ({ ...s, points: finitePoints(s, yLog) }));
  const allX = cleaned.flatMap((s) => s.points.map((p) => p[0]));
  const allY = cleaned.flatMap((s) => s.points.map((p) => p[1]));
  if (allX.length === 0) {
    throw new Error("chart has no finite data points");
  }
  const [xLo, xHi] = spec.xDomain ?? dataDomain(allX);
  const [yLo, yHi] = spec.yDomain ?? dataDomain(allY);

  const toX = (v: number) => margin.left + ((v - xLo) / (xHi - xLo)) * plotW;
  const toY = yLog
    ? (v: number) => margin.top + plotH - ((Math.log10(v) - Math.log10(yLo)) / (Math.log10(yHi) - Math.log10(yLo))) * plotH
    : (v: number) => margin.top + plotH - ((v - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<g data-panel="${isInset ? "inset" : "main"}" data-x-domain="${xLo},${xHi}" data-y-domain="${yLo},${yHi}">`,
  );
  parts.push(
    `<rect x="${margin.left}" y="${margin.top}" width="${plotW}" height="${plotH}" fill="#ffffff" stroke="#222" stroke-width="1"/>`,
  );

  const xTicks = linearTicks(xLo, xHi);
  const yTicks = yLog ? logTicks(yLo, yHi) : linearTicks(yLo, yHi);
  for (const tick of xTicks) {
    const x = toX(tick);
    parts.push(`<line x1="${x.toFixed(2)}" y1="${margin.top + plotH}" x2="${x.toFixed(2)}" y2="${margin.top + plotH + 5}" stroke="#222"/>`);
    parts.push(`<text x="${x.toFixed(2)}" y="${margin.top + plotH + 18}" font-size="${isInset ? 9 : 12}" text-anchor="middle">${fmt(tick)}</text>`);
  }
  for (const tick of yTicks) {
    const y = toY(tick);
    parts.push(`<line x1="${margin.left - 5}" y1="${y.toFixed(2)}" x2="${margin.left}" y2="${y.toFixed(2)}" stroke="#222"/>`);
    parts.push(`<text x="${margin.left - 8}" y="${(y + 4).toFixed(2)}" font-size="${isInset ? 9 : 12}" text-anchor="end">${fmt(tick)}</text>`);
  }
  parts.push(
    `<text x="${margin.left + plotW / 2}" y="${height - 8}" font-size="${isInset ? 10 : 14}" text-anchor="middle">${esc(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${margin.top + plotH / 2}" font-size="${isInset ? 10 : 14}" text-anchor="middle" transform="rotate(-90 16 ${margin.top + plotH / 2})">${esc(spec.yLabel)}</text>`,
  );
  if (spec.title) {
    parts.push(`<text x="${width / 2}" y="22" font-size="15" text-anchor="middle" font-weight="bold">${esc(spec.title)}</text>`);
  }

  cleaned.forEach((series, index) => {
    if (series.points.length === 0) return;
    const color = series.color ?? PALETTE[index % PALETTE.length];
    const coords = series.points.map(([x, y]) => `${toX(x).toFixed(2)},${toY(y).toFixed(2)}`);
    if (series.style === "markers") {
      for (const c of coords) {
        const [cx, cy] = c.split(",");
        parts.push(`<circle cx="${cx}" cy="${cy}" r="2.6" fill="none" stroke="${color}" stroke-width="1.2"/>`);
      }
    } else {
      const dash = DASH[series.style];
      parts.push(
        `<polyline points="${coords.join(" ")}" fill="none" stroke="${color}" stroke-width="1.6"${dash ? ` stroke-dasharray="${dash}"` : ""}/>`,
      );
      if (series.style === "starsolid") {
        const every = Math.max(1, Math.floor(series.points.length / 22));
        series.points.forEach(([x, y], i) => {
          if (i % every === 0) {
            parts.push(`<polygon points="${starPath(toX(x), toY(y), 4.5)}" fill="${color}"/>`);
          }
        });
      }
    }
  });

  if (spec.legend ?? !isInset) {
    const lx = margin.left + plotW - 170;
    let ly = margin.top + 12;
    parts.push(`<g data-role="legend">`);
    parts.push(`<rect x="${lx - 8}" y="${ly - 10}" width="176" height="${cleaned.length * 18 + 8}" fill="#ffffff" fill-opacity="0.85" stroke="#999"/>`);
    cleaned.forEach((series, index) => {
      const color = series.color ?? PALETTE[index % PALETTE.length];
      if (series.style === "markers") {
        parts.push(`<circle cx="${lx + 16}" cy="${ly}" r="2.6" fill="none" stroke="${color}" stroke-width="1.2"/>`);
      } else {
        const dash = DASH[series.style];
        parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 32}" y2="${ly}" stroke="${color}" stroke-width="1.6"${dash ? ` stroke-dasharray="${dash}"` : ""}/>`);
        if (series.style === "starsolid") {
          parts.push(`<polygon points="${starPath(lx + 16, ly, 4.5)}" fill="${color}"/>`);
        }
      }
      parts.push(`<text x="${lx + 38}" y="${ly + 4}" font-size="11">${esc(series.label)}</text>`);
      ly += 18;
    });
    parts.push(`</g>`);
  }

  if (spec.inset) {
    const insetSvg = render({ ...spec.inset, legend: spec.inset.legend ?? false }, true);
    const ix = margin.left + plotW - (spec.inset.width ?? 280) - 14;
    const iy = margin.top + 14 + (spec.legend ?? true ? cleaned.length * 18 + 14 : 0);
    parts.push(`<g transform="translate(${ix} ${iy})">${insetSvg}</g>`);
  }

  parts.push(`</g>`);

  if (isInset) {
    return `<g>${parts.join("")}</g>`;
  }
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif" ` +
    `data-x-domain="${xLo},${xHi}" data-y-domain="${yLo},${yHi}">` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>` +
    parts.join("") +
    `</svg>`
  );
}

export function renderChart(spec: ChartSpec): string {
  return render(spec, false);
}
