/**
 * Figure recipes: which CSV files feed each figure and how the curves are
 * styled. Rendering is a pure function of the CSV contents; no physics is
 * recomputed here.
 */

import { join } from "path";
import { loadSweep, loadTimeseries, TimeseriesRow } from "./csv";
import { ChartSpec, LineStyle, renderChart, Series } from "./svg";

export type FigureId = "Fig1" | "Fig2" | "Fig3" | "Fig4" | "OracleOverlay";

export interface FigureRecipe {
  figureId: FigureId;
  inputCsvs: string[];
  build(dataDir: string): string;
}

/** caption-style line coding, keyed by detuning in units of the rate scale */
const TIMESERIES_STYLE: Array<[number, LineStyle]> = [
  [-10, "dashed"],
  [-5, "solid"],
  [-1, "dashed"],
  [-0.2, "solid"],
  [0, "dashdot"],
  [0.2, "dotted"],
  [1, "dotted"],
  [5, "starsolid"],
];

function styleFor(delta: number, fallback: LineStyle = "solid"): LineStyle {
  const hit = TIMESERIES_STYLE.find(([d]) => Math.abs(d - delta) < 1e-12);
  return hit ? hit[1] : fallback;
}

function zetaSeries(rows: TimeseriesRow[], delta: number, styleOverride?: LineStyle): Series {
  return {
    label: `δ = ${delta} β`,
    points: rows.filter((r) => r.zeta2 !== null).map((r) => [r.t, r.zeta2 as number]),
    style: styleOverride ?? styleFor(delta),
  };
}

function timeseriesFigure(
  figureId: FigureId,
  deltas: number[],
  files: (d: number) => string,
  xLabel: string,
): FigureRecipe {
  // one style slot per detuning; delta = 1 doubles as the starred curve when it
  // is the outermost detuning of the set (anisotropic case)
  const outermost = Math.max(...deltas);
  return {
    figureId,
    inputCsvs: deltas.map(files),
    build(dataDir: string): string {
      const series = deltas.map((d) =>
        zetaSeries(
          loadTimeseries(join(dataDir, files(d))),
          d,
          figureId === "Fig3" && d === outermost ? "starsolid" : undefined,
        ),
      );
      const spec: ChartSpec = {
        title: `Spin squeezing decay, ${figureId === "Fig1" ? "isotropic" : "anisotropic"} reservoir`,
        xLabel,
        yLabel: "ζ²",
        series,
        yDomain: [0, 0.75],
      };
      return renderChart(spec);
    },
  };
}

const fig1 = timeseriesFigure(
  "Fig1",
  [-10, -5, 0, 1, 5],
  (d) => `fig1_delta_${d}.csv`,
  "β t",
);

const fig3 = timeseriesFigure(
  "Fig3",
  [-1, -0.2, 0, 0.2, 1],
  (d) => `fig3_delta_${d}.csv`,
  "β t",
);

const fig2: FigureRecipe = {
  figureId: "Fig2",
  inputCsvs: ["fig2_sweep.csv"],
  build(dataDir: string): string {
    const rows = loadSweep(join(dataDir, "fig2_sweep.csv"));
    const main: Series = {
      label: "ζ²(∞)",
      points: rows.map((r) => [r.delta, r.zeta2Inf]),
      style: "solid",
    };
    const positiveSide = rows.filter((r) => r.delta > 0 && r.zeta2Inf > 0);
    const spec: ChartSpec = {
      title: "Steady-state squeezing versus detuning, isotropic reservoir",
      xLabel: "δ / β",
      yLabel: "ζ²(∞)",
      series: [main],
      yDomain: [0, 0.7],
      inset: {
        xLabel: "δ / β",
        yLabel: "ζ²(∞)",
        series: [
          {
            label: "outside band edge",
            points: positiveSide.map((r) => [r.delta, r.zeta2Inf]),
            style: "solid",
          },
        ],
        yLog: true,
      },
    };
    return renderChart(spec);
  },
};

const fig4: FigureRecipe = {
  figureId: "Fig4",
  inputCsvs: ["fig4_sweep.csv"],
  build(dataDir: string): string {
    const rows = loadSweep(join(dataDir, "fig4_sweep.csv"));
    const spec: ChartSpec = {
      title: "Steady-state squeezing versus detuning, anisotropic reservoir",
      xLabel: "δ / β",
      yLabel: "ζ²(∞)",
      series: [
        {
          label: "ζ²(∞)",
          points: rows.map((r) => [r.delta, r.zeta2Inf]),
          style: "solid",
        },
      ],
      yDomain: [0, 0.75],
    };
    return renderChart(spec);
  },
};

const overlay: FigureRecipe = {
  figureId: "OracleOverlay",
  inputCsvs: ["overlay_closed.csv", "overlay_oracle.csv"],
  build(dataDir: string): string {
    const closed = loadTimeseries(join(dataDir, "overlay_closed.csv"));
    const oracle = loadTimeseries(join(dataDir, "overlay_oracle.csv"));
    const every = Math.max(1, Math.floor(oracle.length / 60));
    const spec: ChartSpec = {
      title: "Closed-form amplitude versus reference solver",
      xLabel: "β t",
      yLabel: "|q(t)|²",
      series: [
        {
          label: "closed form",
          points: closed.map((r) => [r.t, r.population]),
          style: "solid",
        },
        {
          label: "memory-kernel solver",
          points: oracle.filter((_, i) => i % every === 0).map((r) => [r.t, r.population]),
          style: "markers",
        },
      ],
    };
    return renderChart(spec);
  },
};

export const RECIPES: Record<FigureId, FigureRecipe> = {
  Fig1: fig1,
  Fig2: fig2,
  Fig3: fig3,
  Fig4: fig4,
  OracleOverlay: overlay,
};

export const FIGURE_IDS = Object.keys(RECIPES) as FigureId[];
