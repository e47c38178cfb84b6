import { describe, expect, it } from "vitest";
import { analyticSpectrum, type ModelInfo } from "../src/api.js";
import { renderChart } from "../src/chart.js";

const series = {
  wavelengths: [350, 400, 450, 500, 550, 600],
  values: [0.1, 0.4, 0.2, 0.35, 0.15, 0.05],
};

describe("renderChart", () => {
  it("renders a placeholder when no data is present", () => {
    const svg = renderChart(null, null);
    expect(svg).toContain("<svg");
    expect(svg).toContain("no spectrum yet");
  });

  it("draws one polyline per series", () => {
    const one = renderChart(series, null);
    expect(one.match(/<polyline/g)).toHaveLength(1);
    const two = renderChart(series, series);
    expect(two.match(/<polyline/g)).toHaveLength(2);
    expect(two).toContain("stroke-dasharray");
  });

  it("labels the wavelength axis", () => {
    expect(renderChart(series, null)).toContain("wavelength (nm)");
  });
});

describe("analyticSpectrum", () => {
  const info: ModelInfo = {
    grid: { start_nm: 350, end_nm: 600, step_nm: 2, count: 126 },
    bands: {
      Co: [{ center_nm: 510, sigma_nm: 25, eps_peak: 4.8 }],
      Ni: [{ center_nm: 394, sigma_nm: 30, eps_peak: 5.0 }],
    },
    conc_limit_M: 0.12,
    trained_range_M: [0.02, 0.1],
    forward: null,
    dual: null,
  };

  it("evaluates the band model at the band centers", () => {
    const [atNi, atCo] = analyticSpectrum(info, [394, 510], 0.05, 0.04);
    expect(atNi).toBeCloseTo(5.0 * 0.04 + 4.8 * 0.05 * Math.exp(-(116 ** 2) / (2 * 25 ** 2)), 10);
    expect(atCo).toBeCloseTo(4.8 * 0.05 + 5.0 * 0.04 * Math.exp(-(116 ** 2) / (2 * 30 ** 2)), 10);
  });

  it("is linear in concentration", () => {
    const lams = [400, 500];
    const base = analyticSpectrum(info, lams, 0.02, 0.03);
    const doubled = analyticSpectrum(info, lams, 0.04, 0.06);
    expect(doubled[0]).toBeCloseTo(2 * base[0], 12);
    expect(doubled[1]).toBeCloseTo(2 * base[1], 12);
  });
});
