/** Typed client for the prediction service's JSON API. */

export interface SpectrumResponse {
  wavelengths_nm: number[];
  absorbance: number[];
  warning?: string;
}

export interface ConcentrationsResponse {
  co_M: number;
  ni_M: number;
}

export interface BandInfo {
  center_nm: number;
  sigma_nm: number;
  eps_peak: number;
}

export interface ModelInfo {
  grid: { start_nm: number; end_nm: number; step_nm: number; count: number } | null;
  bands: Record<string, BandInfo[]>;
  conc_limit_M: number;
  trained_range_M: [number, number];
  forward: unknown;
  dual: unknown;
}

async function postJson<T>(url: string, body: unknown): Promise<T> {
  const resp = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await resp.json();
  if (!resp.ok) {
    throw new Error(payload.error ?? `request failed with status ${resp.status}`);
  }
  return payload as T;
}

export function fetchSpectrum(coM: number, niM: number): Promise<SpectrumResponse> {
  return postJson<SpectrumResponse>("/api/spectrum", { co_M: coM, ni_M: niM });
}

export function fetchConcentrations(absorbance: number[]): Promise<ConcentrationsResponse> {
  return postJson<ConcentrationsResponse>("/api/concentrations", { absorbance });
}

export async function fetchModelInfo(): Promise<ModelInfo> {
  const resp = await fetch("/api/model");
  if (!resp.ok) throw new Error(`model metadata unavailable (status ${resp.status})`);
  return (await resp.json()) as ModelInfo;
}

/** Analytic Beer's-law curve from the served band config (for the overlay). */
export function analyticSpectrum(
  info: ModelInfo,
  wavelengths: number[],
  coM: number,
  niM: number,
): number[] {
  const eps = (bands: BandInfo[], lam: number) =>
    bands.reduce(
      (acc, b) =>
        acc + b.eps_peak * Math.exp(-((lam - b.center_nm) ** 2) / (2 * b.sigma_nm ** 2)),
      0,
    );
  const co = info.bands["Co"] ?? [];
  const ni = info.bands["Ni"] ?? [];
  return wavelengths.map((lam) => eps(co, lam) * coM + eps(ni, lam) * niM);
}
