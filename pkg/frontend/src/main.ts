/** DOM wiring for the spectrophotometer panel. */

import {
  analyticSpectrum,
  fetchConcentrations,
  fetchModelInfo,
  fetchSpectrum,
  type ModelInfo,
  type SpectrumResponse,
} from "./api.js";
import { renderChart } from "./chart.js";
import { parsePastedSpectrum } from "./parse.js";
import {
  clampConcentration,
  CONC_MAX,
  CONC_MIN,
  CONC_STEP,
  initialState,
  ThrottledRequester,
  type PanelState,
} from "./state.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

function formatMolar(v: number): string {
  return `${v.toFixed(3)} M`;
}

export function setupPanel(): void {
  const state: PanelState = initialState();
  let modelInfo: ModelInfo | null = null;

  const coSlider = byId<HTMLInputElement>("co-slider");
  const niSlider = byId<HTMLInputElement>("ni-slider");
  const coNumber = byId<HTMLInputElement>("co-number");
  const niNumber = byId<HTMLInputElement>("ni-number");
  const overlayToggle = byId<HTMLInputElement>("overlay-toggle");
  const chartHost = byId<HTMLDivElement>("chart");
  const statusLine = byId<HTMLDivElement>("status");
  const errorBanner = byId<HTMLDivElement>("error-banner");
  const pasteBox = byId<HTMLTextAreaElement>("paste-box");
  const pasteButton = byId<HTMLButtonElement>("paste-button");
  const inverseOut = byId<HTMLDivElement>("inverse-out");

  for (const input of [coSlider, niSlider, coNumber, niNumber]) {
    input.min = String(CONC_MIN);
    input.max = String(CONC_MAX);
    input.step = String(CONC_STEP);
  }

  function render(): void {
    coSlider.value = String(state.coM);
    niSlider.value = String(state.niM);
    coNumber.value = state.coM.toFixed(3);
    niNumber.value = state.niM.toFixed(3);
    overlayToggle.checked = state.showOverlay;
    chartHost.innerHTML = renderChart(
      state.spectrum,
      state.showOverlay ? state.analytic : null,
    );
    const bits: string[] = [`[Co] ${formatMolar(state.coM)}  [Ni] ${formatMolar(state.niM)}`];
    if (state.pending) bits.push("updating...");
    if (state.warning !== null) bits.push(state.warning);
    statusLine.textContent = bits.join("  |  ");
    errorBanner.textContent = state.error ?? "";
    errorBanner.style.display = state.error === null ? "none" : "block";
    inverseOut.textContent =
      state.inverse === null
        ? ""
        : `predicted  [Co] ${formatMolar(state.inverse.coM)}  [Ni] ${formatMolar(state.inverse.niM)}`;
  }

  const spectrumRequester = new ThrottledRequester(
    fetchSpectrum,
    (resp: SpectrumResponse, [coM, niM]) => {
      state.spectrum = { wavelengths: resp.wavelengths_nm, values: resp.absorbance };
      state.warning = resp.warning ?? null;
      state.error = null;
      state.analytic =
        modelInfo === null
          ? null
          : {
              wavelengths: resp.wavelengths_nm,
              values: analyticSpectrum(modelInfo, resp.wavelengths_nm, coM, niM),
            };
      state.pending = spectrumRequester.busy;
      render();
    },
    (error) => {
      state.error = error.message;
      state.pending = spectrumRequester.busy;
      render();
    },
  );

  function setConcentrations(coM: number, niM: number): void {
    state.coM = clampConcentration(coM);
    state.niM = clampConcentration(niM);
    state.pending = true;
    spectrumRequester.request(state.coM, state.niM);
    render();
  }

  coSlider.addEventListener("input", () => setConcentrations(Number(coSlider.value), state.niM));
  niSlider.addEventListener("input", () => setConcentrations(state.coM, Number(niSlider.value)));
  coNumber.addEventListener("change", () => setConcentrations(Number(coNumber.value), state.niM));
  niNumber.addEventListener("change", () => setConcentrations(state.coM, Number(niNumber.value)));
  overlayToggle.addEventListener("change", () => {
    state.showOverlay = overlayToggle.checked;
    render();
  });

  pasteButton.addEventListener("click", () => {
    const parsed = parsePastedSpectrum(pasteBox.value);
    if (!parsed.ok) {
      state.error = parsed.error;
      render();
      return;
    }
    fetchConcentrations(parsed.values).then(
      (resp) => {
        state.inverse = { coM: resp.co_M, niM: resp.ni_M };
        state.error = null;
        render();
      },
      (error: Error) => {
        state.error = error.message;
        render();
      },
    );
  });

  fetchModelInfo().then(
    (info) => {
      modelInfo = info;
      setConcentrations(state.coM, state.niM);
    },
    () => {
      // Overlay stays off without band metadata; the model spectrum still works.
      setConcentrations(state.coM, state.niM);
    },
  );

  render();
}

if (typeof document !== "undefined" && document.getElementById("chart") !== null) {
  setupPanel();
}
