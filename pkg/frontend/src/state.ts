/** Panel state and the throttled, supersession-safe request scheduler. */

export interface ChartSeries {
  wavelengths: number[];
  values: number[];
}

export interface PanelState {
  coM: number;
  niM: number;
  spectrum: ChartSeries | null;
  analytic: ChartSeries | null;
  showOverlay: boolean;
  pending: boolean;
  error: string | null;
  warning: string | null;
  inverse: { coM: number; niM: number } | null;
}

export function initialState(): PanelState {
  return {
    coM: 0.05,
    niM: 0.05,
    spectrum: null,
    analytic: null,
    showOverlay: true,
    pending: false,
    error: null,
    warning: null,
    inverse: null,
  };
}

export const CONC_MIN = 0;
export const CONC_MAX = 0.12;
export const CONC_STEP = 0.001;

export function clampConcentration(v: number): number {
  if (!Number.isFinite(v)) return CONC_MIN;
  const snapped = Math.round(v / CONC_STEP) * CONC_STEP;
  return Math.min(CONC_MAX, Math.max(CONC_MIN, Number(snapped.toFixed(3))));
}

type Scheduler = (fn: () => void, ms: number) => unknown;
type Canceller = (handle: unknown) => void;

/**
 * Trailing-edge throttle with response supersession.
 *
 * At most one request per `intervalMs` is issued (so slider drags stay around
 * 5 requests/second at the default), always for the most recent arguments.
 * Responses that arrive after a newer request was issued are discarded, so the
 * displayed result always matches the latest committed inputs.
 */
export class ThrottledRequester<A extends unknown[], R> {
  private latestArgs: A | null = null;
  private timer: unknown = null;
  private issueCounter = 0;
  private appliedIssue = 0;

  constructor(
    private readonly fn: (...args: A) => Promise<R>,
    private readonly onResult: (result: R, args: A) => void,
    private readonly onError: (error: Error) => void,
    private readonly intervalMs = 200,
    private readonly schedule: Scheduler = (fn, ms) => setTimeout(fn, ms),
    private readonly cancel: Canceller = (h) => clearTimeout(h as number),
  ) {}

  /** True while a trailing call is scheduled or a response is outstanding. */
  get busy(): boolean {
    return this.timer !== null || this.issueCounter > this.appliedIssue;
  }

  request(...args: A): void {
    this.latestArgs = args;
    if (this.timer === null) {
      this.issueNow();
      this.timer = this.schedule(() => {
        this.timer = null;
        if (this.latestArgs !== null) this.request(...this.latestArgs);
      }, this.intervalMs);
    }
  }

  dispose(): void {
    if (this.timer !== null) {
      this.cancel(this.timer);
      this.timer = null;
    }
    this.latestArgs = null;
  }

  private issueNow(): void {
    if (this.latestArgs === null) return;
    const args = this.latestArgs;
    this.latestArgs = null;
    const issue = ++this.issueCounter;
    this.fn(...args).then(
      (result) => {
        if (issue > this.appliedIssue) {
          this.appliedIssue = issue;
          this.onResult(result, args);
        }
      },
      (error: Error) => {
        if (issue > this.appliedIssue) {
          this.appliedIssue = issue;
          this.onError(error);
        }
      },
    );
  }
}
