import {
  fetchOverview,
  postFeedback,
  isHorizon,
  HORIZONS,
  type Horizon,
  type OverviewViewModel,
  type Vote,
} from "./api";
import {
  renderBanner,
  renderOverview,
  renderRejected,
  renderSyntaxError,
} from "./view";

export interface AppOptions {
  root: HTMLElement;
  baseUrl?: string;
  win?: Pick<Window, "location" | "history">;
}

export class App {
  private readonly root: HTMLElement;
  private readonly baseUrl: string;
  private readonly win: Pick<Window, "location" | "history">;
  private readonly input: HTMLInputElement;
  private readonly horizonButtons = new Map<Horizon, HTMLButtonElement>();
  private readonly results: HTMLElement;

  private query = "";
  private horizon: Horizon = "1d";
  private inflight: AbortController | null = null;
  private last: OverviewViewModel | null = null;

  constructor(options: AppOptions) {
    this.root = options.root;
    this.baseUrl = options.baseUrl ?? "";
    this.win = options.win ?? window;
    this.root.replaceChildren();

    const form = document.createElement("form");
    form.dataset.testid = "query-form";
    this.input = document.createElement("input");
    this.input.dataset.testid = "query-input";
    this.input.placeholder = "merger AND NOT rumor";
    form.appendChild(this.input);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      this.query = this.input.value;
      this.persistUrl();
      void this.refresh();
    });

    const group = document.createElement("div");
    group.dataset.testid = "horizon-group";
    for (const option of HORIZONS) {
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.testid = `horizon-${option}`;
      button.textContent = option;
      button.addEventListener("click", () => this.selectHorizon(option));
      this.horizonButtons.set(option, button);
      group.appendChild(button);
    }
    form.appendChild(group);
    this.root.appendChild(form);

    this.results = document.createElement("div");
    this.results.dataset.testid = "results";
    this.root.appendChild(this.results);

    const params = new URLSearchParams(this.win.location.search);
    const horizon = params.get("horizon");
    if (isHorizon(horizon)) this.horizon = horizon;
    this.markHorizon();
    const q = params.get("q");
    if (q) {
      this.query = q;
      this.input.value = q;
      void this.refresh();
    }
  }

  private markHorizon(): void {
    for (const [option, button] of this.horizonButtons) {
      button.setAttribute("aria-pressed", option === this.horizon ? "true" : "false");
    }
  }

  private persistUrl(): void {
    const params = new URLSearchParams();
    if (this.query) params.set("q", this.query);
    params.set("horizon", this.horizon);
    this.win.history.replaceState(null, "", `?${params}`);
  }

  private selectHorizon(option: Horizon): void {
    // Re-clicking the active option must not refetch.
    if (option === this.horizon) return;
    this.horizon = option;
    this.markHorizon();
    this.persistUrl();
    if (this.query) void this.refresh();
  }

  async refresh(): Promise<void> {
    // One overview request in flight; a newer submission cancels the older.
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    let result;
    try {
      result = await fetchOverview(this.baseUrl, this.query, this.horizon, controller.signal);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return;
      throw err;
    }
    if (this.inflight !== controller) return;
    this.inflight = null;

    if (result.ok) {
      this.last = result.value;
      this.results.replaceChildren(renderOverview(result.value, this.sendFeedback));
      return;
    }
    const error = result.error;
    if (error.kind === "syntax") {
      this.results.replaceChildren(
        renderSyntaxError(this.query, error.message, error.offset),
      );
    } else if (error.kind === "rejected") {
      this.results.replaceChildren(renderRejected(error.message));
    } else {
      this.results.replaceChildren(
        renderBanner(error.message, () => void this.refresh()),
      );
    }
  }

  private sendFeedback = (themeSummary: string, vote: Vote, comment: string) => {
    // The query echoed by the server is canonical; feedback is keyed by it.
    const query = this.last?.overview.query ?? this.query;
    return postFeedback(this.baseUrl, {
      query,
      theme_summary: themeSummary,
      vote,
      comment,
    });
  };
}

export function mountApp(options: AppOptions): App {
  return new App(options);
}
