// DOM construction. Summaries and headlines go through textContent only:
// the contract is byte-equality between the response and what is shown,
// so nothing here may truncate, trim, or re-sort server output.

import type { FeedbackResult, Overview, OverviewViewModel, Vote } from "./api";

export interface FeedbackSender {
  (themeSummary: string, vote: Vote, comment: string): Promise<FeedbackResult>;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  testId?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (testId !== undefined) node.dataset.testid = testId;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderNoThemes(): HTMLElement {
  return el("p", "no-themes", "No themes for this query and horizon.");
}

export function renderSyntaxError(
  query: string,
  message: string,
  offset: number,
): HTMLElement {
  const box = el("div", "syntax-error");
  box.appendChild(el("p", "error-message", message));
  // Caret line points at the server-reported character offset.
  const pointer = el("pre", "error-pointer");
  pointer.textContent = `${query}\n${" ".repeat(offset)}^`;
  box.appendChild(pointer);
  return box;
}

export function renderRejected(message: string): HTMLElement {
  const box = el("div", "request-error");
  box.appendChild(el("p", "error-message", message));
  return box;
}

export function renderBanner(message: string, onRetry: () => void): HTMLElement {
  const banner = el("div", "banner");
  banner.appendChild(el("span", undefined, message));
  const retry = el("button", "banner-retry", "retry");
  retry.type = "button";
  retry.addEventListener("click", onRetry);
  banner.appendChild(retry);
  return banner;
}

function renderFeedback(themeSummary: string, send: FeedbackSender): HTMLElement {
  const box = el("div", "feedback");
  const up = el("button", "vote-up", "\u{1F44D}");
  const down = el("button", "vote-down", "\u{1F44E}");
  const comment = el("input", "comment-input");
  comment.placeholder = "add a comment";
  const submit = el("button", "comment-send", "send");
  const status = el("span", "feedback-status", "");
  for (const button of [up, down, submit]) button.type = "button";
  up.setAttribute("aria-pressed", "false");
  down.setAttribute("aria-pressed", "false");
  submit.disabled = true;

  comment.addEventListener("input", () => {
    submit.disabled = comment.value.trim() === "";
  });

  function vote(button: HTMLButtonElement, value: Vote): void {
    // Optimistic: mark the vote before the server answers, undo on failure.
    const previous = button.getAttribute("aria-pressed");
    button.setAttribute("aria-pressed", "true");
    status.textContent = "recorded";
    void send(themeSummary, value, "").then((result) => {
      if (!result.ok) {
        button.setAttribute("aria-pressed", previous ?? "false");
        status.textContent = result.message;
      }
    });
  }

  up.addEventListener("click", () => vote(up, "up"));
  down.addEventListener("click", () => vote(down, "down"));
  submit.addEventListener("click", () => {
    const text = comment.value;
    if (text.trim() === "") return;
    comment.value = "";
    submit.disabled = true;
    status.textContent = "recorded";
    void send(themeSummary, "none", text).then((result) => {
      if (!result.ok) {
        comment.value = text;
        submit.disabled = false;
        status.textContent = result.message;
      }
    });
  });

  box.append(up, down, comment, submit, status);
  return box;
}

function isoTime(epochSeconds: number): string {
  return new Date(epochSeconds * 1000).toISOString();
}

function renderTheme(
  theme: Overview["themes"][number],
  send: FeedbackSender,
): HTMLElement {
  const card = el("li", "theme-card");
  card.appendChild(el("h2", "theme-summary", theme.summary));
  card.appendChild(
    el("p", "theme-meta", `${theme.size} stories · score ${theme.score}`),
  );
  const stories = el("ul", "key-stories");
  for (const story of theme.key_stories) {
    const item = el("li", "key-story");
    item.appendChild(el("span", "story-headline", story.headline));
    item.appendChild(el("span", "story-source", story.source));
    item.appendChild(el("time", "story-time", isoTime(story.ingested_at)));
    stories.appendChild(item);
  }
  card.appendChild(stories);
  card.appendChild(renderFeedback(theme.summary, send));
  return card;
}

export function renderOverview(
  vm: OverviewViewModel,
  send: FeedbackSender,
): HTMLElement {
  const box = el("div", "overview");
  const meta = el("p", "result-meta");
  meta.appendChild(el("span", "query-echo", vm.overview.query));
  meta.appendChild(
    el("span", "cache-flag", vm.cacheHit ? "cache hit" : "cache miss"),
  );
  box.appendChild(meta);
  if (vm.overview.themes.length === 0) {
    box.appendChild(renderNoThemes());
    return box;
  }
  const list = el("ol", "theme-list");
  // Server order is the ranking; never re-sort client-side.
  for (const theme of vm.overview.themes) {
    list.appendChild(renderTheme(theme, send));
  }
  box.appendChild(list);
  return box;
}
