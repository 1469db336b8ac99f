/** DOM rendering for the board: zoom ladder, move list, status banner. */

import type { MoveRecord } from "./api.js";
import type { Rejection, SessionState } from "./state.js";
import { bandRows } from "./zoom.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function moveLabel(move: MoveRecord): string {
  const value = move.value ?? (move.interval ? `[${move.interval[0]}, ${move.interval[1]}]` : "?");
  return `${move.player} (${move.by}): ${value}`;
}

export function renderBoard(root: HTMLElement, state: SessionState): void {
  root.replaceChildren();
  const view = state.view;
  if (!view) return;

  if (view.fault) {
    root.append(
      el("div", "banner fault", `${view.fault.by} faulted: ${view.fault.reason}`),
    );
  } else if (view.status === "closed") {
    root.append(el("div", "banner closed", "session closed"));
  }

  const meta = el("div", "meta");
  meta.append(
    el("span", "", `game: ${view.game}`),
    el("span", "", `you: ${view.human_role}`),
    el("span", "", `engine: ${view.engine}`),
    el("span", "", `rounds: ${view.rounds_played}`),
    el("span", "", `to move: ${view.to_move}`),
  );
  root.append(meta);

  const ladder = el("div", "ladder");
  const baseRow = el("div", "ladder-row");
  const baseBand = el("div", "band base");
  baseBand.style.left = "0%";
  baseBand.style.width = "100%";
  baseBand.title = "[0, 1]";
  baseRow.append(baseBand);
  ladder.append(baseRow);
  for (const row of bandRows(state.enclosureHistory())) {
    const rowEl = el("div", "ladder-row");
    const band = el("div", "band");
    band.style.left = `${row.leftPct}%`;
    band.style.width = `${row.widthPct}%`;
    band.title = `(${row.lower}, ${row.upper}) within (${row.parentLower}, ${row.parentUpper})`;
    const label = el("span", "band-label", `${row.lower} .. ${row.upper}`);
    rowEl.append(band, label);
    ladder.append(rowEl);
  }
  root.append(ladder);

  const legal = state.legalInterval();
  if (legal && state.awaitingHuman()) {
    root.append(
      el("div", "legal", `play strictly inside (${legal.lower}, ${legal.upper})`),
    );
  }

  const list = el("ol", "moves");
  for (const move of view.moves) {
    list.append(el("li", `move ${move.by}`, moveLabel(move)));
  }
  root.append(list);
}

export function renderRejection(target: HTMLElement, rejection: Rejection | null): void {
  target.replaceChildren();
  if (!rejection) return;
  const text = rejection.violatedBound
    ? `${rejection.violatedBound} — ${rejection.reason}`
    : rejection.reason;
  target.append(el("span", "rejection", text));
}
