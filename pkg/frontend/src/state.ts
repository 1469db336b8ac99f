/**
 * Client-side session state: the last server view plus the last rejection.
 *
 * Invariants the tests pin down:
 *  - a rejection never changes the held view (the board re-renders
 *    identically, only the inline message appears);
 *  - an accepted move replaces the whole view with the server response, so
 *    the engine's reply shows up in the same update;
 *  - the legal interval shown to the user is the service's bounds verbatim
 *    (string for string).
 */

import type { MoveRecord, ServerView } from "./api.js";

export interface Rejection {
  reason: string;
  violatedBound: string | null;
}

export interface Band {
  lower: string;
  upper: string;
}

export class SessionState {
  view: ServerView | null = null;
  lastRejection: Rejection | null = null;

  applyView(view: ServerView): void {
    this.view = view;
    this.lastRejection = null;
  }

  applyRejection(rejection: Rejection): void {
    this.lastRejection = rejection;
  }

  /** Open interval the next move must land in, exactly as the service says. */
  legalInterval(): Band | null {
    if (!this.view) return null;
    if (this.view.game === "baker" && this.view.bounds) {
      return { lower: this.view.bounds.lower, upper: this.view.bounds.upper };
    }
    const current = this.view.current_interval;
    if (current) return { lower: current[0], upper: current[1] };
    return { lower: "0", upper: "1" };
  }

  /**
   * Successive enclosures for the zoom ladder, starting at [0,1].
   * For the point game these are (a_n, b_n) after each full round; for the
   * interval games every move is already a band.
   */
  enclosureHistory(): Band[] {
    const bands: Band[] = [{ lower: "0", upper: "1" }];
    if (!this.view) return bands;
    if (this.view.game === "baker") {
      let lower = "0";
      let upper = "1";
      for (const move of this.view.moves) {
        if (move.value === undefined) continue;
        if (move.player === "alice") lower = move.value;
        else {
          upper = move.value;
          bands.push({ lower, upper });
        }
      }
      return bands;
    }
    for (const move of this.view.moves) {
      if (move.interval) bands.push({ lower: move.interval[0], upper: move.interval[1] });
    }
    return bands;
  }

  movesFor(by: "human" | "engine"): MoveRecord[] {
    return this.view?.moves.filter((m) => m.by === by) ?? [];
  }

  awaitingHuman(): boolean {
    return this.view?.status === "awaiting-human";
  }
}
