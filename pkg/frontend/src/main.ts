/** Form wiring: create a session, submit moves, render verdicts. */

import { Client, ServiceError, type MoveValue, type SessionConfig } from "./api.js";
import { renderBoard, renderRejection } from "./board.js";
import { Frac, FractionParseError } from "./fraction.js";
import { SessionState } from "./state.js";

const SET_CHOICES: Record<string, unknown> = {
  cantor: "cantor",
  "unit interval": "unit",
  "two thirds": { type: "intervals", items: [["0", "1/3"], ["2/3", "1"]] },
  "farey enumeration": "farey",
};

function must<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const state = new SessionState();
const client = new Client("");

const form = must<HTMLFormElement>("new-game");
const gameSelect = must<HTMLSelectElement>("game");
const setSelect = must<HTMLSelectElement>("set");
const roleSelect = must<HTMLSelectElement>("role");
const engineInput = must<HTMLInputElement>("engine");
const formError = must<HTMLDivElement>("form-error");
const boardEl = must<HTMLDivElement>("board");
const moveForm = must<HTMLFormElement>("move-form");
const moveInput = must<HTMLInputElement>("move-value");
const moveHi = must<HTMLInputElement>("move-hi");
const moveError = must<HTMLDivElement>("move-error");
const keypad = must<HTMLDivElement>("keypad");

// fraction keypad: taps append to whichever field was focused last
let keypadTarget: HTMLInputElement = moveInput;
for (const field of [moveInput, moveHi]) {
  field.addEventListener("focus", () => {
    keypadTarget = field;
  });
}
for (const key of ["1", "2", "3", "4", "5", "6", "7", "8", "9", "0", "/", ".", "⌫"]) {
  const button = document.createElement("button");
  button.type = "button";
  button.className = "key";
  button.textContent = key;
  button.addEventListener("click", () => {
    keypadTarget.value =
      key === "⌫" ? keypadTarget.value.slice(0, -1) : keypadTarget.value + key;
    keypadTarget.focus();
  });
  keypad.append(button);
}

for (const name of Object.keys(SET_CHOICES)) {
  const option = document.createElement("option");
  option.value = name;
  option.textContent = name;
  setSelect.append(option);
}

const ROLES: Record<string, [string, string]> = {
  baker: ["alice", "bob"],
  "banach-mazur": ["anna", "bartek"],
  choquet: ["pierre", "paul"],
};
const DEFAULT_ENGINE: Record<string, string> = {
  baker: "perfect",
  "banach-mazur": "meagre",
  choquet: "complete",
};

function refreshRoles(): void {
  const roles = ROLES[gameSelect.value] ?? ["alice", "bob"];
  roleSelect.replaceChildren();
  for (const role of roles) {
    const option = document.createElement("option");
    option.value = role;
    option.textContent = role;
    roleSelect.append(option);
  }
  engineInput.value = DEFAULT_ENGINE[gameSelect.value] ?? "midpoint";
  moveHi.style.display = gameSelect.value === "baker" ? "none" : "";
}
gameSelect.addEventListener("change", refreshRoles);
refreshRoles();

function redraw(): void {
  renderBoard(boardEl, state);
  renderRejection(moveError, state.lastRejection);
  moveForm.style.display = state.view ? "" : "none";
}

form.addEventListener("submit", (event) => {
  event.preventDefault();
  formError.textContent = "";
  const config: SessionConfig = {
    game: gameSelect.value,
    human_role: roleSelect.value,
    engine: engineInput.value.trim(),
  };
  if (gameSelect.value === "baker") config.set = SET_CHOICES[setSelect.value];
  if (gameSelect.value === "banach-mazur") config.presentation = "farey-singletons";
  if (gameSelect.value === "choquet") {
    // the exclusion engine only proves anything over the rational ambient
    config.ambient = engineInput.value.trim().startsWith("exclude")
      ? "rationals"
      : "unit-interval";
  }
  client
    .createSession(config)
    .then((view) => {
      state.applyView(view);
      redraw();
    })
    .catch((error: unknown) => {
      // service validation messages are shown verbatim
      formError.textContent =
        error instanceof ServiceError ? error.reason : String(error);
    });
});

moveForm.addEventListener("submit", (event) => {
  event.preventDefault();
  const view = state.view;
  if (!view) return;
  let value: MoveValue;
  try {
    if (view.game === "baker") {
      value = Frac.parse(moveInput.value).toString();
    } else {
      value = [
        Frac.parse(moveInput.value).toString(),
        Frac.parse(moveHi.value).toString(),
      ];
    }
  } catch (error) {
    if (error instanceof FractionParseError) {
      state.applyRejection({ reason: error.message, violatedBound: null });
      redraw();
      return;
    }
    throw error;
  }
  client
    .postMoveWithRetry(view.id, value, view.moves.length)
    .then((updated) => {
      state.applyView(updated);
      moveInput.value = "";
      moveHi.value = "";
      redraw();
    })
    .catch((error: unknown) => {
      if (error instanceof ServiceError) {
        state.applyRejection({
          reason: error.reason,
          violatedBound: error.violatedBound,
        });
      } else {
        state.applyRejection({ reason: String(error), violatedBound: null });
      }
      redraw();
    });
});

redraw();
