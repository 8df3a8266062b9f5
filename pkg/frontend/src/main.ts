import { ApiClient, fetchTransport } from "./api.js";
import { renderBoard, renderMessage, renderStatus } from "./render.js";
import { GameSession } from "./session.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const session = new GameSession(new ApiClient(fetchTransport()));

const svg = byId<HTMLElement>("board") as unknown as SVGSVGElement;
const status = byId<HTMLDivElement>("status");
const message = byId<HTMLDivElement>("message");
const form = byId<HTMLFormElement>("setup");
const engineSelect = byId<HTMLSelectElement>("engine");
const ellRow = byId<HTMLLabelElement>("ell-row");

function redraw(): void {
  renderBoard(svg, session, (v) => session.clickVertex(v));
  renderStatus(status, session);
  renderMessage(message, session);
}

session.onChange(redraw);

engineSelect.addEventListener("change", () => {
  ellRow.style.display = engineSelect.value === "minor" ? "" : "none";
});

form.addEventListener("submit", (event) => {
  event.preventDefault();
  const k = Number(byId<HTMLInputElement>("k").value);
  const n = Number(byId<HTMLInputElement>("n").value);
  const engine = engineSelect.value;
  const ell = engine === "minor" ? Number(byId<HTMLInputElement>("ell").value) : null;
  const humanFirst = byId<HTMLInputElement>("human-first").checked;
  void session.close().then(() => session.start({ k, n, engine, ell, humanFirst }));
});

redraw();
