// SVG rendering of one snapshot.  Everything drawn here is read straight
// off the server snapshot and the session's selection; no rules run in
// the client.

import { circularLayout, hullPoints, typeColor, typeLabel } from "./layout.js";
import { GameSession } from "./session.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const BOARD_SIZE = 640;

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function renderBoard(
  svg: SVGSVGElement,
  session: GameSession,
  onVertexClick: (v: number) => void,
): void {
  svg.innerHTML = "";
  const snap = session.snapshot;
  if (!snap) return;
  const n = snap.deficits.length;
  const positions = circularLayout(n, BOARD_SIZE);
  svg.setAttribute("viewBox", `0 0 ${BOARD_SIZE} ${BOARD_SIZE}`);

  // component hulls, colored by type
  for (const comp of snap.components) {
    if (comp.vertices.length < 2) continue;
    const pts = hullPoints(comp.vertices, positions);
    const path = pts.map((p, i) => `${i === 0 ? "M" : "L"}${p.x},${p.y}`).join(" ") + " Z";
    svg.appendChild(
      el("path", {
        d: path,
        fill: typeColor(comp.type),
        "fill-opacity": "0.18",
        stroke: typeColor(comp.type),
        "stroke-opacity": "0.45",
        "stroke-width": "2",
        "stroke-linejoin": "round",
      }),
    );
  }

  const engineEdge = session.lastEngineMove;
  const humanEdge = session.lastHumanMove;
  for (const [u, v] of snap.edges) {
    const a = positions[u];
    const b = positions[v];
    const isEngine = engineEdge !== null && engineEdge[0] === u && engineEdge[1] === v;
    const isHuman =
      humanEdge !== null &&
      Math.min(...humanEdge) === Math.min(u, v) &&
      Math.max(...humanEdge) === Math.max(u, v);
    svg.appendChild(
      el("line", {
        x1: `${a.x}`,
        y1: `${a.y}`,
        x2: `${b.x}`,
        y2: `${b.y}`,
        stroke: isEngine ? "#c0392b" : isHuman ? "#2471a3" : "#555",
        "stroke-width": isEngine || isHuman ? "4" : "2.5",
        "stroke-linecap": "round",
      }),
    );
  }

  const compType = new Map<number, string>();
  for (const comp of snap.components) {
    for (const v of comp.vertices) compType.set(v, comp.type);
  }

  for (let v = 0; v < n; v++) {
    const p = positions[v];
    const deficit = snap.deficits[v];
    const selected = session.selection === v;
    const group = el("g", { class: "vertex", "data-vertex": `${v}` });
    group.appendChild(
      el("circle", {
        cx: `${p.x}`,
        cy: `${p.y}`,
        r: selected ? "16" : "13",
        fill: deficit > 0 ? typeColor(compType.get(v) ?? "1") : "#bbb",
        stroke: selected ? "#111" : "#444",
        "stroke-width": selected ? "4" : "1.5",
      }),
    );
    const label = el("text", {
      x: `${p.x}`,
      y: `${p.y + 4}`,
      "text-anchor": "middle",
      "font-size": "11",
      fill: "#1a1a1a",
    });
    label.textContent = `${v}`;
    group.appendChild(label);
    // deficit badge
    const badge = el("text", {
      x: `${p.x + 14}`,
      y: `${p.y - 10}`,
      "text-anchor": "middle",
      "font-size": "10",
      "font-weight": "bold",
      fill: deficit > 0 ? "#b03a2e" : "#888",
    });
    badge.textContent = `${deficit}`;
    group.appendChild(badge);
    group.addEventListener("click", () => onVertexClick(v));
    svg.appendChild(group);
  }
}

export function renderStatus(container: HTMLElement, session: GameSession): void {
  const snap = session.snapshot;
  const parts: string[] = [];
  if (session.phase === "idle") {
    parts.push(`<span class="muted">configure a game and press Start</span>`);
  } else if (session.phase === "starting") {
    parts.push(`<span class="muted">starting…</span>`);
  } else if (session.phase === "error") {
    parts.push(`<span class="bad">server error</span>`);
  } else if (snap) {
    const flag = (label: string, ok: boolean) =>
      `<span class="${ok ? "good" : "bad"}">${label}: ${ok ? "yes" : "no"}</span>`;
    parts.push(flag("planar", snap.planar));
    parts.push(flag("condition T", snap.condition_t));
    const types = snap.components
      .filter((c) => c.vertices.length > 1)
      .map((c) => typeLabel(c.type));
    parts.push(`<span>components: ${types.length ? types.join(", ") : "none"}</span>`);
    if (snap.over) {
      parts.push(`<span class="banner">game over — final graph ${snap.planar ? "planar" : "nonplanar"}</span>`);
    } else if (session.busy) {
      parts.push(`<span class="muted">engine thinking…</span>`);
    } else if (snap.mover === session.humanRole) {
      parts.push(`<span>your move${session.selection !== null ? ` (from ${session.selection})` : ""}</span>`);
    } else {
      parts.push(`<span class="muted">waiting for ${session.engineName}</span>`);
    }
  }
  container.innerHTML = parts.join(" · ");
}

export function renderMessage(container: HTMLElement, session: GameSession): void {
  if (session.message) {
    container.textContent = session.message;
    container.classList.add("visible");
  } else {
    container.textContent = "";
    container.classList.remove("visible");
  }
}
