/** DOM rendering: everything on screen is a function of the ViewState. */

import { displayMoney } from "./fraction.js";
import type { TradeRow, ViewState } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function priceChart(path: number[], width = 640, height = 220): string {
  const lo = Math.min(0, ...path);
  const hi = Math.max(0, ...path);
  const span = Math.max(hi - lo, 2);
  const dx = width / Math.max(path.length - 1, 1);
  const y = (p: number) => height - ((p - lo) / span) * (height - 20) - 10;
  const points = path.map((p, i) => `${(i * dx).toFixed(1)},${y(p).toFixed(1)}`).join(" ");
  const zero = y(0).toFixed(1);
  return (
    `<svg viewBox="0 0 ${width} ${height}" preserveAspectRatio="none">` +
    `<line x1="0" y1="${zero}" x2="${width}" y2="${zero}" class="axis"/>` +
    `<polyline points="${points}" class="price"/>` +
    `</svg>`
  );
}

function tradeRow(t: TradeRow): string {
  const closed = t.closedTurn !== null;
  const lifespan = closed ? `t${t.openedTurn} → t${t.closedTurn}` : `t${t.openedTurn} → live`;
  const outcome = closed ? `closed at ${t.closedPrice}` : `win@${t.win} / lose@${t.lose}`;
  return (
    `<tr class="${closed ? "closed" : "open"}">` +
    `<td>${t.id}</td><td>${lifespan}</td><td>${outcome}</td>` +
    `<td>${displayMoney(t.size)}</td><td class="num">${displayMoney(t.value)}</td>` +
    `<td>${closed ? "" : `<button data-lock="${t.id}">lock</button>`}</td></tr>`
  );
}

export function render(state: ViewState): void {
  el("price-now").textContent = String(state.price);
  el("turn-now").textContent = String(state.nextTurn);
  el("gain-gauge").textContent = displayMoney(state.gain);
  el("total-gauge").textContent = displayMoney(state.totalValue);
  el("status").textContent = state.status;
  el("chart").innerHTML = priceChart(state.pricePath);

  const open = state.trades.filter((t) => t.closedTurn === null);
  const closed = state.trades.filter((t) => t.closedTurn !== null);
  el("trades-open").innerHTML = open.map(tradeRow).join("");
  el("trades-closed").innerHTML = closed.map(tradeRow).join("");

  const log = el("turn-log");
  log.innerHTML = state.log.map((line) => `<li>${line}</li>`).join("");
  log.scrollTop = log.scrollHeight;

  const banner = el("banner");
  banner.textContent = state.banner ?? "";
  banner.hidden = state.banner === null;

  (el("submit-turn") as HTMLButtonElement).disabled = state.status !== "live";
}

export function renderQueued(actions: { label: string }[]): void {
  el("queued").innerHTML = actions.map((a) => `<li>${a.label}</li>`).join("");
}

export function showFormError(message: string | null): void {
  const node = el("form-error");
  node.textContent = message ?? "";
  node.hidden = message === null;
}
