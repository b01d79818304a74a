import init, { bwt_matrix, edit_effect, family_series } from "./pkg/bwtcat_web.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#1f5fbf", "#c0392b", "#2e8b57", "#8e44ad", "#d68910"];

function call(f) {
  $("error").textContent = "";
  try {
    return JSON.parse(f());
  } catch (e) {
    $("error").textContent = e.message ?? String(e);
    return null;
  }
}

function cell(row, text, cls) {
  const td = row.insertCell();
  td.textContent = text;
  if (cls) td.className = cls;
  return td;
}

function showMatrix() {
  const view = call(() => bwt_matrix($("matrix-word").value, $("matrix-dollar").checked));
  const table = $("matrix-table");
  table.replaceChildren();
  if (!view) return;
  $("matrix-summary").textContent = `BWT = ${view.bwt}   runs = ${view.runs}`;
  const head = table.createTHead().insertRow();
  for (const h of ["row", "start", "F", "rotation", "L"]) head.appendChild(document.createElement("th")).textContent = h;
  const body = table.createTBody();
  let run = -1;
  view.rows.forEach((r, i) => {
    if (view.run_starts.includes(i)) run += 1;
    const tr = body.insertRow();
    tr.className = run % 2 ? "run-odd" : "run-even";
    cell(tr, i);
    cell(tr, r.start);
    cell(tr, r.rotation[0], "first");
    cell(tr, r.rotation.slice(1, -1), "word");
    cell(tr, r.last, "last");
  });
}

function showEdit() {
  const view = call(() =>
    edit_effect($("edit-word").value, $("edit-op").value, Number($("edit-pos").value), $("edit-sym").value),
  );
  const table = $("edit-table");
  table.replaceChildren();
  if (!view) return;
  const head = table.createTHead().insertRow();
  for (const h of ["", "word", "BWT", "r", "BWT of w$", "r_$"]) head.appendChild(document.createElement("th")).textContent = h;
  for (const [name, side] of [["before", view.before], ["after", view.after]]) {
    const tr = table.insertRow();
    cell(tr, name);
    cell(tr, side.word || "ε", "word");
    cell(tr, side.bwt ?? "undefined", "word");
    cell(tr, side.r ?? "–");
    cell(tr, side.bwt_dollar, "word");
    cell(tr, side.r_dollar);
  }
}

function svg(tag, attrs, parent) {
  const el = document.createElementNS("http://www.w3.org/2000/svg", tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  parent.appendChild(el);
  return el;
}

function showSeries() {
  const points = call(() =>
    family_series($("series-family").value, Number($("series-from").value), Number($("series-to").value)),
  );
  const plot = $("series-plot");
  plot.replaceChildren();
  $("series-legend").replaceChildren();
  if (!points || points.length === 0) return;
  const names = points[0].values.map(([n]) => n);
  const W = 720, H = 360, pad = { l: 48, r: 16, t: 12, b: 32 };
  const ks = points.map((p) => p.k);
  const ys = points.flatMap((p) => p.values.map(([, v]) => v));
  const kmin = Math.min(...ks), kmax = Math.max(...ks, kmin + 1);
  const ymax = Math.max(...ys, 1);
  const x = (k) => pad.l + ((k - kmin) / (kmax - kmin)) * (W - pad.l - pad.r);
  const y = (v) => H - pad.b - (v / ymax) * (H - pad.t - pad.b);
  svg("line", { x1: pad.l, y1: y(0), x2: W - pad.r, y2: y(0), stroke: "#999" }, plot);
  svg("line", { x1: pad.l, y1: pad.t, x2: pad.l, y2: y(0), stroke: "#999" }, plot);
  for (const k of ks.filter((_, i) => i % Math.ceil(ks.length / 12) === 0)) {
    svg("text", { x: x(k), y: H - 12, "text-anchor": "middle" }, plot).textContent = k;
  }
  for (const v of [0, Math.round(ymax / 2), ymax]) {
    svg("text", { x: pad.l - 6, y: y(v) + 4, "text-anchor": "end" }, plot).textContent = v;
  }
  names.forEach((name, j) => {
    const d = points.map((p, i) => `${i ? "L" : "M"}${x(p.k)},${y(p.values[j][1])}`).join(" ");
    svg("path", { d, fill: "none", stroke: COLORS[j % COLORS.length], "stroke-width": 2 }, plot);
    const item = $("series-legend").appendChild(document.createElement("span"));
    item.innerHTML = `<i style="background:${COLORS[j % COLORS.length]}"></i>`;
    item.append(name);
  });
}

function on(id, f) {
  $(id).addEventListener("submit", (e) => {
    e.preventDefault();
    f();
  });
}

await init();
on("matrix-form", showMatrix);
on("edit-form", showEdit);
on("series-form", showSeries);
showMatrix();
showEdit();
showSeries();
