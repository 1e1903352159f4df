import init, { analyze, verify_rule, layers } from "./pkg/superkappa_web.js";

const $ = (id) => document.getElementById(id);
const PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

function fail(el, e) {
  el.innerHTML = `<span class="error">${e.message ?? e}</span>`;
}

function drawCircle(canvas, n, edges, highlight) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const r = Math.min(w, h) / 2 - 20;
  const pos = Array.from({ length: n }, (_, i) => {
    const t = (2 * Math.PI * i) / n - Math.PI / 2;
    return [w / 2 + r * Math.cos(t), h / 2 + r * Math.sin(t)];
  });
  ctx.strokeStyle = "#999";
  for (const [u, v] of edges) {
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  }
  const cut = new Set(highlight ?? []);
  pos.forEach(([x, y], i) => {
    ctx.fillStyle = cut.has(i) ? "#d62728" : "#333";
    ctx.beginPath();
    ctx.arc(x, y, cut.has(i) ? 6 : 4, 0, 2 * Math.PI);
    ctx.fill();
  });
}

function runAnalyze() {
  try {
    const d = JSON.parse(analyze($("a-expr").value));
    const r = d.report;
    const sup = r.is_super_kappa === null ? "undetermined" : r.is_super_kappa;
    $("a-out").innerHTML =
      `|V| = ${r.order}, |E| = ${r.size}, &kappa; = ${r.kappa}, &kappa;' = ${r.kappa_edge}, ` +
      `&delta; = ${r.delta}, max-&kappa;: ${r.is_max_kappa}, super-&kappa;: ${sup}` +
      (d.violating_cut ? `<br>violating cut (red): {${d.violating_cut.map((v) => d.labels[v]).join(", ")}}` : "") +
      `<br>graph6: <code>${d.graph6}</code>`;
    drawCircle($("a-canvas"), r.order, d.edges, d.violating_cut);
  } catch (e) {
    fail($("a-out"), e);
  }
}

function runVerify() {
  try {
    const n = Number($("v-n").value) || 0;
    const v = JSON.parse(verify_rule($("v-rule").value, $("v-expr").value, n));
    const failed = v.hypotheses.filter((c) => !c.holds).map((c) => c.text);
    $("v-out").innerHTML =
      `<span class="${v.verdict}">${v.verdict}</span>` +
      (failed.length ? `<br>failing hypotheses: ${failed.join("; ")}` : "");
    $("v-json").textContent = JSON.stringify(v, null, 2);
  } catch (e) {
    fail($("v-out"), e);
    $("v-json").textContent = "";
  }
}

function runLayers() {
  const canvas = $("l-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  try {
    const d = JSON.parse(layers($("l-expr").value, Number($("l-n").value)));
    $("l-out").textContent = `${d.case}: ${d.layers.length} layers, ${d.blocks.length} blocks`;
    const cols = d.layers.length;
    const dx = canvas.width / (cols + 1);
    const pos = new Map();
    d.layers.forEach((layer, c) => {
      const dy = canvas.height / (layer.vertices.length + 1);
      layer.vertices.forEach((v, i) => pos.set(v, [dx * (c + 1), 20 + dy * (i + 1) - 10]));
      ctx.fillStyle = "#333";
      ctx.fillText(layer.name, dx * (c + 1) - 10, 12);
    });
    d.blocks.forEach((b, i) => {
      ctx.strokeStyle = PALETTE[i % PALETTE.length];
      for (const [u, v] of b.edges) {
        ctx.beginPath();
        ctx.moveTo(...pos.get(u));
        ctx.lineTo(...pos.get(v));
        ctx.stroke();
      }
    });
    for (const [x, y] of pos.values()) {
      ctx.fillStyle = "#333";
      ctx.beginPath();
      ctx.arc(x, y, 3, 0, 2 * Math.PI);
      ctx.fill();
    }
  } catch (e) {
    fail($("l-out"), e);
  }
}

await init();
$("a-go").onclick = runAnalyze;
$("v-go").onclick = runVerify;
$("l-go").onclick = runLayers;
runAnalyze();
runVerify();
runLayers();
