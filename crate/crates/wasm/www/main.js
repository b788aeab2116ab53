import init, { segment, generate, costCurve } from './pkg/adaseg_wasm.js';

const $ = (id) => document.getElementById(id);
const COLORS = ['#d1495b', '#00798c', '#edae49', '#30638e', '#66a182'];
const CURVE_KMAX = 60;

let ys = [];
let curve = [];

function setupCanvas(canvas) {
  const ratio = window.devicePixelRatio || 1;
  const { width, height } = canvas.getBoundingClientRect();
  canvas.width = Math.round(width * ratio);
  canvas.height = Math.round(height * ratio);
  const ctx = canvas.getContext('2d');
  ctx.setTransform(ratio, 0, 0, ratio, 0, 0);
  ctx.clearRect(0, 0, width, height);
  return { ctx, width, height };
}

function scales(width, height, n, lo, hi, pad = 12) {
  const span = hi - lo || 1;
  return {
    x: (i) => pad + (i / Math.max(n - 1, 1)) * (width - 2 * pad),
    y: (v) => height - pad - ((v - lo) / span) * (height - 2 * pad),
  };
}

function drawSeries(result) {
  const { ctx, width, height } = setupCanvas($('plot'));
  const values = result ? ys.concat(result.model) : ys;
  const s = scales(width, height, ys.length, Math.min(...values), Math.max(...values));

  ctx.fillStyle = '#888';
  for (let i = 0; i < ys.length; i++) {
    ctx.fillRect(s.x(i) - 1, s.y(ys[i]) - 1, 2, 2);
  }
  if (!result) return;

  ctx.lineWidth = 2;
  result.segments.forEach((seg, j) => {
    ctx.strokeStyle = COLORS[j % COLORS.length];
    ctx.beginPath();
    for (let i = seg.start; i < seg.end; i++) {
      const px = s.x(i), py = s.y(result.model[i]);
      if (i === seg.start) ctx.moveTo(px, py); else ctx.lineTo(px, py);
    }
    if (seg.end - seg.start === 1) ctx.lineTo(s.x(seg.start) + 2, s.y(result.model[seg.start]));
    ctx.stroke();
  });

  ctx.strokeStyle = 'rgba(0,0,0,0.15)';
  ctx.lineWidth = 1;
  for (const b of result.boundaries.slice(1, -1)) {
    const px = s.x(b - 0.5);
    ctx.beginPath();
    ctx.moveTo(px, 0);
    ctx.lineTo(px, height);
    ctx.stroke();
  }
}

function drawCurve(k, current) {
  const { ctx, width, height } = setupCanvas($('curve'));
  if (!curve.length) return;
  const finite = curve.filter(Number.isFinite);
  const hi = Math.max(...finite, current ?? 0);
  const s = scales(width, height, CURVE_KMAX + 1, 0, hi, 16);

  ctx.fillStyle = '#555';
  ctx.fillText('optimal l2 error by k', 20, 14);
  ctx.strokeStyle = '#30638e';
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  curve.forEach((v, i) => {
    if (!Number.isFinite(v)) return;
    const px = s.x(i + 1), py = s.y(v);
    if (i === 0) ctx.moveTo(px, py); else ctx.lineTo(px, py);
  });
  ctx.stroke();

  ctx.strokeStyle = 'rgba(0,0,0,0.3)';
  ctx.beginPath();
  ctx.moveTo(s.x(k), 0);
  ctx.lineTo(s.x(k), height);
  ctx.stroke();
  if (current !== undefined) {
    ctx.fillStyle = '#d1495b';
    ctx.beginPath();
    ctx.arc(s.x(k), s.y(current), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function degree() {
  return Number($('degree').value);
}

function refreshCurve() {
  curve = [];
  // the optimal solver is quadratic in n; skip the curve for long series
  if (ys.length > 0 && ys.length <= 3000) {
    try {
      curve = Array.from(costCurve(Float64Array.from(ys), CURVE_KMAX, degree()));
    } catch (e) {
      curve = [];
    }
  }
}

function run() {
  const k = Number($('k').value);
  $('k-value').textContent = k;
  const stats = $('stats');
  if (!ys.length) {
    stats.textContent = 'no data';
    return;
  }
  const started = performance.now();
  try {
    const result = JSON.parse(segment(Float64Array.from(ys), $('method').value, k, degree()));
    const ms = performance.now() - started;
    stats.className = '';
    stats.textContent =
      `segments ${result.segments.length}   regressors ${result.total_complexity}/${k}   ` +
      `sse ${result.total_sse.toPrecision(6)}   l2 ${result.l2_error.toPrecision(6)}   ${ms.toFixed(1)} ms`;
    drawSeries(result);
    drawCurve(k, result.l2_error);
  } catch (e) {
    stats.className = 'error';
    stats.textContent = e.message ?? String(e);
    drawSeries(null);
    drawCurve(k);
  }
}

function load(values) {
  ys = values;
  refreshCurve();
  run();
}

function generated() {
  try {
    const values = generate($('kind').value, Number($('n').value), Number($('seed').value) >>> 0, 1.0);
    load(Array.from(values));
  } catch (e) {
    $('stats').className = 'error';
    $('stats').textContent = e.message ?? String(e);
  }
}

function pasted() {
  const values = $('pasted').value.split(/[\s,;]+/).filter(Boolean).map(Number);
  if (values.some((v) => !Number.isFinite(v))) {
    $('stats').className = 'error';
    $('stats').textContent = 'pasted values must all be numbers';
    return;
  }
  load(values);
}

await init();
$('generate').addEventListener('click', generated);
$('use-pasted').addEventListener('click', pasted);
$('k').addEventListener('input', run);
$('method').addEventListener('change', run);
$('degree').addEventListener('change', () => { refreshCurve(); run(); });
window.addEventListener('resize', run);
generated();
