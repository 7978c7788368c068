// Writes 10 committed export bundles (one directory per bundle) through the
// real export code path so the core loader's contract test exercises exactly
// what the UI produces.  Deterministic PRNG; rerun to regenerate.

import { mkdirSync, rmSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { exportDataset } from "../src/io.js";
import { Editor } from "../src/state.js";

const HERE = dirname(fileURLToPath(import.meta.url));
const TARGET = join(HERE, "..", "..", "..", "tests", "fixtures", "ui_exports");

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function buildEditor(seed: number): Editor {
  const rnd = mulberry32(seed);
  const ed = new Editor();
  const k = 2 + (seed % 3); // 2..4 clusters
  const n = 6 + Math.floor(rnd() * 30);
  const centers: Array<[number, number]> = [];
  for (let c = 0; c < k; c++) {
    centers.push([rnd() * 16 - 8, rnd() * 16 - 8]);
  }
  for (let i = 0; i < n; i++) {
    const c = i % k; // every cluster is inhabited
    const [cx, cy] = centers[c];
    ed.addPoint(cx + (rnd() - 0.5) * 2, cy + (rnd() - 0.5) * 2);
    ed.paint({ x: ed.points[i].x, y: ed.points[i].y }, 0, c + 1);
  }
  if (seed % 2 === 0) {
    // second layer: merge the last two clusters (when there are >= 3) and
    // mark a couple of points as noise, keeping every remaining id alive
    ed.duplicateLayer(0);
    const layer = ed.labellings[1];
    const kk = k >= 3 ? k - 1 : k;
    for (let i = 0; i < n; i++) {
      if (layer[i] > kk) layer[i] = kk;
    }
    for (const i of [0, 1]) {
      ed.paint({ x: ed.points[i].x, y: ed.points[i].y }, 0, 0);
    }
    for (let c = 1; c <= kk; c++) {
      if (!layer.includes(c)) layer[n - c] = c;
    }
  }
  return ed;
}

rmSync(TARGET, { recursive: true, force: true });
let written = 0;
for (let b = 0; b < 10; b++) {
  const ed = buildEditor(1000 + b);
  const name = `shape${b}`;
  const files = exportDataset(ed.document(), name);
  const dir = join(TARGET, `bundle0${b}`);
  mkdirSync(dir, { recursive: true });
  for (const f of files) {
    writeFileSync(join(dir, f.filename), f.content);
    written++;
  }
}
console.log(`wrote ${written} files under ${TARGET}`);
