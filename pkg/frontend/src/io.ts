// Export/import of the benchmark text format: one "x y" line per point in
// <name>.data, one integer per line in <name>.labels<j>.  JavaScript's
// default number formatting is shortest-round-trip, so coordinates survive
// the text representation exactly.

import type { DocumentState, Point } from "./state.js";

export interface ExportFile {
  filename: string;
  content: string;
}

export interface LayerProblem {
  layer: number;
  message: string;
}

const NAME_RE = /^[a-z0-9_]+$/;

export function formatCoord(v: number): string {
  if (Object.is(v, -0)) return "-0"; // String(-0) would drop the sign
  return String(v);
}

/** Validation a layer must pass before export: labels cover 1..k, k >= 2. */
export function layerProblems(layer: number[], index: number): LayerProblem[] {
  const problems: LayerProblem[] = [];
  let k = 0;
  for (const v of layer) {
    if (!Number.isInteger(v) || v < 0) {
      problems.push({ layer: index, message: `invalid label ${v}` });
      return problems;
    }
    k = Math.max(k, v);
  }
  if (k < 2) {
    problems.push({ layer: index, message: `needs at least 2 clusters, has k=${k}` });
    return problems;
  }
  const present = new Set(layer);
  for (let v = 1; v <= k; v++) {
    if (!present.has(v)) {
      problems.push({ layer: index, message: `label ${v} missing` });
    }
  }
  return problems;
}

export function validateForExport(doc: DocumentState): LayerProblem[] {
  const problems: LayerProblem[] = [];
  if (doc.points.length < 2) {
    problems.push({ layer: -1, message: `needs at least 2 points, has ${doc.points.length}` });
  }
  doc.labellings.forEach((layer, j) => problems.push(...layerProblems(layer, j)));
  return problems;
}

/** Build the two-file text bundle; throws listing every offending layer. */
export function exportDataset(doc: DocumentState, name: string): ExportFile[] {
  if (!NAME_RE.test(name)) {
    throw new Error(`dataset name ${JSON.stringify(name)} must match [a-z0-9_]+`);
  }
  const problems = validateForExport(doc);
  if (problems.length > 0) {
    const text = problems
      .map((p) => (p.layer < 0 ? p.message : `layer ${p.layer}: ${p.message}`))
      .join("; ");
    throw new Error(`cannot export: ${text}`);
  }
  const files: ExportFile[] = [
    {
      filename: `${name}.data`,
      content: doc.points.map((p) => `${formatCoord(p.x)} ${formatCoord(p.y)}\n`).join(""),
    },
  ];
  doc.labellings.forEach((layer, j) => {
    files.push({
      filename: `${name}.labels${j}`,
      content: layer.map((v) => `${v}\n`).join(""),
    });
  });
  return files;
}

function parseLines(content: string): string[][] {
  const rows: string[][] = [];
  for (const raw of content.split(/\r?\n/)) {
    const line = raw.trim();
    if (!line || line.startsWith("%") || line.startsWith("#")) continue;
    rows.push(line.split(/[ \t]+/));
  }
  return rows;
}

function parsePoints(content: string, filename: string): Point[] {
  const rows = parseLines(content);
  if (rows.length === 0) throw new Error(`${filename}: no data rows`);
  const points: Point[] = [];
  for (const row of rows) {
    if (row.length !== 2) {
      throw new Error(`${filename}: expected 2 coordinates per line, got ${row.length}`);
    }
    const x = Number(row[0]);
    const y = Number(row[1]);
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      throw new Error(`${filename}: malformed coordinate ${row.join(" ")}`);
    }
    points.push({ x, y });
  }
  return points;
}

function parseLabels(content: string, filename: string, n: number): number[] {
  const rows = parseLines(content);
  if (rows.length !== n) {
    throw new Error(`${filename}: ${rows.length} labels for ${n} points`);
  }
  return rows.map((row, i) => {
    if (row.length !== 1 || !/^\d+$/.test(row[0])) {
      throw new Error(`${filename}: line ${i}: malformed label ${row.join(" ")}`);
    }
    return Number(row[0]);
  });
}

/** Parse a picked/dropped file set into a document (2-d data only). */
export function importDataset(files: ExportFile[]): DocumentState {
  const dataFiles = files.filter((f) => f.filename.endsWith(".data"));
  if (dataFiles.length !== 1) {
    throw new Error(`import needs exactly one .data file, got ${dataFiles.length}`);
  }
  const points = parsePoints(dataFiles[0].content, dataFiles[0].filename);
  const byIndex = new Map<number, ExportFile>();
  for (const f of files) {
    const m = /\.labels(\d+)$/.exec(f.filename);
    if (m) byIndex.set(Number(m[1]), f);
  }
  const labellings: number[][] = [];
  for (let j = 0; byIndex.has(j); j++) {
    const f = byIndex.get(j)!;
    labellings.push(parseLabels(f.content, f.filename, points.length));
  }
  if (labellings.length === 0) {
    labellings.push(new Array(points.length).fill(0));
  }
  return { points, labellings, activeLayer: 0 };
}
