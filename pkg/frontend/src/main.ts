// DOM wiring: toolbar, canvas events, layer panel, import/export.

import { colorFor } from "./colors.js";
import { exportDataset, importDataset, validateForExport, type ExportFile } from "./io.js";
import { draw, View, type Cursor } from "./render.js";
import { Editor, MAX_LABEL } from "./state.js";

const canvas = document.getElementById("canvas") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const editor = new Editor();
const view = new View(canvas.width, canvas.height);
const cursor: Cursor = { x: 0, y: 0, visible: false };

let tool: "point" | "brush" = "point";
let hover = -1;
let dragging: number | null = null;
let panning: { x: number; y: number } | null = null;
let painting = false;

function $(id: string): HTMLElement {
  return document.getElementById(id)!;
}

function redraw(): void {
  draw(ctx, editor, view, cursor, tool, hover);
  renderLayerPanel();
  renderStatus();
}

function renderStatus(): void {
  const problems = validateForExport(editor.document());
  $("status").textContent =
    `${editor.n} points | layer ${editor.activeLayer} of ${editor.layerCount} | ` +
    `label ${editor.activeLabel} | brush ${editor.brushRadius}px` +
    (problems.length ? ` | not exportable: ${problems[0].message}` : " | exportable");
  const swatch = $("label-swatch");
  swatch.style.background = colorFor(editor.activeLabel);
  swatch.textContent = String(editor.activeLabel);
}

function renderLayerPanel(): void {
  const panel = $("layers");
  panel.innerHTML = "";
  editor.labellings.forEach((_, j) => {
    const row = document.createElement("div");
    row.className = "layer-row" + (j === editor.activeLayer ? " active" : "");
    const name = document.createElement("span");
    name.textContent = `labels${j}`;
    name.onclick = () => {
      editor.setActiveLayer(j);
      redraw();
    };
    row.appendChild(name);
    const dup = document.createElement("button");
    dup.textContent = "dup";
    dup.onclick = () => {
      editor.duplicateLayer(j);
      redraw();
    };
    row.appendChild(dup);
    const del = document.createElement("button");
    del.textContent = "del";
    del.onclick = () => {
      editor.deleteLayer(j);
      redraw();
    };
    row.appendChild(del);
    panel.appendChild(row);
  });
  const add = document.createElement("button");
  add.textContent = "+ layer";
  add.onclick = () => {
    editor.addLayer();
    redraw();
  };
  panel.appendChild(add);
}

function pointAt(px: number, py: number): number {
  for (let i = editor.points.length - 1; i >= 0; i--) {
    const s = view.toScreen(editor.points[i]);
    const dx = s.x - px;
    const dy = s.y - py;
    if (dx * dx + dy * dy <= 49) return i;
  }
  return -1;
}

function canvasPos(ev: MouseEvent): { x: number; y: number } {
  const rect = canvas.getBoundingClientRect();
  return { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
}

canvas.addEventListener("mousedown", (ev) => {
  const { x, y } = canvasPos(ev);
  if (ev.button === 1 || ev.shiftKey) {
    panning = { x, y };
    ev.preventDefault();
    return;
  }
  if (ev.button !== 0) return;
  if (tool === "brush") {
    painting = true;
    const p = view.toData(x, y);
    editor.paint(p, editor.brushRadius / view.scale, editor.activeLabel);
    redraw();
    return;
  }
  const i = pointAt(x, y);
  if (i >= 0) {
    dragging = i;
  } else {
    const p = view.toData(x, y);
    editor.addPoint(p.x, p.y);
    redraw();
  }
});

canvas.addEventListener("mousemove", (ev) => {
  const { x, y } = canvasPos(ev);
  cursor.x = x;
  cursor.y = y;
  cursor.visible = true;
  if (panning) {
    view.pan(x - panning.x, y - panning.y);
    panning = { x, y };
  } else if (dragging !== null) {
    const p = view.toData(x, y);
    editor.movePoint(dragging, p.x, p.y);
  } else if (painting) {
    const p = view.toData(x, y);
    editor.paint(p, editor.brushRadius / view.scale, editor.activeLabel);
  } else {
    hover = pointAt(x, y);
  }
  redraw();
});

window.addEventListener("mouseup", () => {
  dragging = null;
  panning = null;
  painting = false;
});

canvas.addEventListener("mouseleave", () => {
  cursor.visible = false;
  hover = -1;
  redraw();
});

canvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  const { x, y } = canvasPos(ev as MouseEvent);
  view.zoomAt(x, y, ev.deltaY < 0 ? 1.15 : 1 / 1.15);
  redraw();
});

canvas.addEventListener("contextmenu", (ev) => {
  ev.preventDefault();
  const { x, y } = canvasPos(ev as MouseEvent);
  const i = pointAt(x, y);
  if (i >= 0) {
    editor.deletePoint(i);
    hover = -1;
    redraw();
  }
});

window.addEventListener("keydown", (ev) => {
  if (ev.target instanceof HTMLInputElement) return;
  if (ev.key >= "0" && ev.key <= "9") {
    editor.setActiveLabel(Number(ev.key));
    tool = "brush";
  } else if (ev.key === "p") {
    tool = "point";
  } else if (ev.key === "b") {
    tool = "brush";
  } else if (ev.key === "[") {
    editor.setBrushRadius(editor.brushRadius - 4);
  } else if (ev.key === "]") {
    editor.setBrushRadius(editor.brushRadius + 4);
  } else if ((ev.ctrlKey || ev.metaKey) && ev.key.toLowerCase() === "z" && ev.shiftKey) {
    editor.redo();
  } else if ((ev.ctrlKey || ev.metaKey) && ev.key.toLowerCase() === "z") {
    editor.undo();
  } else if ((ev.ctrlKey || ev.metaKey) && ev.key.toLowerCase() === "y") {
    editor.redo();
  } else if (ev.key === "Delete" && hover >= 0) {
    editor.deletePoint(hover);
    hover = -1;
  } else {
    return;
  }
  ev.preventDefault();
  redraw();
});

($("tool-point") as HTMLButtonElement).onclick = () => {
  tool = "point";
  redraw();
};
($("tool-brush") as HTMLButtonElement).onclick = () => {
  tool = "brush";
  redraw();
};
($("undo") as HTMLButtonElement).onclick = () => {
  editor.undo();
  redraw();
};
($("redo") as HTMLButtonElement).onclick = () => {
  editor.redo();
  redraw();
};

for (let l = 0; l <= MAX_LABEL; l++) {
  const btn = document.createElement("button");
  btn.textContent = String(l);
  btn.style.background = colorFor(l);
  btn.title = l === 0 ? "noise (excluded from scoring)" : `cluster ${l}`;
  btn.onclick = () => {
    editor.setActiveLabel(l);
    tool = "brush";
    redraw();
  };
  $("label-buttons").appendChild(btn);
}

($("export") as HTMLButtonElement).onclick = () => {
  const name = ($("dataset-name") as HTMLInputElement).value || "dataset";
  let files: ExportFile[];
  try {
    files = exportDataset(editor.document(), name);
  } catch (err) {
    alert(String(err));
    return;
  }
  for (const f of files) {
    const blob = new Blob([f.content], { type: "text/plain" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = f.filename;
    a.click();
    URL.revokeObjectURL(a.href);
  }
};

async function importFiles(fileList: FileList | File[]): Promise<void> {
  const files: ExportFile[] = [];
  for (const f of Array.from(fileList)) {
    files.push({ filename: f.name, content: await f.text() });
  }
  try {
    editor.restore(importDataset(files));
  } catch (err) {
    alert(String(err));
    return;
  }
  redraw();
}

($("import") as HTMLInputElement).addEventListener("change", (ev) => {
  const input = ev.target as HTMLInputElement;
  if (input.files) void importFiles(input.files);
  input.value = "";
});

canvas.addEventListener("dragover", (ev) => ev.preventDefault());
canvas.addEventListener("drop", (ev) => {
  ev.preventDefault();
  if (ev.dataTransfer?.files.length) void importFiles(ev.dataTransfer.files);
});

redraw();
