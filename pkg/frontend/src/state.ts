// Editor document model: points, labelling layers, and an undo/redo history
// of inverse actions.  Coordinates live in data units; the canvas transform
// is kept elsewhere so zooming never touches exported values.

export interface Point {
  x: number;
  y: number;
}

export interface DocumentState {
  points: Point[];
  labellings: number[][];
  activeLayer: number;
}

interface UndoEntry {
  undo: () => void;
  redo: () => void;
}

export const MAX_LABEL = 9;

function assertFinite(x: number, y: number): void {
  if (!Number.isFinite(x) || !Number.isFinite(y)) {
    throw new Error(`coordinates must be finite, got (${x}, ${y})`);
  }
}

export class Editor {
  points: Point[] = [];
  labellings: number[][] = [[]];
  activeLayer = 0;
  activeLabel = 1;
  brushRadius = 24; // pixels; callers convert to data units per zoom

  private undoStack: UndoEntry[] = [];
  private redoStack: UndoEntry[] = [];

  get n(): number {
    return this.points.length;
  }

  get layerCount(): number {
    return this.labellings.length;
  }

  /** Deep snapshot of everything undo/redo must restore. */
  document(): DocumentState {
    return {
      points: this.points.map((p) => ({ x: p.x, y: p.y })),
      labellings: this.labellings.map((layer) => layer.slice()),
      activeLayer: this.activeLayer,
    };
  }

  restore(doc: DocumentState): void {
    this.points = doc.points.map((p) => ({ x: p.x, y: p.y }));
    this.labellings = doc.labellings.map((layer) => layer.slice());
    this.activeLayer = doc.activeLayer;
    this.undoStack = [];
    this.redoStack = [];
  }

  private push(entry: UndoEntry): void {
    this.undoStack.push(entry);
    this.redoStack = [];
  }

  canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  undo(): boolean {
    const entry = this.undoStack.pop();
    if (!entry) return false;
    entry.undo();
    this.redoStack.push(entry);
    return true;
  }

  redo(): boolean {
    const entry = this.redoStack.pop();
    if (!entry) return false;
    entry.redo();
    this.undoStack.push(entry);
    return true;
  }

  // --- point operations -----------------------------------------------

  /** Append a point; every layer grows by one 0 (unlabelled/noise) entry. */
  addPoint(x: number, y: number): boolean {
    assertFinite(x, y);
    const apply = () => {
      this.points.push({ x, y });
      for (const layer of this.labellings) layer.push(0);
    };
    const revert = () => {
      this.points.pop();
      for (const layer of this.labellings) layer.pop();
    };
    apply();
    this.push({ undo: revert, redo: apply });
    return true;
  }

  movePoint(i: number, x: number, y: number): boolean {
    this.checkIndex(i);
    assertFinite(x, y);
    const before = { ...this.points[i] };
    if (before.x === x && before.y === y) return false;
    const apply = () => {
      this.points[i] = { x, y };
    };
    apply();
    this.push({
      undo: () => {
        this.points[i] = { ...before };
      },
      redo: apply,
    });
    return true;
  }

  deletePoint(i: number): boolean {
    this.checkIndex(i);
    const point = { ...this.points[i] };
    const labels = this.labellings.map((layer) => layer[i]);
    const apply = () => {
      this.points.splice(i, 1);
      for (const layer of this.labellings) layer.splice(i, 1);
    };
    apply();
    this.push({
      undo: () => {
        this.points.splice(i, 0, { ...point });
        this.labellings.forEach((layer, j) => layer.splice(i, 0, labels[j]));
      },
      redo: apply,
    });
    return true;
  }

  // --- painting ---------------------------------------------------------

  /** Label every point within radius of center on the active layer; one undo entry per stroke. */
  paint(center: Point, radius: number, label: number): boolean {
    if (!Number.isInteger(label) || label < 0 || label > MAX_LABEL) {
      throw new Error(`label must be an integer in 0..${MAX_LABEL}, got ${label}`);
    }
    const layerIndex = this.activeLayer;
    const layer = this.labellings[layerIndex];
    const changed: Array<[number, number]> = [];
    const r2 = radius * radius;
    for (let i = 0; i < this.points.length; i++) {
      const dx = this.points[i].x - center.x;
      const dy = this.points[i].y - center.y;
      if (dx * dx + dy * dy <= r2 && layer[i] !== label) {
        changed.push([i, layer[i]]);
        layer[i] = label;
      }
    }
    if (changed.length === 0) return false;
    this.push({
      undo: () => {
        for (const [i, old] of changed) this.labellings[layerIndex][i] = old;
      },
      redo: () => {
        for (const [i] of changed) this.labellings[layerIndex][i] = label;
      },
    });
    return true;
  }

  // --- layers -----------------------------------------------------------

  addLayer(): boolean {
    const prevActive = this.activeLayer;
    const apply = () => {
      this.labellings.push(new Array(this.n).fill(0));
      this.activeLayer = this.labellings.length - 1;
    };
    apply();
    this.push({
      undo: () => {
        this.labellings.pop();
        this.activeLayer = prevActive;
      },
      redo: apply,
    });
    return true;
  }

  duplicateLayer(j: number): boolean {
    this.checkLayer(j);
    const prevActive = this.activeLayer;
    const apply = () => {
      this.labellings.push(this.labellings[j].slice());
      this.activeLayer = this.labellings.length - 1;
    };
    apply();
    this.push({
      undo: () => {
        this.labellings.pop();
        this.activeLayer = prevActive;
      },
      redo: apply,
    });
    return true;
  }

  deleteLayer(j: number): boolean {
    this.checkLayer(j);
    if (this.labellings.length === 1) return false; // keep at least one layer
    const removed = this.labellings[j].slice();
    const prevActive = this.activeLayer;
    const apply = () => {
      this.labellings.splice(j, 1);
      this.activeLayer = Math.min(prevActive, this.labellings.length - 1);
      if (prevActive > j) this.activeLayer = prevActive - 1;
    };
    apply();
    this.push({
      undo: () => {
        this.labellings.splice(j, 0, removed.slice());
        this.activeLayer = prevActive;
      },
      redo: apply,
    });
    return true;
  }

  setActiveLayer(j: number): void {
    this.checkLayer(j);
    this.activeLayer = j;
  }

  setActiveLabel(label: number): void {
    if (!Number.isInteger(label) || label < 0 || label > MAX_LABEL) {
      throw new Error(`label must be an integer in 0..${MAX_LABEL}`);
    }
    this.activeLabel = label;
  }

  setBrushRadius(r: number): void {
    this.brushRadius = Math.max(1, Math.min(400, r));
  }

  // ------------------------------------------------------------------------

  private checkIndex(i: number): void {
    if (!Number.isInteger(i) || i < 0 || i >= this.points.length) {
      throw new Error(`point index ${i} out of range 0..${this.points.length - 1}`);
    }
  }

  private checkLayer(j: number): void {
    if (!Number.isInteger(j) || j < 0 || j >= this.labellings.length) {
      throw new Error(`layer index ${j} out of range 0..${this.labellings.length - 1}`);
    }
  }
}

export function sameDocument(a: DocumentState, b: DocumentState): boolean {
  if (a.activeLayer !== b.activeLayer) return false;
  if (a.points.length !== b.points.length) return false;
  for (let i = 0; i < a.points.length; i++) {
    if (!Object.is(a.points[i].x, b.points[i].x) || !Object.is(a.points[i].y, b.points[i].y)) {
      return false;
    }
  }
  if (a.labellings.length !== b.labellings.length) return false;
  for (let j = 0; j < a.labellings.length; j++) {
    const la = a.labellings[j];
    const lb = b.labellings[j];
    if (la.length !== lb.length) return false;
    for (let i = 0; i < la.length; i++) if (la[i] !== lb[i]) return false;
  }
  return true;
}
