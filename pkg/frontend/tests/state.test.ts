import assert from "node:assert/strict";
import { test } from "node:test";

import { Editor, sameDocument, type DocumentState } from "../src/state.js";

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

test("add point to empty editor grows every layer with 0", () => {
  const ed = new Editor();
  ed.addLayer();
  ed.addPoint(1.5, -2.0);
  assert.equal(ed.n, 1);
  assert.deepEqual(ed.labellings, [[0], [0]]);
});

test("delete last point shrinks all layers", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  ed.addPoint(1, 1);
  ed.addLayer();
  ed.paint({ x: 1, y: 1 }, 0.1, 3);
  ed.deletePoint(1);
  assert.equal(ed.n, 1);
  assert.deepEqual(ed.labellings, [[0], [0]]);
});

test("move preserves all labels", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  ed.addPoint(1, 1);
  ed.paint({ x: 0, y: 0 }, 10, 2);
  const before = ed.labellings.map((l) => l.slice());
  ed.movePoint(0, 5, 5);
  assert.deepEqual(ed.labellings, before);
  assert.deepEqual(ed.points[0], { x: 5, y: 5 });
});

test("paint with covering radius makes the layer uniform", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  ed.addPoint(3, 4);
  ed.addPoint(-2, 1);
  assert.equal(ed.paint({ x: 0, y: 0 }, 100, 1), true);
  assert.deepEqual(ed.labellings[0], [1, 1, 1]);
});

test("paint with radius 0 changes nothing", () => {
  const ed = new Editor();
  ed.addPoint(1, 1);
  const changed = ed.paint({ x: 0, y: 0 }, 0, 1);
  assert.equal(changed, false);
  assert.deepEqual(ed.labellings[0], [0]);
});

test("paint radius 0 exactly on a point still hits it", () => {
  const ed = new Editor();
  ed.addPoint(2, 3);
  assert.equal(ed.paint({ x: 2, y: 3 }, 0, 7), true);
  assert.deepEqual(ed.labellings[0], [7]);
});

test("painting label 0 marks noise", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  ed.paint({ x: 0, y: 0 }, 1, 2);
  ed.paint({ x: 0, y: 0 }, 1, 0);
  assert.deepEqual(ed.labellings[0], [0]);
});

test("paint affects only the active layer", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  ed.addLayer();
  ed.paint({ x: 0, y: 0 }, 1, 4);
  assert.deepEqual(ed.labellings[0], [0]);
  assert.deepEqual(ed.labellings[1], [4]);
});

test("one stroke is one undo entry", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  ed.addPoint(1, 0);
  ed.addPoint(2, 0);
  ed.paint({ x: 1, y: 0 }, 5, 3);
  assert.deepEqual(ed.labellings[0], [3, 3, 3]);
  ed.undo();
  assert.deepEqual(ed.labellings[0], [0, 0, 0]);
});

test("delete layer keeps at least one and restores on undo", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  assert.equal(ed.deleteLayer(0), false);
  ed.addLayer();
  ed.paint({ x: 0, y: 0 }, 1, 5);
  const doc = ed.document();
  assert.equal(ed.deleteLayer(1), true);
  assert.equal(ed.layerCount, 1);
  ed.undo();
  assert.ok(sameDocument(ed.document(), doc));
});

test("duplicate layer copies labels and activates the copy", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  ed.paint({ x: 0, y: 0 }, 1, 3);
  ed.duplicateLayer(0);
  assert.equal(ed.activeLayer, 1);
  assert.deepEqual(ed.labellings[1], [3]);
});

test("out-of-range indices throw", () => {
  const ed = new Editor();
  assert.throws(() => ed.movePoint(0, 1, 1), /out of range/);
  assert.throws(() => ed.deletePoint(-1), /out of range/);
  assert.throws(() => ed.setActiveLayer(4), /out of range/);
  assert.throws(() => ed.paint({ x: 0, y: 0 }, 1, 11), /label/);
  assert.throws(() => ed.addPoint(Number.NaN, 0), /finite/);
});

test("redo stack clears on a new action", () => {
  const ed = new Editor();
  ed.addPoint(0, 0);
  ed.addPoint(1, 1);
  ed.undo();
  assert.equal(ed.canRedo(), true);
  ed.addPoint(2, 2);
  assert.equal(ed.canRedo(), false);
});

function randomAction(ed: Editor, rnd: () => number): boolean {
  const choice = rnd();
  const n = ed.n;
  if (choice < 0.3 || n === 0) {
    return ed.addPoint(rnd() * 10 - 5, rnd() * 10 - 5);
  }
  const i = Math.floor(rnd() * n);
  if (choice < 0.45) {
    return ed.movePoint(i, rnd() * 10 - 5, rnd() * 10 - 5);
  }
  if (choice < 0.6) {
    return ed.deletePoint(i);
  }
  if (choice < 0.8) {
    return ed.paint(
      { x: rnd() * 10 - 5, y: rnd() * 10 - 5 },
      rnd() * 4,
      Math.floor(rnd() * 10),
    );
  }
  if (choice < 0.87) {
    return ed.addLayer();
  }
  if (choice < 0.94) {
    return ed.duplicateLayer(Math.floor(rnd() * ed.layerCount));
  }
  return ed.deleteLayer(Math.floor(rnd() * ed.layerCount));
}

test("undo is an exact inverse over scripted 100-action sequences", () => {
  for (const seed of [1, 2, 3, 4, 5]) {
    const rnd = mulberry32(seed);
    const ed = new Editor();
    const snapshots: DocumentState[] = [];
    const recorded: boolean[] = [];
    for (let step = 0; step < 100; step++) {
      const before = ed.document();
      const changed = randomAction(ed, rnd);
      if (changed) {
        snapshots.push(before);
        recorded.push(true);
      } else {
        assert.ok(sameDocument(ed.document(), before), "no-op must not change state");
      }
    }
    // unwind completely: every undo must restore the exact prior snapshot
    for (let i = snapshots.length - 1; i >= 0; i--) {
      assert.equal(ed.undo(), true);
      assert.ok(sameDocument(ed.document(), snapshots[i]), `undo ${i} mismatch (seed ${seed})`);
    }
    assert.equal(ed.canUndo(), false);
  }
});

test("redo replays to the same states as the original actions", () => {
  const rnd = mulberry32(42);
  const ed = new Editor();
  const after: DocumentState[] = [];
  for (let step = 0; step < 100; step++) {
    if (randomAction(ed, rnd)) after.push(ed.document());
  }
  const final = ed.document();
  while (ed.undo()) { /* unwind */ }
  for (let i = 0; i < after.length; i++) {
    assert.equal(ed.redo(), true);
    assert.ok(sameDocument(ed.document(), after[i]), `redo ${i} mismatch`);
  }
  assert.ok(sameDocument(ed.document(), final));
  assert.equal(ed.canRedo(), false);
});
