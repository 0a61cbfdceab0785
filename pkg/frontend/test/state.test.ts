/**
 * Wire-transcript replay acceptance: drives the UI state fold with a
 * recorded engine transcript and checks the warning-circle and zoom-window
 * invariants hold at every step.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { applyMessage, initialState, warningCircleVisible } from "../src/state.js";
import { parseTranscript, WireMessage } from "../src/wire.js";

const HERE = dirname(fileURLToPath(import.meta.url));

function loadTranscript(): WireMessage[] {
  return parseTranscript(
    readFileSync(join(HERE, "fixtures", "transcript.ndjson"), "utf-8")
  );
}

describe("wire transcript replay", () => {
  it("covers both dwell outcomes", () => {
    const types = loadTranscript().map((m) => m.type);
    expect(types).toContain("dwell_armed");
    expect(types).toContain("dwell_committed");
    expect(types).toContain("dwell_cancelled");
    expect(types.filter((t) => t === "dwell_armed").length).toBeGreaterThanOrEqual(2);
  });

  it("shows the warning circle only between armed and committed/cancelled", () => {
    const messages = loadTranscript();
    let state = initialState();
    let armedOpen = false; // independent bookkeeping straight off the transcript
    for (const msg of messages) {
      if (msg.type === "dwell_armed") armedOpen = true;
      // the closing message itself already hides the circle
      if (msg.type === "dwell_committed" || msg.type === "dwell_cancelled") {
        armedOpen = false;
      }
      state = applyMessage(state, msg);
      expect(warningCircleVisible(state)).toBe(armedOpen);
    }
    expect(warningCircleVisible(state)).toBe(false); // all dwells closed
  });

  it("circle position is the armed point from the engine", () => {
    const messages = loadTranscript();
    let state = initialState();
    for (const msg of messages) {
      state = applyMessage(state, msg);
      if (msg.type === "dwell_armed") {
        expect(state.armed?.x).toBe(msg.x);
        expect(state.armed?.y).toBe(msg.y);
        expect(state.armed?.zone).toBe(msg.zone);
      }
    }
  });

  it("swaps the zoom window only on committed", () => {
    const messages = loadTranscript();
    let state = initialState();
    let commitsSeen = 0;
    let swapsAfterHello = 0;
    let prevType: string | null = null;
    for (const msg of messages) {
      const before = state.mapState;
      state = applyMessage(state, msg);
      const swapped = state.mapState !== before;
      if (msg.type === "map_state") {
        expect(swapped).toBe(true);
        if (before !== null) {
          // every view change after the hello is caused by a commit
          expect(prevType).toBe("dwell_committed");
          swapsAfterHello++;
        }
      } else {
        // no other message type may touch the map view
        expect(swapped).toBe(false);
      }
      if (msg.type === "dwell_committed") commitsSeen++;
      prevType = msg.type;
    }
    expect(commitsSeen).toBeGreaterThan(0);
    expect(swapsAfterHello).toBe(commitsSeen);
  });

  it("keeps layout from the hello and tracks lens regions", () => {
    const messages = loadTranscript();
    let state = initialState();
    const lensCenters: Array<[number, number]> = [];
    for (const msg of messages) {
      state = applyMessage(state, msg);
      if (msg.type === "lens") lensCenters.push([msg.x, msg.y]);
    }
    expect(state.layout).not.toBeNull();
    expect(Object.keys(state.layout!)).toContain("overview");
    // the scripted session re-anchors at least twice
    expect(lensCenters.length).toBeGreaterThanOrEqual(2);
    expect(state.lens?.active).toBe(true);
  });

  it("ignores unknown message types", () => {
    let state = initialState();
    const weird = { t: 5, type: "future_extension", payload: 42 } as unknown as WireMessage;
    const next = applyMessage(state, weird);
    expect(next.mapState).toBeNull();
    expect(next.lastT).toBe(5);
  });
});
