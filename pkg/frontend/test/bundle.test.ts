/**
 * Offline harness: the shipped bundle must be able to make zero network
 * requests during playback. There is no browser here, so the check is
 * static and deliberately blunt: the bundle must not contain any
 * network-capable API call at all (fetch / XHR / dynamic import / external
 * resource URLs). The only allowed networking primitive is WebSocket, which
 * opens nothing until the user presses Connect in the live panel.
 */

import { execFileSync } from "node:child_process";
import { existsSync, readFileSync } from "node:fs";
import { join } from "node:path";
import { beforeAll, describe, expect, it } from "vitest";

const root = join(__dirname, "..");
const bundlePath = join(root, "dist", "viewer.js");

beforeAll(() => {
  if (!existsSync(bundlePath)) {
    execFileSync("node", [join(root, "scripts", "build.mjs")], { stdio: "inherit" });
  }
});

describe("bundle self-containment", () => {
  it("contains no network request APIs", () => {
    const src = readFileSync(bundlePath, "utf-8");
    expect(src).not.toMatch(/\bfetch\s*\(/);
    expect(src).not.toMatch(/XMLHttpRequest/);
    expect(src).not.toMatch(/\bimport\s*\(/);
    expect(src).not.toMatch(/navigator\.sendBeacon/);
    expect(src).not.toMatch(/EventSource/);
  });

  it("references no external resource URLs", () => {
    const src = readFileSync(bundlePath, "utf-8");
    expect(src).not.toMatch(/(src|href)\s*=\s*["']?\s*(https?:)?\/\//i);
    expect(src).not.toMatch(/url\(\s*["']?\s*(https?:)?\/\//i);
    expect(src).not.toMatch(/@import\b/);
  });

  it("cannot prematurely terminate its host script tag", () => {
    const src = readFileSync(bundlePath, "utf-8").toLowerCase();
    expect(src).not.toContain("</script");
    expect(src).not.toContain("<!--");
  });

  it("boots from the embedded document block", () => {
    const src = readFileSync(bundlePath, "utf-8");
    expect(src).toContain("scene-doc");
  });
});
