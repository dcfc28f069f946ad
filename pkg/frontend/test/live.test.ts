/**
 * Live panel round trip against the real backend: spawn the producer's
 * `serve` command on a scratch port, then drive the protocol through
 * LiveClient exactly as the browser panel does.
 */

import { ChildProcess, spawn } from "node:child_process";
import { createServer } from "node:net";
import { join } from "node:path";
import WebSocket from "ws";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { LiveClient } from "../src/live";
import { FrameMsg, SceneDoc } from "../src/types";

const fixture = join(__dirname, "fixtures", "pickplace.scene.json");

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.once("error", reject);
    srv.listen(0, "127.0.0.1", () => {
      const port = (srv.address() as { port: number }).port;
      srv.close(() => resolve(port));
    });
  });
}

function waitForPort(port: number, timeoutMs = 30000): Promise<void> {
  const started = Date.now();
  return new Promise((resolve, reject) => {
    const probe = () => {
      const ws = new WebSocket(`ws://127.0.0.1:${port}/ws`);
      ws.once("open", () => {
        ws.close();
        resolve();
      });
      ws.once("error", () => {
        if (Date.now() - started > timeoutMs) reject(new Error("server did not come up"));
        else setTimeout(probe, 200);
      });
    };
    probe();
  });
}

const wsFactory = (url: string) => new WebSocket(url) as never;

let proc: ChildProcess;
let port: number;

beforeAll(async () => {
  port = await freePort();
  proc = spawn(
    "python3",
    ["-m", "kinesim.cli", "serve", "--doc", fixture, "--port", String(port), "--rate", "40"],
    { stdio: ["ignore", "pipe", "pipe"] }
  );
  await waitForPort(port);
}, 40000);

afterAll(() => {
  proc?.kill();
});

describe("live panel round trip", () => {
  it("receives hello, acks set_config, errors on unreachable poses", async () => {
    let helloDoc: SceneDoc | null = null;
    const frames: FrameMsg[] = [];
    const client = new LiveClient(
      {
        onHello: (doc) => (helloDoc = doc),
        onFrame: (frame) => frames.push(frame),
      },
      wsFactory
    );
    await client.connect(`ws://127.0.0.1:${port}/ws`);
    await new Promise((r) => setTimeout(r, 400));

    expect(helloDoc).not.toBeNull();
    const doc = helloDoc! as SceneDoc;
    expect(doc._version).toBe("kinesim-doc/1");
    expect(doc.robots.map((r) => r.id)).toContain("robot");

    // slider release -> set_config -> ack; next frames carry the new q
    const reply = await client.setConfig("robot", [0.4, -0.2]);
    expect(reply.type).toBe("ack");
    await new Promise((r) => setTimeout(r, 300));
    const latest = frames[frames.length - 1];
    const cfg = new Map(latest.configs).get("robot")!;
    expect(cfg[0]).toBeCloseTo(0.4, 12);
    expect(cfg[1]).toBeCloseTo(-0.2, 12);

    // out-of-limit q -> error, connection stays open
    const bad = await client.setConfig("robot", [9.0, 0.0]);
    expect(bad.type).toBe("error");

    // unreachable task pose -> ik failure error with the request id
    const target = [1, 0, 0, 2.5, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1];
    const unreachable = await client.moveToPose("robot", "task", target);
    expect(unreachable.type).toBe("error");
    expect((unreachable as { message: string }).message.toLowerCase()).toContain("ik");

    // timeline controls respond too
    expect((await client.pause()).type).toBe("ack");
    expect((await client.seek(0.5)).type).toBe("ack");
    expect((await client.play()).type).toBe("ack");

    client.close();
  }, 30000);

  it("two clients observe identical broadcast frames", async () => {
    const framesA: FrameMsg[] = [];
    const framesB: FrameMsg[] = [];
    const a = new LiveClient({ onFrame: (f) => framesA.push(f) }, wsFactory);
    const b = new LiveClient({ onFrame: (f) => framesB.push(f) }, wsFactory);
    await a.connect(`ws://127.0.0.1:${port}/ws`);
    await b.connect(`ws://127.0.0.1:${port}/ws`);
    await a.play();
    await new Promise((r) => setTimeout(r, 500));
    a.close();
    b.close();
    const ta = framesA.map((f) => f.t);
    const tb = framesB.map((f) => f.t);
    const shared = ta.filter((t) => tb.includes(t));
    expect(shared.length).toBeGreaterThan(3);
    for (const t of shared.slice(0, 10)) {
      const fa = framesA.find((f) => f.t === t)!;
      const fb = framesB.find((f) => f.t === t)!;
      expect(fa).toEqual(fb);
    }
  }, 30000);
});
