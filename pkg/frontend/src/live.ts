/**
 * Live-mode websocket client. Every request carries a client-assigned id and
 * resolves with the matching ack or error reply; frames and the hello
 * document arrive through callbacks. Constructed with a WebSocket factory so
 * the protocol logic is testable outside the browser.
 */

import { AckMsg, ErrorMsg, FrameMsg, SceneDoc, ServerMsg } from "./types";

export type Reply = AckMsg | ErrorMsg;

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev: unknown) => void) | null;
  onopen: ((ev: unknown) => void) | null;
  onerror: ((ev: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface LiveCallbacks {
  onHello?: (doc: SceneDoc) => void;
  onFrame?: (frame: FrameMsg) => void;
  onReply?: (reply: Reply) => void;
  onClose?: () => void;
}

export class LiveClient {
  private socket: SocketLike | null = null;
  private nextId = 1;
  private pending = new Map<number, (reply: Reply) => void>();
  connected = false;

  constructor(private callbacks: LiveCallbacks, private factory?: SocketFactory) {}

  connect(url: string): Promise<void> {
    const make = this.factory ?? ((u: string) => new WebSocket(u) as unknown as SocketLike);
    return new Promise((resolve, reject) => {
      let socket: SocketLike;
      try {
        socket = make(url);
      } catch (exc) {
        reject(exc);
        return;
      }
      this.socket = socket;
      socket.onopen = () => {
        this.connected = true;
        resolve();
      };
      socket.onerror = (ev) => {
        if (!this.connected) reject(new Error("websocket connection failed"));
      };
      socket.onclose = () => {
        const wasConnected = this.connected;
        this.connected = false;
        this.socket = null;
        for (const resolver of this.pending.values()) {
          resolver({ type: "error", id: null, message: "connection closed" });
        }
        this.pending.clear();
        if (wasConnected) this.callbacks.onClose?.();
      };
      socket.onmessage = (ev) => {
        let msg: ServerMsg;
        try {
          msg = JSON.parse(String(ev.data));
        } catch {
          return;
        }
        if (msg.type === "hello") {
          this.callbacks.onHello?.(msg.doc);
        } else if (msg.type === "frame") {
          this.callbacks.onFrame?.(msg);
        } else if (msg.type === "ack" || msg.type === "error") {
          this.callbacks.onReply?.(msg);
          if (msg.id !== null && this.pending.has(msg.id as number)) {
            const resolver = this.pending.get(msg.id as number)!;
            this.pending.delete(msg.id as number);
            resolver(msg);
          }
        }
      };
    });
  }

  close(): void {
    this.socket?.close();
  }

  private request(payload: Record<string, unknown>): Promise<Reply> {
    if (!this.socket || !this.connected) {
      return Promise.resolve({ type: "error", id: null, message: "not connected" });
    }
    const id = this.nextId++;
    const promise = new Promise<Reply>((resolve) => this.pending.set(id, resolve));
    this.socket.send(JSON.stringify({ ...payload, id }));
    return promise;
  }

  setConfig(robot: string, q: number[]): Promise<Reply> {
    return this.request({ type: "set_config", robot, q });
  }

  moveToPose(robot: string, space: "joint" | "task", target: number[]): Promise<Reply> {
    return this.request({ type: "move_to_pose", robot, space, target });
  }

  play(): Promise<Reply> {
    return this.request({ type: "play" });
  }

  pause(): Promise<Reply> {
    return this.request({ type: "pause" });
  }

  seek(t: number): Promise<Reply> {
    return this.request({ type: "seek", t });
  }
}
