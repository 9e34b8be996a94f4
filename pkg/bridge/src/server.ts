/**
 * HTTP/1.1 + JSON wire protocol:
 *
 *   POST /v1/detect   {"image": b64, "classes": [..]}  -> {"counts": {class: int}}
 *   POST /v1/caption  {"image": b64, "k": int}         -> {"captions": [..]}
 *   POST /v1/generate {"caption": str}                 -> {"image": b64}
 *
 * Every failure returns {"error": {"code": int, "message": str}} with the
 * matching HTTP status; a response never carries both a result and an error.
 */

import { createServer, type IncomingMessage, type Server, type ServerResponse } from "node:http";
import { BridgeFault, MockBackend } from "./backend.js";

export interface ServerOptions {
  /** Requests taking longer than this report 504 (default 30 s). */
  timeoutMs?: number;
}

const BASE64_RE = /^[A-Za-z0-9+/]*={0,2}$/;

function isBase64(value: unknown): value is string {
  return typeof value === "string" && value.length % 4 === 0 && BASE64_RE.test(value);
}

function sendJson(res: ServerResponse, status: number, doc: unknown): void {
  const blob = JSON.stringify(doc);
  res.writeHead(status, {
    "Content-Type": "application/json",
    "Content-Length": Buffer.byteLength(blob),
  });
  res.end(blob);
}

function sendError(res: ServerResponse, code: number, message: string): void {
  sendJson(res, code, { error: { code, message } });
}

function readBody(req: IncomingMessage): Promise<string> {
  return new Promise((resolve, reject) => {
    const chunks: Buffer[] = [];
    req.on("data", (chunk) => chunks.push(chunk));
    req.on("end", () => resolve(Buffer.concat(chunks).toString("utf-8")));
    req.on("error", reject);
  });
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

async function handleDetect(backend: MockBackend, body: Record<string, unknown>,
                            res: ServerResponse): Promise<void> {
  const { image, classes, threshold } = body;
  if (!isBase64(image)) {
    return sendError(res, 400, "'image' must be a base64 string");
  }
  if (!Array.isArray(classes) || classes.some((c) => typeof c !== "string")) {
    return sendError(res, 400, "'classes' must be a list of strings");
  }
  if (threshold !== undefined &&
      (typeof threshold !== "number" || threshold < 0 || threshold > 1)) {
    return sendError(res, 400, "'threshold' must be a number in [0, 1]");
  }
  sendJson(res, 200, { counts: backend.detect(image, classes as string[]) });
}

async function handleCaption(backend: MockBackend, body: Record<string, unknown>,
                             res: ServerResponse): Promise<void> {
  const { image, k } = body;
  if (!isBase64(image)) {
    return sendError(res, 400, "'image' must be a base64 string");
  }
  if (typeof k !== "number" || !Number.isInteger(k) || k < 1) {
    return sendError(res, 400, "'k' must be an integer >= 1");
  }
  sendJson(res, 200, { captions: backend.caption(image, k) });
}

async function handleGenerate(backend: MockBackend, body: Record<string, unknown>,
                              res: ServerResponse, timeoutMs: number): Promise<void> {
  const { caption } = body;
  if (typeof caption !== "string" || caption.length === 0) {
    return sendError(res, 400, "'caption' must be a non-empty string");
  }
  const { image, delayMs } = backend.generate(caption);
  if (delayMs > timeoutMs) {
    await sleep(timeoutMs);
    return sendError(res, 504, `generation exceeded the ${timeoutMs} ms timeout`);
  }
  if (delayMs > 0) {
    await sleep(delayMs);
  }
  sendJson(res, 200, { image });
}

export function createBridgeServer(backend: MockBackend, options: ServerOptions = {}): Server {
  const timeoutMs = options.timeoutMs ?? 30_000;
  return createServer(async (req, res) => {
    if (req.method !== "POST") {
      return sendError(res, 405, "only POST is supported");
    }
    let body: Record<string, unknown>;
    try {
      const raw = await readBody(req);
      const parsed: unknown = JSON.parse(raw);
      if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
        return sendError(res, 400, "request body must be a JSON object");
      }
      body = parsed as Record<string, unknown>;
    } catch {
      return sendError(res, 400, "request body is not valid JSON");
    }
    try {
      switch (req.url) {
        case "/v1/detect":
          return await handleDetect(backend, body, res);
        case "/v1/caption":
          return await handleCaption(backend, body, res);
        case "/v1/generate":
          return await handleGenerate(backend, body, res, timeoutMs);
        default:
          return sendError(res, 404, `no such endpoint: ${req.url}`);
      }
    } catch (fault) {
      if (fault instanceof BridgeFault) {
        return sendError(res, fault.code, fault.message);
      }
      return sendError(res, 500, "internal error");
    }
  });
}
