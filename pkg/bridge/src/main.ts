/**
 * Entry point. Environment:
 *   BRIDGE_PORT       listen port (default 8787)
 *   BRIDGE_MODEL_DIR  directory holding fixtures.json with a BackendConfig;
 *                     absent -> built-in demo fixtures
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { MockBackend, type BackendConfig } from "./backend.js";
import { createBridgeServer } from "./server.js";

const DEMO_CONFIG: BackendConfig = {
  labels: ["person", "car", "dog"],
  counts: { person: 3, car: 2, dog: 1 },
  captions: ["3 person;2 car;1 dog"],
  image: Buffer.from("demo-image").toString("base64"),
};

function loadConfig(): BackendConfig {
  const dir = process.env.BRIDGE_MODEL_DIR;
  if (!dir) {
    return DEMO_CONFIG;
  }
  const raw = readFileSync(join(dir, "fixtures.json"), "utf-8");
  return JSON.parse(raw) as BackendConfig;
}

const port = Number(process.env.BRIDGE_PORT ?? 8787);
const server = createBridgeServer(new MockBackend(loadConfig()));
server.listen(port, () => {
  console.log(`model bridge listening on :${port}`);
});
