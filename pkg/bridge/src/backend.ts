/**
 * Mock model backend — scripted responses standing in for the real
 * detector / captioner / generator stack.
 */

export interface BackendConfig {
  /** Class labels the detector knows; requests outside this set are rejected. */
  labels?: string[];
  /** Fixture detection counts, echoed for any non-empty image. */
  counts?: Record<string, number>;
  /** Fixture captions, cycled to satisfy any requested k. */
  captions?: string[];
  /** Base64 image returned by the generator. */
  image?: string;
  /** Reject images larger than this many base64 characters (413). */
  maxImageChars?: number;
  /** When false every endpoint reports the model as unavailable (503). */
  available?: boolean;
  /** Simulated generation latency; exceeding the server timeout yields 504. */
  generateDelayMs?: number;
}

export class BridgeFault extends Error {
  constructor(public readonly code: number, message: string) {
    super(message);
  }
}

const DEFAULTS: Required<BackendConfig> = {
  labels: [],
  counts: {},
  captions: ["an image"],
  image: "",
  maxImageChars: 4_000_000,
  available: true,
  generateDelayMs: 0,
};

export class MockBackend {
  private readonly cfg: Required<BackendConfig>;
  private readonly labelSet: Set<string>;

  constructor(config: BackendConfig = {}) {
    this.cfg = { ...DEFAULTS, ...config };
    this.labelSet = new Set(
      this.cfg.labels.length > 0 ? this.cfg.labels : Object.keys(this.cfg.counts),
    );
  }

  private ensureAvailable(): void {
    if (!this.cfg.available) {
      throw new BridgeFault(503, "model unavailable");
    }
  }

  checkImageSize(image: string): void {
    if (image.length > this.cfg.maxImageChars) {
      throw new BridgeFault(413, "image exceeds the configured size limit");
    }
  }

  detect(image: string, classes: string[]): Record<string, number> {
    this.ensureAvailable();
    this.checkImageSize(image);
    for (const name of classes) {
      if (!this.labelSet.has(name)) {
        throw new BridgeFault(422, `unknown class '${name}'`);
      }
    }
    const counts: Record<string, number> = {};
    for (const name of classes) {
      counts[name] = image === "" ? 0 : (this.cfg.counts[name] ?? 0);
    }
    return counts;
  }

  caption(image: string, k: number): string[] {
    this.ensureAvailable();
    this.checkImageSize(image);
    const out: string[] = [];
    for (let i = 0; i < k; i++) {
      out.push(this.cfg.captions[i % this.cfg.captions.length]);
    }
    return out;
  }

  generate(_caption: string): { image: string; delayMs: number } {
    this.ensureAvailable();
    return { image: this.cfg.image, delayMs: this.cfg.generateDelayMs };
  }
}
