// Replay backend built from recorded HTTP exchanges. Requests are matched
// on (path, canonicalized JSON body); a miss throws with the offending key
// so a drifted request body is caught immediately.

import type { FetchLike } from "../src/api.js";
import doc from "./fixtures/exchanges.json";

export interface Exchange {
  method: string;
  path: string;
  body: unknown;
  status: number;
  response: unknown;
}

export const FIXTURES = doc as { resolution: number; exchanges: Exchange[] };

export function canonical(v: unknown): string {
  if (v === null || typeof v !== "object") return JSON.stringify(v);
  if (Array.isArray(v)) return `[${v.map(canonical).join(",")}]`;
  const obj = v as Record<string, unknown>;
  const parts = Object.keys(obj)
    .sort()
    .filter((k) => obj[k] !== undefined)
    .map((k) => `${JSON.stringify(k)}:${canonical(obj[k])}`);
  return `{${parts.join(",")}}`;
}

function key(path: string, body: unknown): string {
  return `${path} ${canonical(body)}`;
}

export class FixtureBackend {
  private map = new Map<string, Exchange>();
  calls: { path: string; body: unknown }[] = [];

  constructor(exchanges: Exchange[] = FIXTURES.exchanges) {
    for (const e of exchanges) this.map.set(key(e.path, e.body), e);
  }

  /** Look a recorded response up directly (for expected-value assertions). */
  recorded<T>(path: string, body: unknown): T {
    const e = this.map.get(key(path, body));
    if (!e) throw new Error(`no fixture recorded for ${key(path, body)}`);
    return e.response as T;
  }

  fetch: FetchLike = async (url, init) => {
    const path = url.replace(/^https?:\/\/[^/]*/, "");
    const body = init?.body ? JSON.parse(init.body) : null;
    this.calls.push({ path, body });
    const e = this.map.get(key(path, body));
    if (!e) throw new Error(`no fixture for ${key(path, body)}`);
    return { status: e.status, json: async () => e.response };
  };
}

/** The exact simulate body a tab issues with default controls; mirrored by
 * the recorder script on the backend side. */
export const TAB_SIM_BODIES = {
  basic: { scenario: "basic", n: 300, k: 3, seed: 1, separation: 5, elongation: 3 },
  outlier: { scenario: "outlier", n: 600, k: 2, seed: 3, separation: 6, outlier_fraction: 0.15 },
  mixture: { scenario: "mixture", n: 300, k: 3, seed: 6, overlap: 0.3 },
} as const;
