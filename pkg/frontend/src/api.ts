/** Thin client for the workbench service; every mutation round-trips.
 *
 * The transport is injectable so unit tests can replay recorded responses;
 * nothing here computes any algebra.
 */
import {
  AuditEntry,
  PageSlice,
  ProposalOutcome,
  WindowBox,
} from "./types.js";

export type Fetcher = (
  url: string,
  init?: { method?: string; body?: string; headers?: Record<string, string> },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ServiceClient {
  constructor(
    private base: string,
    private fetcher: Fetcher = (u, i) => fetch(u, i),
  ) {}

  private async get(path: string): Promise<unknown> {
    const r = await this.fetcher(this.base + path);
    if (r.status !== 200) throw new Error(`GET ${path}: ${r.status}`);
    return r.json();
  }

  private async post(path: string, body: unknown): Promise<{ status: number; data: unknown }> {
    const r = await this.fetcher(this.base + path, {
      method: "POST",
      body: JSON.stringify(body),
      headers: { "content-type": "application/json" },
    });
    return { status: r.status, data: await r.json() };
  }

  async scenarios(): Promise<string[]> {
    const data = (await this.get("/scenarios")) as { scenarios: string[] };
    return data.scenarios;
  }

  async createSession(scenario: string, window?: Partial<WindowBox>): Promise<string> {
    const r = await this.post("/sessions", { scenario, window });
    if (r.status !== 200) throw new Error(`createSession: ${r.status}`);
    return (r.data as { session: string }).session;
  }

  async pageSlice(
    session: string,
    r: number,
    twist: number,
    box: WindowBox,
  ): Promise<PageSlice> {
    const q = new URLSearchParams({
      r: String(r),
      twist: String(twist),
      stem_min: String(box.stem_min),
      stem_max: String(box.stem_max),
      f_min: String(box.f_min),
      f_max: String(box.f_max),
    });
    return (await this.get(`/sessions/${session}/page?${q}`)) as PageSlice;
  }

  async propose(
    session: string,
    page: number,
    source: string,
    target: string,
    justification: string,
  ): Promise<ProposalOutcome> {
    const r = await this.post(`/sessions/${session}/propose`, {
      page,
      source,
      target,
      justification,
    });
    if (r.status === 200) {
      return r.data as ProposalOutcome;
    }
    const detail = (r.data as { detail?: unknown }).detail ?? r.data;
    return { accepted: false, rejection: detail as never };
  }

  async undo(session: string, checkpoint: string): Promise<void> {
    const r = await this.post(`/sessions/${session}/undo`, { checkpoint });
    if (r.status !== 200) throw new Error(`undo: ${r.status}`);
  }

  async audit(session: string): Promise<{ audit: AuditEntry[]; checkpoints: string[] }> {
    return (await this.get(`/sessions/${session}/audit`)) as {
      audit: AuditEntry[];
      checkpoints: string[];
    };
  }
}
