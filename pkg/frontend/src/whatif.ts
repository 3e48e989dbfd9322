/** What-if forks: replay the current proposal history into a fresh session,
 * run an alternate script suffix, and compare the resulting slices side by
 * side.  The fork is its own service session and is discarded unless the
 * caller promotes it. */
import { ServiceClient } from "./api.js";
import { PageSlice, RegisteredDifferential, WindowBox } from "./types.js";

export interface WhatIfResult {
  baseline: PageSlice;
  fork: PageSlice;
  forkSession: string;
  differingCells: string[]; // "stem,filtration" keys where the groups differ
}

export async function whatIf(
  client: ServiceClient,
  scenario: string,
  history: RegisteredDifferential[],
  suffix: RegisteredDifferential[],
  view: { r: number; twist: number; box: WindowBox },
): Promise<WhatIfResult> {
  const base = await replaySession(client, scenario, history, view.box);
  const fork = await replaySession(client, scenario, [...history, ...suffix], view.box);
  const baseline = await client.pageSlice(base, view.r, view.twist, view.box);
  const forked = await client.pageSlice(fork, view.r, view.twist, view.box);
  return {
    baseline,
    fork: forked,
    forkSession: fork,
    differingCells: diffCells(baseline, forked),
  };
}

async function replaySession(
  client: ServiceClient,
  scenario: string,
  script: RegisteredDifferential[],
  box: WindowBox,
): Promise<string> {
  const sid = await client.createSession(scenario, box);
  for (const step of script) {
    const outcome = await client.propose(
      sid,
      step.page,
      step.source,
      step.target,
      step.justification,
    );
    if (!("accepted" in outcome) || outcome.accepted !== true) {
      throw new Error(`fork replay rejected at d${step.page}(${step.source})`);
    }
  }
  return sid;
}

export function diffCells(a: PageSlice, b: PageSlice): string[] {
  const index = (s: PageSlice) => {
    const m = new Map<string, string>();
    for (const c of s.cells) {
      m.set(`${c.stem},${c.filtration}`, JSON.stringify([...c.orders].sort()));
    }
    return m;
  };
  const ma = index(a);
  const mb = index(b);
  const keys = new Set([...ma.keys(), ...mb.keys()]);
  const out: string[] = [];
  for (const k of keys) {
    if (ma.get(k) !== mb.get(k)) out.push(k);
  }
  return out.sort();
}
