/** View state and its pure transitions.
 *
 * Every consequence shown comes from the service; the reducers only record
 * what came back.  A pending proposal is held with its diff until the user
 * commits (checkpoint pushed) or discards (service undo + pop).
 */
import {
  PageSlice,
  ProposalAccepted,
  ProposalRejection,
  RegisteredDifferential,
} from "./types.js";

export interface ChartViewState {
  scenario: string | null;
  session: string | null;
  page: number;
  twist: number;
  window: { stem_min: number; stem_max: number; f_min: number; f_max: number };
  slice: PageSlice | null;
  selected: string | null; // a cell key "stem,filtration"
  pending: {
    proposal: RegisteredDifferential;
    checkpoint: string;
    consequences: RegisteredDifferential[];
  } | null;
  lastRejection: ProposalRejection | null;
  checkpoints: string[];
}

export function initialState(): ChartViewState {
  return {
    scenario: null,
    session: null,
    page: 2,
    twist: 0,
    window: { stem_min: -8, stem_max: 8, f_min: 0, f_max: 10 },
    slice: null,
    selected: null,
    pending: null,
    lastRejection: null,
    checkpoints: ["start"],
  };
}

export type Action =
  | { kind: "session-opened"; scenario: string; session: string }
  | { kind: "slice-loaded"; slice: PageSlice }
  | { kind: "view-changed"; page?: number; twist?: number }
  | { kind: "cell-selected"; key: string | null }
  | { kind: "proposal-accepted"; outcome: ProposalAccepted }
  | { kind: "proposal-rejected"; rejection: ProposalRejection }
  | { kind: "proposal-committed" }
  | { kind: "proposal-discarded" }
  | { kind: "undone"; checkpoint: string };

export function reduce(state: ChartViewState, action: Action): ChartViewState {
  switch (action.kind) {
    case "session-opened":
      return {
        ...initialState(),
        scenario: action.scenario,
        session: action.session,
        window: state.window,
        twist: state.twist,
      };
    case "slice-loaded":
      return { ...state, slice: action.slice, page: action.slice.page };
    case "view-changed":
      return {
        ...state,
        page: action.page ?? state.page,
        twist: action.twist ?? state.twist,
        slice: null,
        selected: null,
      };
    case "cell-selected":
      return { ...state, selected: action.key };
    case "proposal-accepted":
      return {
        ...state,
        lastRejection: null,
        pending: {
          proposal: action.outcome.registered,
          checkpoint: action.outcome.checkpoint,
          consequences: action.outcome.consequences,
        },
      };
    case "proposal-rejected":
      return { ...state, lastRejection: action.rejection, pending: null };
    case "proposal-committed": {
      if (!state.pending) return state;
      return {
        ...state,
        checkpoints: [...state.checkpoints, state.pending.checkpoint],
        pending: null,
        slice: null, // force a fresh fetch: the UI never extrapolates
      };
    }
    case "proposal-discarded":
      return { ...state, pending: null, slice: null };
    case "undone": {
      const at = state.checkpoints.indexOf(action.checkpoint);
      return {
        ...state,
        checkpoints: at >= 0 ? state.checkpoints.slice(0, at + 1) : state.checkpoints,
        pending: null,
        slice: null,
      };
    }
  }
}

/** Cell keys touched by the pending consequence diff, for the overlay. */
export function consequenceOverlay(
  state: ChartViewState,
  degreeOf: (source: string) => [number, number] | null,
): Set<string> {
  const keys = new Set<string>();
  if (!state.pending) return keys;
  for (const c of [state.pending.proposal, ...state.pending.consequences]) {
    const d = degreeOf(c.source);
    if (d) {
      keys.add(`${d[0]},${d[1]}`);
      keys.add(`${d[0] - 1},${d[1] + c.page}`);
    }
  }
  return keys;
}
