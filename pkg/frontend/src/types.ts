/** Wire types of the workbench service. */

export interface Cell {
  stem: number;
  filtration: number;
  orders: number[];
  labels: string[];
}

export interface Arrow {
  from: [number, number]; // (stem, filtration)
  to: [number, number];
  justification: string;
  label: string;
}

export interface PageSlice {
  page: number;
  twist: number;
  cells: Cell[];
  arrows: Arrow[];
}

export interface RegisteredDifferential {
  page: number;
  source: string;
  target: string;
  justification: string;
}

export interface ProposalAccepted {
  accepted: true;
  checkpoint: string;
  registered: RegisteredDifferential;
  consequences: RegisteredDifferential[];
}

export interface ProposalRejection {
  reason: "wrong-degree" | "target-dead" | "source-dead" | "contradiction";
  detail?: string;
  chains?: string[];
}

export type ProposalOutcome =
  | ProposalAccepted
  | { accepted: false; rejection: ProposalRejection };

export interface AuditEntry {
  page: number;
  source: string;
  target: string;
  justification: string;
  chain: string[];
}

export interface WindowBox {
  stem_min: number;
  stem_max: number;
  f_min: number;
  f_max: number;
}
