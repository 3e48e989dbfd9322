/** SVG rendering of a page slice: one dot per basis summand, torsion
 * annotated by dot size and fill, arrows colored by justification.  The
 * output is a deterministic function of the slice: cells and summands are
 * drawn in sorted order and nothing is computed client-side. */
import { Arrow, Cell, PageSlice, WindowBox } from "./types.js";

export const CELL = 36;

export const JUSTIFICATION_COLORS: Record<string, string> = {
  "hurewicz-permanent": "#777777",
  "restriction-to-ANSS": "#c0392b",
  "ahss-mod-tau": "#2471a3",
  "hfpss-import": "#229954",
  "leibniz-derived": "#9b59b6",
  "user-hypothesis": "#e67e22",
};

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface GridOptions {
  highlight?: Set<string>; // "stem,filtration" keys of consequence overlay
  freeOrder?: number; // order reported for free-at-precision summands
}

export function gridSize(box: WindowBox): { width: number; height: number } {
  return {
    width: (box.stem_max - box.stem_min + 2) * CELL,
    height: (box.f_max - box.f_min + 2) * CELL,
  };
}

export function cellXY(box: WindowBox, stem: number, f: number): [number, number] {
  const { height } = gridSize(box);
  return [(stem - box.stem_min + 1) * CELL, height - (f - box.f_min + 1) * CELL];
}

export function renderGrid(
  slice: PageSlice,
  box: WindowBox,
  opts: GridOptions = {},
): string {
  const { width, height } = gridSize(box);
  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}"` +
      ` font-family="monospace" font-size="9">`,
  );
  out.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  for (let stem = box.stem_min; stem <= box.stem_max; stem++) {
    const [x] = cellXY(box, stem, box.f_min);
    out.push(`<line x1="${x}" y1="0" x2="${x}" y2="${height}" stroke="#eeeeee"/>`);
    out.push(`<text x="${x - 4}" y="${height - 4}" fill="#999999">${stem}</text>`);
  }
  for (let f = box.f_min; f <= box.f_max; f++) {
    const [, y] = cellXY(box, box.stem_min, f);
    out.push(`<line x1="0" y1="${y}" x2="${width}" y2="${y}" stroke="#eeeeee"/>`);
    out.push(`<text x="2" y="${y + 3}" fill="#999999">${f}</text>`);
  }
  const cells = [...slice.cells].sort(
    (a, b) => a.stem - b.stem || a.filtration - b.filtration,
  );
  for (const cell of cells) {
    out.push(renderCell(cell, box, opts));
  }
  const arrows = [...slice.arrows].sort((a, b) =>
    JSON.stringify([a.from, a.label]).localeCompare(JSON.stringify([b.from, b.label])),
  );
  for (const a of arrows) {
    out.push(renderArrow(a, box));
  }
  out.push("</svg>");
  return out.join("\n") + "\n";
}

function renderCell(cell: Cell, box: WindowBox, opts: GridOptions): string {
  const [x, y] = cellXY(box, cell.stem, cell.filtration);
  const n = cell.orders.length;
  const parts: string[] = [];
  const key = `${cell.stem},${cell.filtration}`;
  if (opts.highlight?.has(key)) {
    parts.push(
      `<rect x="${x - CELL / 2}" y="${y - CELL / 2}" width="${CELL}" height="${CELL}"` +
        ` fill="#fff3cd" stroke="none"/>`,
    );
  }
  cell.orders.forEach((order, i) => {
    const dx = (i - (n - 1) / 2) * 8;
    const free = opts.freeOrder !== undefined && order === opts.freeOrder;
    const radius = free ? 4 : Math.max(2, 4 - Math.floor(Math.log2(order) / 4));
    const fill = free ? "#222222" : "none";
    const label = esc(`(${cell.stem},${cell.filtration}) ${order}: ${cell.labels[i]}`);
    parts.push(
      `<circle cx="${(x + dx).toFixed(1)}" cy="${y}" r="${radius}" fill="${fill}"` +
        ` stroke="#222222"><title>${label}</title></circle>`,
    );
  });
  return parts.join("\n");
}

function renderArrow(a: Arrow, box: WindowBox): string {
  const [x1, y1] = cellXY(box, a.from[0], a.from[1]);
  const [x2, y2] = cellXY(box, a.to[0], a.to[1]);
  const color = JUSTIFICATION_COLORS[a.justification] ?? "#000000";
  return (
    `<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" stroke="${color}"` +
    ` stroke-width="1.2"><title>${esc(a.label)}</title></line>`
  );
}
