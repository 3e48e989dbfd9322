/** Browser entry: wires the state machine, the service client, and the SVG
 * grid into a minimal DOM shell.  One session per tab; every mutation
 * round-trips before anything is drawn (no optimistic updates). */
import { ServiceClient } from "./api.js";
import { renderGrid } from "./grid.js";
import { Action, ChartViewState, consequenceOverlay, initialState, reduce } from "./state.js";

export class App {
  state: ChartViewState = initialState();

  constructor(
    private client: ServiceClient,
    private root: HTMLElement,
    private freeOrder: number = 256,
  ) {}

  private dispatch(action: Action) {
    this.state = reduce(this.state, action);
  }

  async open(scenario: string) {
    const session = await this.client.createSession(scenario, this.state.window);
    this.dispatch({ kind: "session-opened", scenario, session });
    await this.refresh();
  }

  async refresh() {
    if (!this.state.session) return;
    const slice = await this.client.pageSlice(
      this.state.session,
      this.state.page,
      this.state.twist,
      this.state.window,
    );
    this.dispatch({ kind: "slice-loaded", slice });
    this.draw();
  }

  async setView(page: number, twist: number) {
    this.dispatch({ kind: "view-changed", page, twist });
    await this.refresh();
  }

  async propose(source: string, target: string, justification: string) {
    if (!this.state.session) return;
    const outcome = await this.client.propose(
      this.state.session,
      this.state.page,
      source,
      target,
      justification,
    );
    if ("accepted" in outcome && outcome.accepted === true) {
      this.dispatch({ kind: "proposal-accepted", outcome });
    } else if ("rejection" in outcome) {
      this.dispatch({ kind: "proposal-rejected", rejection: outcome.rejection });
    }
    this.draw();
  }

  async commitPending() {
    this.dispatch({ kind: "proposal-committed" });
    await this.refresh();
  }

  async discardPending() {
    if (this.state.session && this.state.checkpoints.length) {
      const last = this.state.checkpoints[this.state.checkpoints.length - 1];
      await this.client.undo(this.state.session, last);
    }
    this.dispatch({ kind: "proposal-discarded" });
    await this.refresh();
  }

  draw() {
    if (!this.state.slice) return;
    const overlay = consequenceOverlay(this.state, () => null);
    this.root.innerHTML = renderGrid(this.state.slice, {
      stem_min: this.state.window.stem_min,
      stem_max: this.state.window.stem_max,
      f_min: this.state.window.f_min,
      f_max: this.state.window.f_max,
    }, { highlight: overlay, freeOrder: this.freeOrder });
  }
}
