import { ApiClient } from './api.js';
import type {
  DocumentDetailPayload,
  GraphViewPayload,
  Mode,
  SearchResult,
  TrailStep,
  ViewNode,
} from './types.js';
import { documentIdOfNode } from './types.js';

/** Everything the controller needs to reflect state into the page. */
export interface UiHooks {
  renderScene(view: GraphViewPayload, selected: string | null): void;
  renderTrail(steps: TrailStep[]): void;
  renderDetail(payload: DocumentDetailPayload): void;
  renderResults(results: SearchResult[]): void;
  showError(message: string): void;
  clearError(): void;
  showSearchMessage(message: string): void;
}

export interface ViewState {
  view: GraphViewPayload | null;
  mode: Mode;
  selected: string | null;
  trail: TrailStep[];
}

/**
 * Single-threaded interaction controller.
 *
 * Every user action bumps a sequence number; responses that come back
 * after a newer action has started are discarded, so at most one
 * action ever mutates state. All index data flows through the HTTP
 * API read-only; the only write anywhere is the session trail.
 */
export class Controller {
  readonly state: ViewState = { view: null, mode: 'thematic', selected: null, trail: [] };
  private seq = 0;
  /** What a concept click fetches; state.mode tracks the view actually shown. */
  private conceptMode: 'thematic' | 'connotative' = 'thematic';
  /** Serializes trail appends so steps reach the server in visit order. */
  private trailQueue: Promise<void> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    private readonly session: string,
    private readonly ui: UiHooks,
  ) {}

  setMode(mode: Mode): void {
    if (mode === 'thematic' || mode === 'connotative') {
      this.conceptMode = mode;
    }
  }

  async showRoot(): Promise<void> {
    await this.loadView('thematic', 'themes-root', () => this.api.rootThemes());
  }

  /** Click dispatch: themes and concepts refocus the map, documents open the detail pane. */
  async onNodeClick(node: ViewNode): Promise<void> {
    if (node.kind === 'document') {
      await this.openDocument(documentIdOfNode(node.id));
      return;
    }
    if (this.state.view && node.id === this.state.view.focus) {
      await this.refreshFocus(node);
      return;
    }
    if (node.kind === 'theme') {
      await this.loadView('thematic', node.id, () => this.api.themeView(node.id));
    } else if (this.conceptMode === 'connotative') {
      await this.loadView('connotative', node.id, () => this.api.conceptAssociations(node.id));
    } else {
      await this.loadView('thematic', node.id, () => this.api.conceptView(node.id));
    }
  }

  /** Re-fetch the current focus without growing the trail. */
  private async refreshFocus(node: ViewNode): Promise<void> {
    if (node.kind === 'theme') {
      await this.loadView('thematic', node.id, () => this.api.themeView(node.id), {
        recordStep: false,
      });
    } else if (this.conceptMode === 'connotative') {
      await this.loadView('connotative', node.id, () => this.api.conceptAssociations(node.id), {
        recordStep: false,
      });
    } else {
      await this.loadView('thematic', node.id, () => this.api.conceptView(node.id), {
        recordStep: false,
      });
    }
  }

  async showAssociations(conceptId: string): Promise<void> {
    await this.loadView('connotative', conceptId, () => this.api.conceptAssociations(conceptId));
  }

  async openDocument(docId: string, mode: Mode = this.state.mode): Promise<void> {
    const mySeq = ++this.seq;
    try {
      const payload = await this.api.documentDetail(docId);
      if (mySeq !== this.seq) return;
      this.state.selected = docId;
      this.state.mode = mode;
      this.ui.clearError();
      this.ui.renderDetail(payload);
      await this.recordStep('document', docId);
    } catch (err) {
      if (mySeq !== this.seq) return;
      this.ui.showError(String(err instanceof Error ? err.message : err));
    }
  }

  async runSearch(query: string): Promise<void> {
    if (query.trim() === '') {
      this.ui.showSearchMessage('Type something to search for.');
      return;
    }
    const mySeq = ++this.seq;
    try {
      const payload = await this.api.search(query);
      if (mySeq !== this.seq) return;
      this.state.mode = 'search';
      this.ui.clearError();
      this.ui.showSearchMessage('');
      this.ui.renderResults(payload.results);
    } catch (err) {
      if (mySeq !== this.seq) return;
      this.ui.showError(String(err instanceof Error ? err.message : err));
    }
  }

  /** Breadcrumb jump: re-fetch the view recorded at that step. */
  async jumpTo(step: TrailStep): Promise<void> {
    if (step.kind === 'document') {
      await this.openDocument(step.focus);
    } else if (step.kind === 'connotative') {
      await this.loadView('connotative', step.focus, () =>
        this.api.conceptAssociations(step.focus),
      );
    } else if (step.focus === 'themes-root') {
      await this.showRoot();
    } else {
      await this.loadView('thematic', step.focus, () => this.fetchThematic(step.focus));
    }
  }

  private fetchThematic(focus: string): Promise<GraphViewPayload> {
    // A thematic focus may be a theme or a concept; try the theme route
    // first and fall back to the concept route on 404.
    return this.api.themeView(focus).catch((err) => {
      if (err && typeof err === 'object' && 'status' in err && err.status === 404) {
        return this.api.conceptView(focus);
      }
      throw err;
    });
  }

  private async loadView(
    mode: Mode,
    focus: string,
    fetcher: () => Promise<GraphViewPayload>,
    opts: { recordStep?: boolean } = {},
  ): Promise<void> {
    const recordStep = opts.recordStep ?? true;
    const mySeq = ++this.seq;
    try {
      const view = await fetcher();
      if (mySeq !== this.seq) return;
      // renderScene throws on a malformed payload, so state commits
      // only together with a successfully drawn scene, and a bad
      // payload can never grow the trail.
      this.ui.renderScene(view, this.state.selected);
      this.state.view = view;
      this.state.mode = mode;
      this.ui.clearError();
      if (recordStep) {
        await this.recordStep(mode, focus);
      }
    } catch (err) {
      if (mySeq !== this.seq) return;
      this.ui.showError(String(err instanceof Error ? err.message : err));
    }
  }

  /**
   * Append the visited step server-side. The visit already happened
   * (the scene is rendered), so the append goes out even if a newer
   * action supersedes this one. Appends are queued so steps reach the
   * server strictly in visit order; each response carries the full
   * trail, so the bar always reflects the newest response.
   */
  private recordStep(kind: string, focus: string): Promise<void> {
    const run = this.trailQueue.then(async () => {
      const trail = await this.api.trailAppend(this.session, kind, focus);
      this.state.trail = trail.steps;
      this.ui.renderTrail(trail.steps);
    });
    // A failed append must not poison the queue; callers still see the
    // rejection through the returned promise.
    this.trailQueue = run.catch(() => {});
    return run;
  }
}
