import { ApiClient } from './api.js';
import { renderBreadcrumb } from './breadcrumb.js';
import { Controller, type UiHooks } from './controller.js';
import { renderDocumentDetail } from './detail.js';
import { renderView } from './render.js';
import type { Mode, SearchResult } from './types.js';

export interface BootstrapConfig {
  apiBase?: string;
  session?: string;
  /** Skip the initial root-view load (tests drive it explicitly). */
  autoload?: boolean;
}

/** Build the controller and wire it to the page; returns it for tests. */
export function bootstrap(root: Document = document, config: BootstrapConfig = {}): Controller {
  const svg = root.querySelector<SVGSVGElement>('#scene')!;
  const banner = root.querySelector<HTMLElement>('#banner')!;
  const breadcrumb = root.querySelector<HTMLElement>('#breadcrumb')!;
  const detail = root.querySelector<HTMLElement>('#detail')!;
  const results = root.querySelector<HTMLElement>('#results')!;
  const searchForm = root.querySelector<HTMLFormElement>('#search-form')!;
  const searchInput = root.querySelector<HTMLInputElement>('#search-input')!;
  const searchMessage = root.querySelector<HTMLElement>('#search-message')!;

  const params = new URLSearchParams(root.defaultView?.location.search ?? '');
  const apiBase = config.apiBase ?? params.get('api') ?? '';
  const session =
    config.session ??
    (typeof crypto !== 'undefined' && 'randomUUID' in crypto
      ? crypto.randomUUID()
      : `session-${Date.now()}-${Math.floor(Math.random() * 1e9)}`);

  const api = new ApiClient(apiBase);

  const hooks: UiHooks = {
    renderScene(view, selected) {
      renderView(svg, view, {
        selected,
        onNodeClick: (node) => void controller.onNodeClick(node),
      });
    },
    renderTrail(steps) {
      renderBreadcrumb(breadcrumb, steps, (step) => void controller.jumpTo(step));
    },
    renderDetail(payload) {
      renderDocumentDetail(detail, payload, {
        onConceptClick: (conceptId) => void controller.showAssociations(conceptId),
        onDocumentClick: (docId) => void controller.openDocument(docId, 'similarity'),
      });
    },
    renderResults(entries: SearchResult[]) {
      results.textContent = '';
      const list = root.createElement('ol');
      list.className = 'search-results';
      for (const entry of entries) {
        const item = root.createElement('li');
        const link = root.createElement('button');
        link.type = 'button';
        link.dataset.doc = entry.doc_id;
        link.textContent = `${entry.title} (${entry.score.toFixed(3)})`;
        link.addEventListener('click', () => void controller.openDocument(entry.doc_id, 'search'));
        item.appendChild(link);
        list.appendChild(item);
      }
      results.appendChild(list);
    },
    showError(message) {
      banner.textContent = message;
      banner.classList.add('visible');
    },
    clearError() {
      banner.textContent = '';
      banner.classList.remove('visible');
    },
    showSearchMessage(message) {
      searchMessage.textContent = message;
    },
  };

  const controller = new Controller(api, session, hooks);

  for (const button of root.querySelectorAll<HTMLButtonElement>('button[data-mode]')) {
    button.addEventListener('click', () => {
      controller.setMode(button.dataset.mode as Mode);
      for (const other of root.querySelectorAll('button[data-mode]')) {
        other.classList.toggle('active', other === button);
      }
    });
  }

  searchForm.addEventListener('submit', (event) => {
    event.preventDefault();
    void controller.runSearch(searchInput.value);
  });

  if (config.autoload ?? true) {
    void controller.showRoot();
  }
  return controller;
}

if (typeof window !== 'undefined' && !('__ATLAS_TEST__' in window)) {
  window.addEventListener('DOMContentLoaded', () => {
    bootstrap(document);
  });
}
