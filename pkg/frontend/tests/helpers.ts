import type { GraphViewPayload } from '../src/types.js';

export function mountDom(): void {
  document.body.innerHTML = `
    <header>
      <nav id="toolbar">
        <button type="button" data-mode="thematic" class="active">Thematic</button>
        <button type="button" data-mode="connotative">Connotative</button>
      </nav>
      <form id="search-form">
        <input id="search-input" type="text" />
        <button type="submit">Search</button>
        <span id="search-message"></span>
      </form>
    </header>
    <div id="banner"></div>
    <nav id="breadcrumb"></nav>
    <main>
      <svg id="scene" xmlns="http://www.w3.org/2000/svg" viewBox="0 0 640 640"></svg>
      <aside>
        <div id="results"></div>
        <div id="detail"></div>
      </aside>
    </main>`;
}

export function scene(): SVGSVGElement {
  return document.querySelector('#scene')!;
}

export function nodeElement(id: string): SVGGElement | null {
  for (const group of document.querySelectorAll<SVGGElement>('#scene g[data-id]')) {
    if (group.dataset.id === id) return group;
  }
  return null;
}

export function clickNode(id: string): void {
  const group = nodeElement(id);
  if (!group) throw new Error(`no rendered node ${id}`);
  group.dispatchEvent(new MouseEvent('click', { bubbles: true }));
}

export async function until(
  predicate: () => boolean,
  timeoutMs = 5_000,
  what = 'condition',
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (predicate()) return;
    await new Promise((r) => setTimeout(r, 10));
  }
  throw new Error(`timed out waiting for ${what}`);
}

export function breadcrumbFoci(): string[] {
  return Array.from(
    document.querySelectorAll<HTMLButtonElement>('#breadcrumb .crumb'),
    (b) => b.dataset.focus ?? '',
  );
}

export function sampleView(): GraphViewPayload {
  return {
    focus: 'f',
    nodes: [
      { id: 'f', kind: 'concept', label: 'Focus', level: 0, x: 0, y: 0 },
      { id: 'n1', kind: 'concept', label: 'One', level: 1, x: 0.8, y: 0 },
      { id: 'd1', kind: 'document', label: 'Doc', level: 2, x: 0, y: 1 },
    ],
    edges: [
      { from: 'f', to: 'n1', label: '0.50' },
      { from: 'n1', to: 'd1', label: '0.625' },
    ],
  };
}

type Responder = (url: string, init?: RequestInit) => unknown;

/** Install a fetch stub that answers from a route table. */
export function stubFetch(routes: Record<string, Responder | unknown>): () => string[] {
  const calls: string[] = [];
  const fake = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = String(input);
    calls.push(url);
    for (const [prefix, responder] of Object.entries(routes)) {
      if (url.includes(prefix)) {
        const value = typeof responder === 'function' ? (responder as Responder)(url, init) : responder;
        if (value instanceof Error) throw value;
        const body = await Promise.resolve(value);
        if (body instanceof Error) throw body;
        return new Response(JSON.stringify(body), {
          status: 200,
          headers: { 'content-type': 'application/json' },
        });
      }
    }
    return new Response(JSON.stringify({ error: `no stub for ${url}` }), { status: 404 });
  };
  globalThis.fetch = fake as typeof fetch;
  return () => calls;
}
