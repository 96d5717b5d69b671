import type {
  DocumentDetailPayload,
  GraphViewPayload,
  SearchPayload,
  TrailPayload,
} from './types.js';

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = 'ApiError';
  }
}

async function errorMessage(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { error?: string };
    if (body && typeof body.error === 'string') return body.error;
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${response.status}`;
}

/** Thin typed client over the atlas endpoints; never caches, never mutates. */
export class ApiClient {
  constructor(private readonly base: string = '') {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.base + path, init);
    } catch (err) {
      throw new ApiError(`cannot reach server: ${String(err)}`, 0);
    }
    if (!response.ok) {
      throw new ApiError(await errorMessage(response), response.status);
    }
    return (await response.json()) as T;
  }

  rootThemes(): Promise<GraphViewPayload> {
    return this.request('/api/themes');
  }

  themeView(themeId: string): Promise<GraphViewPayload> {
    return this.request(`/api/themes/${encodeURIComponent(themeId)}`);
  }

  conceptView(conceptId: string): Promise<GraphViewPayload> {
    return this.request(`/api/concepts/${encodeURIComponent(conceptId)}`);
  }

  conceptAssociations(conceptId: string): Promise<GraphViewPayload> {
    return this.request(`/api/concepts/${encodeURIComponent(conceptId)}/associations`);
  }

  documentDetail(docId: string): Promise<DocumentDetailPayload> {
    return this.request(`/api/documents/${encodeURIComponent(docId)}`);
  }

  search(query: string): Promise<SearchPayload> {
    return this.request(`/api/search?q=${encodeURIComponent(query)}`);
  }

  trailAppend(session: string, kind: string, focus: string): Promise<TrailPayload> {
    return this.request(`/api/trail/${encodeURIComponent(session)}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ kind, focus }),
    });
  }

  trailRead(session: string): Promise<TrailPayload> {
    return this.request(`/api/trail/${encodeURIComponent(session)}`);
  }
}
