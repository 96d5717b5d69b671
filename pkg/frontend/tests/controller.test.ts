import { beforeEach, describe, expect, it, vi } from 'vitest';

import { ApiClient } from '../src/api.js';
import { Controller, type UiHooks } from '../src/controller.js';
import type { GraphViewPayload } from '../src/types.js';
import { sampleView, stubFetch } from './helpers.js';

function recordingHooks() {
  const scenes: GraphViewPayload[] = [];
  const errors: string[] = [];
  const trails: unknown[] = [];
  const details: unknown[] = [];
  const hooks: UiHooks = {
    renderScene: (view) => {
      if (view.nodes.length === 0) throw new Error('malformed view payload: no nodes');
      scenes.push(view);
    },
    renderTrail: (steps) => trails.push(steps),
    renderDetail: (payload) => details.push(payload),
    renderResults: () => {},
    showError: (message) => errors.push(message),
    clearError: () => {},
    showSearchMessage: () => {},
  };
  return { hooks, scenes, errors, trails, details };
}

function trailResponse(url: string, steps: Array<{ kind: string; focus: string }>) {
  return { session: 's', steps: steps.map((s, i) => ({ ...s, timestamp: String(i) })) };
}

describe('Controller', () => {
  beforeEach(() => {
    vi.unstubAllGlobals();
  });

  it('keeps the previous scene and shows a banner when a fetch fails', async () => {
    const rootView = sampleView();
    let fail = false;
    stubFetch({
      '/api/trail/': { session: 's', steps: [{ kind: 'thematic', focus: 'f', timestamp: '0' }] },
      '/api/themes': () => {
        if (fail) return new Error('network down');
        return rootView;
      },
    });
    const { hooks, scenes, errors } = recordingHooks();
    const controller = new Controller(new ApiClient('http://test'), 's', hooks);
    await controller.showRoot();
    expect(scenes).toHaveLength(1);
    expect(controller.state.view).toEqual(rootView);

    fail = true;
    await controller.onNodeClick({ id: 'other', kind: 'theme', label: '', level: 0, x: 0, y: 0 });
    expect(errors.length).toBe(1);
    expect(scenes).toHaveLength(1); // untouched
    expect(controller.state.view).toEqual(rootView);
  });

  it('shows a banner on malformed payloads and keeps state', async () => {
    stubFetch({
      '/api/trail/': trailResponse('', [{ kind: 'thematic', focus: 'f' }]),
      '/api/themes/empty': { nodes: [], edges: [], focus: '' },
      '/api/themes': sampleView(),
    });
    const { hooks, scenes, errors, trails } = recordingHooks();
    const controller = new Controller(new ApiClient('http://test'), 's', hooks);
    await controller.showRoot();
    const trailsBefore = trails.length;
    await controller.onNodeClick({ id: 'empty', kind: 'theme', label: '', level: 1, x: 0, y: 0 });
    expect(errors).toHaveLength(1);
    expect(errors[0]).toMatch(/malformed/);
    expect(scenes).toHaveLength(1);
    // A malformed view must not grow the trail either.
    expect(trails.length).toBe(trailsBefore);
  });

  it('discards stale responses when a newer action supersedes them', async () => {
    const slow = sampleView();
    const fast = {
      ...sampleView(),
      focus: 'g',
      nodes: [{ id: 'g', kind: 'theme' as const, label: 'G', level: 0, x: 0, y: 0 }],
      edges: [],
    };
    let releaseSlow: (value: unknown) => void = () => {};
    const gate = new Promise((resolve) => {
      releaseSlow = resolve;
    });
    stubFetch({
      '/api/trail/': trailResponse('', [{ kind: 'thematic', focus: 'x' }]),
      '/api/themes/slow': () => gate.then(() => slow),
      '/api/themes/fast': fast,
    });
    const { hooks, scenes } = recordingHooks();
    const controller = new Controller(new ApiClient('http://test'), 's', hooks);

    const first = controller.onNodeClick({ id: 'slow', kind: 'theme', label: '', level: 0, x: 0, y: 0 });
    const second = controller.onNodeClick({ id: 'fast', kind: 'theme', label: '', level: 0, x: 0, y: 0 });
    await second;
    releaseSlow(null);
    await first;

    expect(scenes.map((s) => s.focus)).toEqual(['g']);
    expect(controller.state.view?.focus).toBe('g');
  });

  it('clicking the current focus refreshes without growing the trail', async () => {
    const view = sampleView();
    const appended: string[] = [];
    stubFetch({
      '/api/trail/': (url, init) => {
        appended.push(String(init?.body ?? ''));
        return trailResponse('', [{ kind: 'thematic', focus: 'f' }]);
      },
      '/api/concepts/f/associations': view,
      '/api/concepts/f': view,
      '/api/themes': view,
    });
    const { hooks, scenes } = recordingHooks();
    const controller = new Controller(new ApiClient('http://test'), 's', hooks);
    await controller.showRoot();
    const appendsAfterRoot = appended.length;
    await controller.onNodeClick({ id: 'f', kind: 'concept', label: '', level: 0, x: 0, y: 0 });
    expect(scenes).toHaveLength(2); // re-rendered
    expect(appended.length).toBe(appendsAfterRoot); // no new step
  });

  it('documents open the detail pane and record a document step', async () => {
    const detailPayload = {
      summary: {
        doc_id: 'd1',
        title: 'Doc',
        authors: [],
        pub_date: null,
        format: 'txt',
        size_bytes: 1,
        abstract: null,
        keywords: [],
        key_concepts: [],
        major_theme: null,
        minor_themes: [],
        themes: [],
        cooccurrence: [],
      },
      similar: [],
    };
    const bodies: string[] = [];
    stubFetch({
      '/api/documents/d1': detailPayload,
      '/api/trail/': (url, init) => {
        bodies.push(String(init?.body ?? ''));
        return trailResponse('', [{ kind: 'document', focus: 'd1' }]);
      },
    });
    const { hooks, details } = recordingHooks();
    const controller = new Controller(new ApiClient('http://test'), 's', hooks);
    // Instance-qualified node ids resolve to the underlying document.
    await controller.onNodeClick({
      id: 'neighbor::d1',
      kind: 'document',
      label: '',
      level: 2,
      x: 0,
      y: 0,
    });
    expect(details).toHaveLength(1);
    expect(bodies[0]).toContain('"focus":"d1"');
    expect(bodies[0]).toContain('"kind":"document"');
  });

  it('concept clicks fetch associations in connotative mode', async () => {
    const calls = stubFetch({
      '/api/trail/': trailResponse('', [{ kind: 'connotative', focus: 'c' }]),
      '/api/concepts/c/associations': sampleView(),
    });
    const { hooks } = recordingHooks();
    const controller = new Controller(new ApiClient('http://test'), 's', hooks);
    controller.setMode('connotative');
    await controller.onNodeClick({ id: 'c', kind: 'concept', label: '', level: 1, x: 0, y: 0 });
    expect(calls().some((u) => u.endsWith('/api/concepts/c/associations'))).toBe(true);
  });
});
