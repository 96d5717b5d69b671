import type { GraphViewPayload, ViewNode } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface Viewport {
  width: number;
  height: number;
  margin: number;
}

export const DEFAULT_VIEWPORT: Viewport = { width: 640, height: 640, margin: 48 };

/** Affine map from unit-disk layout coordinates to pixel space. */
export function project(x: number, y: number, vp: Viewport): { px: number; py: number } {
  const spanX = (vp.width - 2 * vp.margin) / 2;
  const spanY = (vp.height - 2 * vp.margin) / 2;
  return {
    px: vp.width / 2 + x * spanX,
    py: vp.height / 2 + y * spanY,
  };
}

export function validateView(view: GraphViewPayload): void {
  if (!view || !Array.isArray(view.nodes) || view.nodes.length === 0) {
    throw new Error('malformed view payload: no nodes');
  }
  const ids = new Set(view.nodes.map((n) => n.id));
  if (!view.focus || !ids.has(view.focus)) {
    throw new Error('malformed view payload: focus missing from nodes');
  }
  for (const edge of view.edges) {
    if (!ids.has(edge.from) || !ids.has(edge.to)) {
      throw new Error('malformed view payload: dangling edge');
    }
  }
}

export interface RenderOptions {
  viewport?: Viewport;
  selected?: string | null;
  onNodeClick?: (node: ViewNode) => void;
}

/**
 * Draw (or redraw) a laid-out view into the svg element.
 *
 * Node groups are keyed by node id and reused across renders so CSS
 * transitions animate the refocus instead of snapping. Throws on a
 * malformed payload without touching the existing scene; the caller
 * keeps the previous view and shows a banner.
 */
export function renderView(svg: SVGSVGElement, view: GraphViewPayload, opts: RenderOptions = {}): void {
  validateView(view);
  const vp = opts.viewport ?? DEFAULT_VIEWPORT;
  svg.setAttribute('viewBox', `0 0 ${vp.width} ${vp.height}`);

  let edgeLayer = svg.querySelector<SVGGElement>('g.edges');
  let nodeLayer = svg.querySelector<SVGGElement>('g.nodes');
  if (!edgeLayer) {
    edgeLayer = document.createElementNS(SVG_NS, 'g');
    edgeLayer.setAttribute('class', 'edges');
    svg.appendChild(edgeLayer);
  }
  if (!nodeLayer) {
    nodeLayer = document.createElementNS(SVG_NS, 'g');
    nodeLayer.setAttribute('class', 'nodes');
    svg.appendChild(nodeLayer);
  }

  const positions = new Map<string, { px: number; py: number }>();
  for (const node of view.nodes) {
    positions.set(node.id, project(node.x, node.y, vp));
  }

  // Edges are cheap: rebuild them every time.
  edgeLayer.textContent = '';
  for (const edge of view.edges) {
    const a = positions.get(edge.from)!;
    const b = positions.get(edge.to)!;
    const group = document.createElementNS(SVG_NS, 'g');
    group.setAttribute('class', 'edge');
    const line = document.createElementNS(SVG_NS, 'line');
    line.setAttribute('x1', String(a.px));
    line.setAttribute('y1', String(a.py));
    line.setAttribute('x2', String(b.px));
    line.setAttribute('y2', String(b.py));
    group.appendChild(line);
    if (edge.label !== null) {
      const text = document.createElementNS(SVG_NS, 'text');
      text.setAttribute('class', 'edge-label');
      text.setAttribute('x', String((a.px + b.px) / 2));
      text.setAttribute('y', String((a.py + b.py) / 2 - 4));
      text.textContent = edge.label;
      group.appendChild(text);
    }
    edgeLayer.appendChild(group);
  }

  const seen = new Set<string>();
  // Labels of nodes sharing one position (stacked level-0 roots) are
  // fanned out vertically; circle positions stay exactly as served.
  const stackCount = new Map<string, number>();
  for (const node of view.nodes) {
    seen.add(node.id);
    const { px, py } = positions.get(node.id)!;
    let group = nodeLayer.querySelector<SVGGElement>(`g[data-id="${cssEscape(node.id)}"]`);
    if (!group) {
      group = document.createElementNS(SVG_NS, 'g');
      group.dataset.id = node.id;
      const circle = document.createElementNS(SVG_NS, 'circle');
      const label = document.createElementNS(SVG_NS, 'text');
      label.setAttribute('class', 'node-label');
      group.appendChild(circle);
      group.appendChild(label);
      nodeLayer.appendChild(group);
    }
    group.dataset.kind = node.kind;
    const isFocus = node.id === view.focus;
    const classes = ['node', `kind-${node.kind}`];
    if (isFocus) classes.push('focus');
    if (opts.selected === node.id) classes.push('selected');
    group.setAttribute('class', classes.join(' '));

    const circle = group.querySelector('circle')!;
    circle.setAttribute('cx', String(px));
    circle.setAttribute('cy', String(py));
    circle.setAttribute('r', String(isFocus ? 14 : 8));

    const posKey = `${px.toFixed(3)}|${py.toFixed(3)}`;
    const stacked = stackCount.get(posKey) ?? 0;
    stackCount.set(posKey, stacked + 1);
    const label = group.querySelector('text')!;
    label.setAttribute('x', String(px + (isFocus ? 18 : 11)));
    label.setAttribute('y', String(py + 4 + stacked * 16));
    label.textContent = node.label;

    if (opts.onNodeClick) {
      group.onclick = () => opts.onNodeClick!(node);
    }
  }

  for (const group of Array.from(nodeLayer.querySelectorAll<SVGGElement>('g[data-id]'))) {
    if (!seen.has(group.dataset.id ?? '')) {
      group.remove();
    }
  }
}

function cssEscape(value: string): string {
  if (typeof CSS !== 'undefined' && typeof CSS.escape === 'function') {
    return CSS.escape(value);
  }
  return value.replace(/["\\\]]/g, '\\$&');
}
