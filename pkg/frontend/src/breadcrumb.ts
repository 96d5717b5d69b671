import type { TrailStep } from './types.js';

/**
 * Trail bar: the visited foci in visit order, each clickable to jump
 * back. Content always mirrors the server trail the caller passes in.
 */
export function renderBreadcrumb(
  container: HTMLElement,
  steps: TrailStep[],
  onJump: (step: TrailStep, index: number) => void,
): void {
  container.textContent = '';
  steps.forEach((step, index) => {
    if (index > 0) {
      const sep = document.createElement('span');
      sep.className = 'crumb-sep';
      sep.textContent = ' › ';
      container.appendChild(sep);
    }
    const entry = document.createElement('button');
    entry.type = 'button';
    entry.className = `crumb crumb-${step.kind}`;
    entry.dataset.focus = step.focus;
    entry.dataset.index = String(index);
    entry.textContent = step.focus;
    entry.addEventListener('click', () => onJump(step, index));
    container.appendChild(entry);
  });
}
