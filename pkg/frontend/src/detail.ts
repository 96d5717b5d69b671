import type { DocumentDetailPayload } from './types.js';

function block(title: string, className: string): { section: HTMLElement; body: HTMLElement } {
  const section = document.createElement('section');
  section.className = className;
  const heading = document.createElement('h3');
  heading.textContent = title;
  section.appendChild(heading);
  const body = document.createElement('div');
  section.appendChild(body);
  return { section, body };
}

/**
 * Document summary pane: descriptive fields, key concepts with
 * pertinence, thematic composition (major theme first), the document's
 * own cooccurrence pairs, and its most similar documents.
 */
export function renderDocumentDetail(
  pane: HTMLElement,
  payload: DocumentDetailPayload,
  handlers: {
    onConceptClick?: (conceptId: string) => void;
    onDocumentClick?: (docId: string) => void;
  } = {},
): void {
  pane.textContent = '';
  const { summary } = payload;

  const title = document.createElement('h2');
  title.className = 'detail-title';
  title.textContent = summary.title;
  pane.appendChild(title);

  const descriptive = block('Description', 'detail-descriptive');
  const fields: Array<[string, string]> = [
    ['Authors', summary.authors.join('; ') || '-'],
    ['Date', summary.pub_date ?? '-'],
    ['Format', summary.format],
    ['Size', `${summary.size_bytes} bytes`],
  ];
  if (summary.abstract) fields.push(['Abstract', summary.abstract]);
  if (summary.keywords.length > 0) fields.push(['Keywords', summary.keywords.join(', ')]);
  const dl = document.createElement('dl');
  for (const [name, value] of fields) {
    const dt = document.createElement('dt');
    dt.textContent = name;
    const dd = document.createElement('dd');
    dd.textContent = value;
    dl.appendChild(dt);
    dl.appendChild(dd);
  }
  descriptive.body.appendChild(dl);
  pane.appendChild(descriptive.section);

  const concepts = block('Key concepts', 'detail-concepts');
  const conceptList = document.createElement('ul');
  for (const concept of summary.key_concepts) {
    const item = document.createElement('li');
    const link = document.createElement('button');
    link.type = 'button';
    link.dataset.concept = concept.concept_id;
    link.textContent = `${concept.label} (${concept.pertinence.toFixed(3)})`;
    if (handlers.onConceptClick) {
      link.addEventListener('click', () => handlers.onConceptClick!(concept.concept_id));
    }
    item.appendChild(link);
    conceptList.appendChild(item);
  }
  concepts.body.appendChild(conceptList);
  pane.appendChild(concepts.section);

  const themes = block('Thematic composition', 'detail-themes');
  const themeList = document.createElement('ol');
  for (const theme of summary.themes) {
    const item = document.createElement('li');
    item.dataset.theme = theme.theme_id;
    const role = theme.theme_id === summary.major_theme ? 'major' : 'minor';
    item.className = `theme-${role}`;
    item.textContent = `${theme.label} (${(theme.weight * 100).toFixed(1)}%)`;
    themeList.appendChild(item);
  }
  themes.body.appendChild(themeList);
  pane.appendChild(themes.section);

  const pairs = block('Cooccurring concepts', 'detail-pairs');
  const pairList = document.createElement('ul');
  for (const pair of summary.cooccurrence) {
    const item = document.createElement('li');
    item.textContent = `${pair.concept_a} + ${pair.concept_b} (${pair.degree.toFixed(2)})`;
    pairList.appendChild(item);
  }
  pairs.body.appendChild(pairList);
  pane.appendChild(pairs.section);

  const similar = block('Similar documents', 'detail-similar');
  const similarList = document.createElement('ul');
  for (const entry of payload.similar) {
    const item = document.createElement('li');
    const link = document.createElement('button');
    link.type = 'button';
    link.dataset.doc = entry.doc_id;
    link.textContent = `${entry.title} (${entry.score.toFixed(3)})`;
    if (handlers.onDocumentClick) {
      link.addEventListener('click', () => handlers.onDocumentClick!(entry.doc_id));
    }
    item.appendChild(link);
    similarList.appendChild(item);
  }
  similar.body.appendChild(similarList);
  pane.appendChild(similar.section);
  pane.classList.add('open');
}
