/** Payload shapes of the atlas HTTP API, as served. */

export type NodeKind = 'theme' | 'concept' | 'document';

export interface ViewNode {
  id: string;
  kind: NodeKind;
  label: string;
  level: number;
  x: number;
  y: number;
}

export interface ViewEdge {
  from: string;
  to: string;
  label: string | null;
}

export interface GraphViewPayload {
  nodes: ViewNode[];
  edges: ViewEdge[];
  focus: string;
}

export type Mode = 'thematic' | 'connotative' | 'similarity' | 'search';

export interface TrailStep {
  kind: string;
  focus: string;
  timestamp: string;
}

export interface TrailPayload {
  session: string;
  steps: TrailStep[];
}

export interface SearchResult {
  doc_id: string;
  title: string;
  score: number;
}

export interface SearchPayload {
  query: string;
  results: SearchResult[];
}

export interface KeyConcept {
  concept_id: string;
  label: string;
  pertinence: number;
}

export interface SummaryTheme {
  theme_id: string;
  label: string;
  weight: number;
}

export interface CooccurrencePair {
  concept_a: string;
  concept_b: string;
  degree: number;
}

export interface DocumentSummaryPayload {
  doc_id: string;
  title: string;
  authors: string[];
  pub_date: string | null;
  format: string;
  size_bytes: number;
  abstract: string | null;
  keywords: string[];
  key_concepts: KeyConcept[];
  major_theme: string | null;
  minor_themes: string[];
  themes: SummaryTheme[];
  cooccurrence: CooccurrencePair[];
}

export interface SimilarEntry {
  doc_id: string;
  title: string;
  score: number;
}

export interface DocumentDetailPayload {
  summary: DocumentSummaryPayload;
  similar: SimilarEntry[];
}

/** Document nodes in association views are instance-qualified as
 *  "<neighbor-concept>::<doc-id>"; this recovers the document id. */
export function documentIdOfNode(nodeId: string): string {
  const sep = nodeId.indexOf('::');
  return sep >= 0 ? nodeId.slice(sep + 2) : nodeId;
}
