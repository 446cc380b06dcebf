// Wire types mirroring the service JSON payloads, field for field.

export interface LayoutMeta {
  seed: number;
  iterations: number;
  converged: boolean;
}

export interface ClusterNodePayload {
  id: number;
  name: string;
  gene_count: number;
  mean_association: number;
  x: number;
  y: number;
  minor_radius: number;
  major_radius: number;
  color: string;
}

export interface ClusterEdgePayload {
  a: number;
  b: number;
  overlap: number;
  width: number;
  intensity: number;
}

export interface ClusterViewPayload {
  nodes: ClusterNodePayload[];
  edges: ClusterEdgePayload[];
  layout: LayoutMeta;
}

export interface PieSlicePayload {
  cluster: number;
  fraction: number;
}

export interface GeneNodePayload {
  id: number;
  name: string;
  x: number;
  y: number;
  radius: number;
  pie: PieSlicePayload[];
}

export interface GeneEdgePayload {
  a: number;
  b: number;
  score: number;
  width: number;
  intensity: number;
}

export interface GeneViewPayload {
  cluster: number;
  nodes: GeneNodePayload[];
  edges: GeneEdgePayload[];
  layout: LayoutMeta;
}

export interface DiseaseEntry {
  disease: string;
  record_count: number;
}

export type ColorClass = "red" | "orange" | "white";

export interface ClusterOverlayEntry {
  id: number;
  ease_p: number;
  color_class: ColorClass;
  opacity: number;
  k: number;
  n: number;
}

export interface OverlayEdgeEntry {
  a: number;
  b: number;
  opacity: number;
}

export interface ClusterOverlayPayload {
  disease: string;
  population: { N: number; K: number };
  clusters: ClusterOverlayEntry[];
  edges: OverlayEdgeEntry[];
}

export interface GeneOverlayEntry {
  id: number;
  p?: number;
  color: string;
}

export interface GeneOverlayPayload {
  disease: string;
  cluster: number;
  genes: GeneOverlayEntry[];
}

export type HighlightMode = "levels" | "threshold" | "top_n";

export interface HighlightNodeEntry {
  id: number;
  level: number;
}

export interface HighlightEdgeEntry {
  a: number;
  b: number;
  score: number;
}

export interface HighlightPayload {
  origin: number;
  mode: HighlightMode;
  parameter: number;
  nodes: HighlightNodeEntry[];
  edges: HighlightEdgeEntry[];
}

export interface UploadReport {
  rows: number;
  kind?: string;
  clusters?: number;
  warnings: string[];
}

export interface SessionInfo {
  session_id: string;
  layout_seed: number;
}

export interface ErrorLocation {
  row?: number;
  column?: number;
}

export interface ErrorPayload {
  error_code: string;
  message: string;
  location?: ErrorLocation;
}
