// Pure payload -> SVG-string renderers for the two views.
//
// Everything drawn here is a verbatim payload field or an affine screen
// placement of one: radii, opacities, colors, widths, levels and fractions
// all come from the service. No domain quantity is computed client-side
// (enforced by the no-math lint in the test suite). Rendering the same
// inputs twice yields the identical string, so re-renders are idempotent.

import type {
  ClusterOverlayPayload,
  ClusterViewPayload,
  ColorClass,
  GeneOverlayPayload,
  GeneViewPayload,
  HighlightPayload,
} from "./types.js";

// Fills for the server-computed significance classes.
export const CLASS_FILLS: Record<ColorClass, string> = {
  red: "#e03131",
  orange: "#f59f00",
  white: "#ffffff",
};

export const EDGE_COLOR = "#5c636a";
export const DIMMED_OPACITY = "0.25"; // styling constant for non-highlighted items
export const FALLBACK_SLICE_FILL = "#999999";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function attrs(pairs: Record<string, string>): string {
  return Object.entries(pairs)
    .map(([key, value]) => `${key}="${value}"`)
    .join(" ");
}

export function renderClusterView(
  view: ClusterViewPayload,
  overlay: ClusterOverlayPayload | null = null,
): string {
  const overlayByCluster = new Map(
    (overlay?.clusters ?? []).map((entry) => [entry.id, entry]),
  );
  const overlayByEdge = new Map(
    (overlay?.edges ?? []).map((entry) => [`${entry.a}:${entry.b}`, entry]),
  );
  const position = new Map(view.nodes.map((node) => [node.id, node]));

  const parts: string[] = [];
  for (const edge of view.edges) {
    const a = position.get(edge.a);
    const b = position.get(edge.b);
    if (!a || !b) continue;
    const styled = overlayByEdge.get(`${edge.a}:${edge.b}`);
    const opacity = styled ? String(styled.opacity) : String(edge.intensity);
    parts.push(
      `<line ${attrs({
        class: "cluster-edge",
        "data-a": String(edge.a),
        "data-b": String(edge.b),
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
        stroke: EDGE_COLOR,
        "stroke-width": String(edge.width),
        "stroke-opacity": opacity,
      })}/>`,
    );
  }

  for (const node of view.nodes) {
    const styled = overlayByCluster.get(node.id);
    const fill = styled ? CLASS_FILLS[styled.color_class] : node.color;
    const opacity = styled ? String(styled.opacity) : "1";
    parts.push(
      `<g class="cluster-node" data-id="${node.id}">` +
        `<ellipse ${attrs({
          cx: String(node.x),
          cy: String(node.y),
          rx: String(node.major_radius),
          ry: String(node.minor_radius),
          fill,
          "fill-opacity": opacity,
          stroke: "#343a40",
          "stroke-width": "1",
        })}/>` +
        `<title>${esc(node.name)} (${node.gene_count} genes)</title>` +
        `</g>`,
    );
  }
  return `<g class="cluster-view">${parts.join("")}</g>`;
}

function pieSlices(
  node: { x: number; y: number; radius: number },
  slices: { cluster: number; fraction: number }[],
  fillFor: (cluster: number) => string,
): string {
  if (slices.length === 1 && slices[0] !== undefined) {
    return `<circle ${attrs({
      class: "pie-slice",
      "data-cluster": String(slices[0].cluster),
      cx: String(node.x),
      cy: String(node.y),
      r: String(node.radius),
      fill: fillFor(slices[0].cluster),
    })}/>`;
  }
  const parts: string[] = [];
  let turn = 0; // cumulative fraction, 12 o'clock start, clockwise
  for (const slice of slices) {
    const start = turn;
    turn += slice.fraction;
    const a0 = (start * 2 - 0.5) * Math.PI;
    const a1 = (turn * 2 - 0.5) * Math.PI;
    const x0 = node.x + node.radius * Math.cos(a0);
    const y0 = node.y + node.radius * Math.sin(a0);
    const x1 = node.x + node.radius * Math.cos(a1);
    const y1 = node.y + node.radius * Math.sin(a1);
    const large = slice.fraction > 0.5 ? 1 : 0;
    const r = node.radius;
    parts.push(
      `<path ${attrs({
        class: "pie-slice",
        "data-cluster": String(slice.cluster),
        d:
          `M ${node.x} ${node.y} L ${x0} ${y0} ` +
          `A ${r} ${r} 0 ${large} 1 ${x1} ${y1} Z`,
        fill: fillFor(slice.cluster),
      })}/>`,
    );
  }
  return parts.join("");
}

export function renderGeneView(
  view: GeneViewPayload,
  clusterColors: Map<number, string>,
  overlay: GeneOverlayPayload | null = null,
  highlight: HighlightPayload | null = null,
): string {
  const overlayByGene = new Map((overlay?.genes ?? []).map((g) => [g.id, g]));
  const levelByGene = highlight
    ? new Map(highlight.nodes.map((n) => [n.id, n.level]))
    : null;
  const highlightEdges = highlight
    ? new Set(highlight.edges.map((e) => `${e.a}:${e.b}`))
    : null;
  const position = new Map(view.nodes.map((node) => [node.id, node]));

  const parts: string[] = [];
  for (const edge of view.edges) {
    const a = position.get(edge.a);
    const b = position.get(edge.b);
    if (!a || !b || edge.a === edge.b) continue;
    const selected =
      highlightEdges === null || highlightEdges.has(`${edge.a}:${edge.b}`);
    parts.push(
      `<line ${attrs({
        class: selected ? "gene-edge" : "gene-edge dimmed",
        "data-a": String(edge.a),
        "data-b": String(edge.b),
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
        stroke: EDGE_COLOR,
        "stroke-width": String(edge.width),
        "stroke-opacity": selected ? String(edge.intensity) : DIMMED_OPACITY,
      })}/>`,
    );
  }

  for (const node of view.nodes) {
    const styled = overlayByGene.get(node.id);
    const fillFor = styled
      ? () => styled.color
      : (cluster: number) => clusterColors.get(cluster) ?? FALLBACK_SLICE_FILL;
    const level = levelByGene === null ? null : levelByGene.get(node.id);
    const dimmed = levelByGene !== null && level === undefined;
    const classes = ["gene-node"];
    if (dimmed) classes.push("dimmed");
    if (level === 0) classes.push("origin");
    const body: string[] = [pieSlices(node, node.pie, fillFor)];
    if (level !== null && level !== undefined && level > 0) {
      body.push(
        `<text ${attrs({
          class: "level-badge",
          x: String(node.x + node.radius),
          y: String(node.y - node.radius),
        })}>${level}</text>`,
      );
    }
    if (level === 0) {
      body.push(
        `<circle ${attrs({
          class: "origin-ring",
          cx: String(node.x),
          cy: String(node.y),
          r: String(node.radius),
          fill: "none",
          stroke: "#1c7ed6",
          "stroke-width": "2",
        })}/>`,
      );
    }
    parts.push(
      `<g class="${classes.join(" ")}" data-id="${node.id}"` +
        (dimmed ? ` opacity="${DIMMED_OPACITY}"` : "") +
        `><title>${esc(node.name)}</title>${body.join("")}</g>`,
    );
  }
  return `<g class="gene-view">${parts.join("")}</g>`;
}

// Smallest box covering all nodes plus a margin; used for zoom-to-fit.
export function viewBoxFor(
  nodes: { x: number; y: number }[],
  margin = 60,
): string {
  if (!nodes.length) return "0 0 1000 1000";
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const node of nodes) {
    minX = Math.min(minX, node.x);
    minY = Math.min(minY, node.y);
    maxX = Math.max(maxX, node.x);
    maxY = Math.max(maxY, node.y);
  }
  return [
    minX - margin,
    minY - margin,
    maxX - minX + 2 * margin,
    maxY - minY + 2 * margin,
  ].join(" ");
}
