// Browser wiring: controls, fetches and SVG mounting. All domain values are
// rendered verbatim from server payloads (see render.ts); this module only
// manages state, requests and client-side zoom/pan.
import { Api, ApiError } from "./api.js";
import { renderClusterView, renderGeneView, viewBoxFor } from "./render.js";
const state = {
    sessionId: null,
    clusterView: null,
    geneView: null,
    disease: null,
    clusterOverlay: null,
    geneOverlay: null,
    highlight: null,
    mode: "levels",
    parameter: 2,
};
const api = new Api("");
// one in-flight request per control; stale responses are dropped
const requestTokens = new Map();
function freshToken(channel) {
    const token = (requestTokens.get(channel) ?? 0) + 1;
    requestTokens.set(channel, token);
    return token;
}
function isCurrent(channel, token) {
    return requestTokens.get(channel) === token;
}
function el(id) {
    const found = document.getElementById(id);
    if (!found)
        throw new Error(`missing element #${id}`);
    return found;
}
function toast(message, isError = true) {
    const box = el("toast");
    box.textContent = message;
    box.className = isError ? "toast error" : "toast info";
    box.style.display = "block";
    window.setTimeout(() => (box.style.display = "none"), 6000);
}
function describeError(err) {
    if (err instanceof ApiError) {
        const loc = err.payload.location;
        const where = loc
            ? ` (row ${loc.row ?? "?"}${loc.column !== undefined ? `, column ${loc.column}` : ""})`
            : "";
        return `${err.payload.error_code}: ${err.payload.message}${where}`;
    }
    return String(err);
}
function clusterColorMap() {
    return new Map((state.clusterView?.nodes ?? []).map((n) => [n.id, n.color]));
}
function redrawClusterView() {
    const svg = el("cluster-svg");
    if (!state.clusterView) {
        svg.innerHTML = "";
        return;
    }
    svg.innerHTML = renderClusterView(state.clusterView, state.clusterOverlay);
    for (const group of svg.querySelectorAll("g.cluster-node")) {
        group.addEventListener("click", () => {
            const id = Number(group.dataset.id);
            void openGeneView(id);
        });
    }
}
function redrawGeneView() {
    const svg = el("gene-svg");
    if (!state.geneView) {
        svg.innerHTML = "";
        el("gene-title").textContent = "no cluster selected";
        return;
    }
    const name = state.clusterView?.nodes.find((n) => n.id === state.geneView?.cluster)?.name;
    el("gene-title").textContent = name ?? `cluster ${state.geneView.cluster}`;
    svg.innerHTML = renderGeneView(state.geneView, clusterColorMap(), state.geneOverlay, state.highlight);
    for (const group of svg.querySelectorAll("g.gene-node")) {
        group.addEventListener("click", () => {
            const id = Number(group.dataset.id);
            void runHighlight(id);
        });
    }
}
async function refreshClusterView(seed) {
    if (!state.sessionId)
        return;
    const token = freshToken("cluster-view");
    const view = await api.clusterView(state.sessionId, { seed });
    if (!isCurrent("cluster-view", token))
        return;
    state.clusterView = view;
    state.geneView = null;
    state.highlight = null;
    state.geneOverlay = null;
    el("cluster-svg").setAttribute("viewBox", viewBoxFor(view.nodes));
    redrawClusterView();
    redrawGeneView();
    el("layout-info").textContent =
        `seed ${view.layout.seed}, ${view.layout.iterations} iterations` +
            (view.layout.converged ? "" : " (not converged)");
}
async function openGeneView(clusterId) {
    if (!state.sessionId)
        return;
    const token = freshToken("gene-view");
    try {
        const view = await api.geneView(state.sessionId, clusterId);
        if (!isCurrent("gene-view", token))
            return;
        state.geneView = view;
        state.highlight = null;
        state.geneOverlay = state.disease
            ? await api.geneOverlay(state.sessionId, state.disease, clusterId)
            : null;
        el("gene-svg").setAttribute("viewBox", viewBoxFor(view.nodes));
        redrawGeneView();
    }
    catch (err) {
        toast(describeError(err));
    }
}
async function runHighlight(origin) {
    if (!state.sessionId || !state.geneView)
        return;
    const token = freshToken("highlight");
    try {
        const result = await api.highlight(state.sessionId, state.geneView.cluster, origin, state.mode, state.parameter);
        if (!isCurrent("highlight", token))
            return;
        state.highlight = result;
        redrawGeneView();
    }
    catch (err) {
        toast(describeError(err));
    }
}
async function applyDisease(disease) {
    if (!state.sessionId)
        return;
    const token = freshToken("overlay");
    try {
        if (!disease) {
            state.disease = null;
            state.clusterOverlay = null;
            state.geneOverlay = null;
        }
        else {
            state.disease = disease;
            state.clusterOverlay = await api.clusterOverlay(state.sessionId, disease);
            state.geneOverlay = state.geneView
                ? await api.geneOverlay(state.sessionId, disease, state.geneView.cluster)
                : null;
            if (!isCurrent("overlay", token))
                return;
        }
        // overlays restyle only: node positions are untouched
        redrawClusterView();
        redrawGeneView();
    }
    catch (err) {
        toast(describeError(err));
    }
}
async function refreshDiseases() {
    if (!state.sessionId)
        return;
    const select = el("disease-select");
    try {
        const entries = await api.diseases(state.sessionId);
        select.innerHTML =
            `<option value="">disease mode off</option>` +
                entries
                    .map((d) => `<option value="${d.disease.replace(/"/g, "&quot;")}">` +
                    `${d.disease} (${d.record_count})</option>`)
                    .join("");
    }
    catch {
        // no disease dataset yet
    }
}
function bindUpload(buttonId, inputId, kind) {
    el(buttonId).addEventListener("click", () => el(inputId).click());
    el(inputId).addEventListener("change", async (event) => {
        const input = event.target;
        const file = input.files?.[0];
        if (!file || !state.sessionId)
            return;
        try {
            const report = await api.uploadDataset(state.sessionId, kind, await file.text());
            toast(`${kind}: ${report.rows} rows` +
                (report.kind ? ` (${report.kind})` : "") +
                (report.warnings.length ? `, ${report.warnings.length} warning(s)` : ""), false);
            if (kind === "cluster")
                await refreshClusterView();
            if (kind === "interaction" && state.geneView)
                await openGeneView(state.geneView.cluster);
            if (kind === "disease")
                await refreshDiseases();
        }
        catch (err) {
            toast(describeError(err));
        }
        finally {
            input.value = "";
        }
    });
}
function enablePanZoom(svgId) {
    const svg = el(svgId);
    let dragging = false;
    let last = { x: 0, y: 0 };
    const box = () => (svg.getAttribute("viewBox") ?? "0 0 1000 1000").split(" ").map(Number);
    svg.addEventListener("wheel", (event) => {
        event.preventDefault();
        const [x, y, w, h] = box();
        const factor = event.deltaY > 0 ? 1.15 : 1 / 1.15;
        const nw = w * factor;
        const nh = h * factor;
        svg.setAttribute("viewBox", [x + (w - nw) / 2, y + (h - nh) / 2, nw, nh].join(" "));
    });
    svg.addEventListener("mousedown", (event) => {
        dragging = true;
        last = { x: event.clientX, y: event.clientY };
    });
    window.addEventListener("mouseup", () => (dragging = false));
    window.addEventListener("mousemove", (event) => {
        if (!dragging)
            return;
        const [x, y, w, h] = box();
        const scale = w / svg.clientWidth;
        svg.setAttribute("viewBox", [
            x - (event.clientX - last.x) * scale,
            y - (event.clientY - last.y) * scale,
            w,
            h,
        ].join(" "));
        last = { x: event.clientX, y: event.clientY };
    });
}
async function start() {
    const info = await api.createSession();
    state.sessionId = info.session_id;
    el("session-info").textContent = `session ${info.session_id.slice(0, 8)}`;
    bindUpload("upload-cluster", "file-cluster", "cluster");
    bindUpload("upload-interaction", "file-interaction", "interaction");
    bindUpload("upload-disease", "file-disease", "disease");
    el("disease-select").addEventListener("change", (event) => {
        const value = event.target.value;
        void applyDisease(value || null);
    });
    el("mode-select").addEventListener("change", (event) => {
        state.mode = event.target.value;
    });
    el("parameter-input").addEventListener("change", (event) => {
        state.parameter = Number(event.target.value);
    });
    el("relayout").addEventListener("click", () => {
        void refreshClusterView(Math.floor(Math.random() * 2 ** 32));
    });
    el("zoom-fit").addEventListener("click", () => {
        if (state.clusterView)
            el("cluster-svg").setAttribute("viewBox", viewBoxFor(state.clusterView.nodes));
        if (state.geneView)
            el("gene-svg").setAttribute("viewBox", viewBoxFor(state.geneView.nodes));
    });
    enablePanZoom("cluster-svg");
    enablePanZoom("gene-svg");
}
window.addEventListener("DOMContentLoaded", () => {
    void start().catch((err) => toast(describeError(err)));
});
