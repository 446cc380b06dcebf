// Thin typed client over the service endpoints. The fetch implementation is
// injectable so tests can run against canned payloads.
export class ApiError extends Error {
    constructor(status, payload) {
        super(`${payload.error_code}: ${payload.message}`);
        this.status = status;
        this.payload = payload;
    }
}
export class Api {
    constructor(base = "", fetchFn = (...args) => fetch(...args)) {
        this.base = base.replace(/\/$/, "");
        this.fetchFn = fetchFn;
    }
    async request(path, init) {
        const resp = await this.fetchFn(this.base + path, init);
        if (!resp.ok) {
            let payload;
            try {
                payload = (await resp.json());
            }
            catch {
                payload = { error_code: "HTTP_" + resp.status, message: resp.statusText };
            }
            throw new ApiError(resp.status, payload);
        }
        return (await resp.json());
    }
    createSession(seed) {
        return this.request("/sessions", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(seed === undefined ? {} : { seed }),
        });
    }
    uploadDataset(sessionId, kind, text) {
        return this.request(`/sessions/${sessionId}/datasets/${kind}`, {
            method: "POST",
            headers: { "content-type": "text/csv" },
            body: text,
        });
    }
    clusterView(sessionId, opts = {}) {
        const params = new URLSearchParams();
        if (opts.minOverlap !== undefined)
            params.set("min_overlap", String(opts.minOverlap));
        if (opts.seed !== undefined)
            params.set("seed", String(opts.seed));
        const query = params.toString();
        return this.request(`/sessions/${sessionId}/cluster-view${query ? "?" + query : ""}`);
    }
    geneView(sessionId, clusterId, seed) {
        const query = seed === undefined ? "" : `?seed=${seed}`;
        return this.request(`/sessions/${sessionId}/clusters/${clusterId}/gene-view${query}`);
    }
    diseases(sessionId) {
        return this.request(`/sessions/${sessionId}/diseases`);
    }
    clusterOverlay(sessionId, disease, minOverlap) {
        const params = new URLSearchParams({ disease });
        if (minOverlap !== undefined)
            params.set("min_overlap", String(minOverlap));
        return this.request(`/sessions/${sessionId}/overlay?${params}`);
    }
    geneOverlay(sessionId, disease, clusterId) {
        const params = new URLSearchParams({ disease, cluster_id: String(clusterId) });
        return this.request(`/sessions/${sessionId}/overlay?${params}`);
    }
    highlight(sessionId, clusterId, origin, mode, parameter) {
        const params = new URLSearchParams({
            cluster_id: String(clusterId),
            origin: String(origin),
            mode,
            parameter: String(parameter),
        });
        return this.request(`/sessions/${sessionId}/highlight?${params}`);
    }
    saveSnapshot(sessionId, path) {
        return this.request(`/sessions/${sessionId}/snapshot`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ path }),
        });
    }
    loadSnapshot(path) {
        return this.request("/snapshots:load", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ path }),
        });
    }
}
