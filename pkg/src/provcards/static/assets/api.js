/** HTTP client for the summary service, with a latest-wins summary fetcher. */
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
        this.name = "ApiError";
    }
}
const getJson = async (fetchFn, url) => {
    const res = await fetchFn(url);
    if (!res.ok)
        throw new ApiError(res.status, `GET ${url} failed with ${res.status}`);
    return res.json();
};
export const summaryUrl = (sessionId, k) => `/api/sessions/${encodeURIComponent(sessionId)}/summary?segments=${k}`;
export async function listSessions(fetchFn = fetch) {
    return (await getJson(fetchFn, "/api/sessions"));
}
/**
 * Latest-wins summary fetcher: at most one in-flight request is honored.
 * A request superseded by a newer one resolves to null, whatever order the
 * responses actually arrive in.
 */
export class SummaryClient {
    constructor(fetchFn = fetch) {
        this.fetchFn = fetchFn;
        this.latest = 0;
    }
    async load(sessionId, k) {
        const id = ++this.latest;
        const res = await this.fetchFn(summaryUrl(sessionId, k));
        if (id !== this.latest)
            return null;
        if (!res.ok)
            throw new ApiError(res.status, `summary fetch failed with ${res.status}`);
        const data = (await res.json());
        return id === this.latest ? data : null;
    }
}
