/** Thin typed client for the catalog HTTP API (read-only GETs). */

import type {
  ApiErrorDoc,
  BrowseDoc,
  DetailDoc,
  HealthDoc,
  Paginated,
  ResultItem,
  StatsDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public doc: ApiErrorDoc) {
    super(doc.message);
  }
}

export interface AdvancedParams {
  name?: string;
  keyword?: string;
  msc?: string;
  author?: string;
  year_from?: string;
  year_to?: string;
  page?: number;
  per_page?: number;
}

export class ApiClient {
  constructor(private baseUrl: string = "",
              private fetchFn: typeof fetch = fetch) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body as ApiErrorDoc);
    }
    return body as T;
  }

  health(): Promise<HealthDoc> {
    return this.get("/api/health");
  }

  search(q: string, page = 1, perPage = 20): Promise<Paginated<ResultItem>> {
    const params = new URLSearchParams({ q, page: String(page),
                                         per_page: String(perPage) });
    return this.get(`/api/software?${params}`);
  }

  advanced(params: AdvancedParams): Promise<Paginated<ResultItem>> {
    const query = new URLSearchParams();
    for (const [key, value] of Object.entries(params)) {
      if (value !== undefined && value !== "") query.set(key, String(value));
    }
    return this.get(`/api/software/advanced?${query}`);
  }

  detail(swId: string): Promise<DetailDoc> {
    return this.get(`/api/software/${encodeURIComponent(swId)}`);
  }

  browseMsc(section: string): Promise<BrowseDoc> {
    return this.get(`/api/browse/msc/${encodeURIComponent(section)}`);
  }

  browseAlpha(prefix: string): Promise<BrowseDoc> {
    return this.get(`/api/browse/alpha/${encodeURIComponent(prefix)}`);
  }

  stats(): Promise<StatsDoc> {
    return this.get("/api/stats");
  }
}
