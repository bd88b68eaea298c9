/**
 * Thin typed wrapper over the session HTTP API. The fetch implementation
 * is injectable so tests can run against recorded responses.
 */

import type {
  CodePanelData,
  GroupsResponse,
  LayoutExport,
  NodeDetails,
  SearchResponse,
  SelectResponse,
  SessionRef,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export interface MutateGroupRequest {
  revision: number;
  group?: { kind?: string; members: number[]; label: string; comment?: string | null };
  ref?: number | string;
}

export interface SelectRequest {
  revision: number;
  nodes?: number[];
  method?: string;
  lines?: number[];
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createSession(graphDoc: unknown): Promise<SessionRef> {
    return this.post("/session", graphDoc);
  }

  layout(sid: string): Promise<LayoutExport> {
    return this.request(`/session/${sid}/layout`);
  }

  groups(sid: string): Promise<GroupsResponse> {
    return this.request(`/session/${sid}/groups`);
  }

  collapse(sid: string, body: MutateGroupRequest): Promise<{ revision: number }> {
    return this.post(`/session/${sid}/collapse`, body);
  }

  expand(sid: string, body: MutateGroupRequest): Promise<{ revision: number }> {
    return this.post(`/session/${sid}/expand`, body);
  }

  search(sid: string, kind: string, q: string): Promise<SearchResponse> {
    const params = new URLSearchParams({ kind, q });
    return this.request(`/session/${sid}/search?${params}`);
  }

  node(sid: string, nid: number): Promise<NodeDetails> {
    return this.request(`/session/${sid}/node/${nid}`);
  }

  code(sid: string, method: string): Promise<CodePanelData> {
    return this.request(`/session/${sid}/code/${encodeURIComponent(method)}`);
  }

  select(sid: string, body: SelectRequest): Promise<SelectResponse> {
    return this.post(`/session/${sid}/select`, body);
  }
}
