// Typed client for the playlist service HTTP API. The fetch function is
// injectable so tests can run against a stub server.

export interface PieceSummary {
  id: string
  title: string
  keywords: string[]
}

export interface PieceDetail extends PieceSummary {
  spec_text: string
}

export interface GenerateResult {
  seed: number
  scores: string[]
  multiplicity: { w: number; per_stream_digits: number; total_digits: number }
}

export interface PlayResult {
  session_id: string
  seed: number
}

export interface PlayerStatus {
  state: 'playing' | 'stopping' | 'stopped'
  piece_id?: string
  elapsed_s: number
  progress: number[]
  length_ms?: number
}

export interface GenerateOptions {
  length_ms: number
  streams_k: number
  seed?: number
}

export interface PlayOptions extends GenerateOptions {
  stagger_s: number
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(`API error ${status}`)
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>

export class ApiClient {
  constructor(
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
    private base = '',
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} }
    if (body !== undefined) {
      init.headers = { 'Content-Type': 'application/json' }
      init.body = JSON.stringify(body)
    }
    const response = await this.fetchFn(this.base + path, init)
    if (!response.ok) {
      let detail: unknown = null
      try {
        detail = (await response.json()).detail
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, detail)
    }
    return (await response.json()) as T
  }

  listPieces(): Promise<PieceSummary[]> {
    return this.request('GET', '/api/pieces')
  }

  getPiece(id: string): Promise<PieceDetail> {
    return this.request('GET', `/api/pieces/${id}`)
  }

  savePiece(id: string, specText: string): Promise<PieceSummary> {
    return this.request('PUT', `/api/pieces/${id}`, { spec_text: specText })
  }

  generate(id: string, options: GenerateOptions): Promise<GenerateResult> {
    return this.request('POST', `/api/pieces/${id}/generate`, options)
  }

  play(id: string, options: PlayOptions): Promise<PlayResult> {
    return this.request('POST', `/api/pieces/${id}/play`, options)
  }

  stop(): Promise<{ state: string }> {
    return this.request('POST', '/api/stop')
  }

  status(): Promise<PlayerStatus> {
    return this.request('GET', '/api/status')
  }

  keywords(): Promise<string[]> {
    return this.request('GET', '/api/keywords')
  }

  setFilters(excluded: string[]): Promise<{ excluded: string[] }> {
    return this.request('POST', '/api/filters', { excluded })
  }

  playAll(): Promise<{ queue: string[] }> {
    return this.request('POST', '/api/playall')
  }
}
