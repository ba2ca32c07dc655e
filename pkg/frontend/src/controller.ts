// Application state and behaviour, kept DOM-free so the contract tests
// can replay full user flows against a stub server.

import { ApiClient, ApiError, PieceSummary, PlayerStatus } from './api.js'
import { SpecDraft, buildSpecText, emptyDraft, parseSpecText, validateDraft } from './spec_text.js'

export interface PlayerControls {
  lengthMs: number
  streamsK: number
  staggerS: number
  seed: number | null
}

export const DEFAULT_CONTROLS: PlayerControls = {
  lengthMs: 120,
  streamsK: 3,
  staggerS: 3.0,
  seed: null,
}

export interface UiState {
  pieces: PieceSummary[]
  keywords: string[]
  excludedKeywords: Set<string>
  selectedId: string | null
  draft: SpecDraft
  draftDirty: boolean
  controls: PlayerControls
  scores: string[]
  lastSeed: number | null
  status: PlayerStatus | null
  statusStale: boolean
  banner: string | null
  saveError: { message: string; line?: number; column?: number } | null
  lastQueue: string[] | null
}

type Listener = (state: UiState) => void

export class AppController {
  readonly state: UiState = {
    pieces: [],
    keywords: [],
    excludedKeywords: new Set(),
    selectedId: null,
    draft: emptyDraft(),
    draftDirty: false,
    controls: { ...DEFAULT_CONTROLS },
    scores: [],
    lastSeed: null,
    status: null,
    statusStale: false,
    banner: null,
    saveError: null,
    lastQueue: null,
  }

  private listeners: Listener[] = []
  private lastElapsed = -1

  constructor(private api: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener)
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state)
  }

  // ----- library / browser -----

  async load(): Promise<void> {
    try {
      this.state.pieces = await this.api.listPieces()
      this.state.keywords = await this.api.keywords()
      this.state.banner = null
    } catch {
      this.state.banner = 'service unreachable'
    }
    this.notify()
  }

  isExcluded(piece: PieceSummary): boolean {
    return piece.keywords.some((k) => this.state.excludedKeywords.has(k))
  }

  expectedQueue(): string[] {
    return this.state.pieces.filter((p) => !this.isExcluded(p)).map((p) => p.id)
  }

  async setKeywordChecked(keyword: string, checked: boolean): Promise<void> {
    if (checked) this.state.excludedKeywords.delete(keyword)
    else this.state.excludedKeywords.add(keyword)
    await this.api.setFilters([...this.state.excludedKeywords].sort())
    this.notify()
  }

  async playAll(): Promise<void> {
    const { queue } = await this.api.playAll()
    this.state.lastQueue = queue
    this.notify()
  }

  // ----- composer panel -----

  async selectPiece(id: string): Promise<void> {
    const detail = await this.api.getPiece(id)
    this.state.selectedId = id
    this.state.draft = parseSpecText(detail.spec_text)
    this.state.draftDirty = false
    this.state.saveError = null
    this.state.scores = []
    this.notify()
  }

  newPiece(id: string): void {
    this.state.selectedId = id
    this.state.draft = emptyDraft()
    this.state.draftDirty = true
    this.state.saveError = null
    this.state.scores = []
    this.notify()
  }

  editDraft(update: Partial<SpecDraft>): void {
    this.state.draft = { ...this.state.draft, ...update }
    this.state.draftDirty = true
    this.notify()
  }

  draftProblems() {
    return validateDraft(this.state.draft)
  }

  async save(): Promise<boolean> {
    if (this.state.selectedId === null) return false
    if (this.draftProblems().length > 0) {
      this.state.saveError = { message: this.draftProblems()[0].message }
      this.notify()
      return false
    }
    try {
      await this.api.savePiece(this.state.selectedId, buildSpecText(this.state.draft))
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        const detail = error.detail as { message?: string; line?: number; column?: number } | string
        this.state.saveError =
          typeof detail === 'string'
            ? { message: detail }
            : { message: detail?.message ?? 'invalid spec', line: detail?.line, column: detail?.column }
        this.notify()
        return false
      }
      throw error
    }
    this.state.saveError = null
    this.state.draftDirty = false
    await this.load()
    return true
  }

  // ----- transport -----

  setControls(update: Partial<PlayerControls>): boolean {
    const next = { ...this.state.controls, ...update }
    if (next.lengthMs < 1 || next.streamsK < 1 || next.streamsK > 15 || next.staggerS < 0) {
      return false // client-side rejection, no request goes out
    }
    this.state.controls = next
    this.notify()
    return true
  }

  async generate(): Promise<void> {
    if (this.state.selectedId === null) return
    const { lengthMs, streamsK, seed } = this.state.controls
    const result = await this.api.generate(this.state.selectedId, {
      length_ms: lengthMs,
      streams_k: streamsK,
      ...(seed !== null ? { seed } : {}),
    })
    this.state.scores = result.scores
    this.state.lastSeed = result.seed
    this.notify()
  }

  async play(): Promise<void> {
    if (this.state.selectedId === null) return
    const { lengthMs, streamsK, staggerS, seed } = this.state.controls
    try {
      const result = await this.api.play(this.state.selectedId, {
        length_ms: lengthMs,
        streams_k: streamsK,
        stagger_s: staggerS,
        ...(seed !== null ? { seed } : {}),
      })
      this.state.lastSeed = result.seed
      this.state.banner = null
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.state.banner = 'already playing — stop first'
        this.notify()
        return
      }
      throw error
    }
    this.notify()
  }

  async generateAndPlay(): Promise<void> {
    await this.generate()
    // Replay the exact scores just shown by reusing the reported seed.
    const previousSeed = this.state.controls.seed
    this.state.controls = { ...this.state.controls, seed: this.state.lastSeed }
    await this.play()
    this.state.controls = { ...this.state.controls, seed: previousSeed }
    this.notify()
  }

  async stop(): Promise<void> {
    await this.api.stop()
    await this.pollStatus()
  }

  async pollStatus(): Promise<void> {
    try {
      const status = await this.api.status()
      // Monotone guard: drop out-of-order responses from an older poll.
      if (
        this.state.status !== null &&
        status.state === this.state.status.state &&
        status.elapsed_s < this.lastElapsed
      ) {
        return
      }
      this.lastElapsed = status.elapsed_s
      this.state.status = status
      this.state.statusStale = false
    } catch {
      this.state.statusStale = true
    }
    this.notify()
  }

  startPolling(intervalMs = 1000): () => void {
    const id = setInterval(() => void this.pollStatus(), intervalMs)
    return () => clearInterval(id)
  }
}
