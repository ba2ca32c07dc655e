// DOM rendering: piece browser, composer panel and transport strip,
// all driven by the AppController state.

import { AppController, UiState } from './controller.js'
import { SpecDraft } from './spec_text.js'

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  props: Partial<HTMLElementTagNameMap[K]> & { class?: string } = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag)
  const { class: className, ...rest } = props
  if (className) node.className = className
  Object.assign(node, rest)
  node.append(...children)
  return node
}

function bagEditor(
  label: string,
  field: keyof Pick<SpecDraft, 'notes' | 'octaveDurations' | 'instruments' | 'keywords'>,
  controller: AppController,
): HTMLElement {
  const input = el('textarea', {
    id: `bag-${field}`,
    value: controller.state.draft[field].join(', '),
    rows: 2,
  })
  input.addEventListener('change', () => {
    const items = input.value
      .split(',')
      .map((s) => s.trim())
      .filter((s) => s.length > 0)
    controller.editDraft({ [field]: items })
  })
  return el('label', { class: 'bag-editor' }, `${label} `, input)
}

export function renderApp(root: HTMLElement, controller: AppController): void {
  const render = (state: UiState) => {
    root.replaceChildren(
      el(
        'header',
        {},
        el('h1', {}, 'probmusic composer'),
        el('p', { class: 'note' }, 'Remote control: sound plays on the host running the service.'),
        state.banner ? el('div', { class: 'banner', id: 'banner' }, state.banner) : '',
      ),
      renderBrowser(state, controller),
      renderComposer(state, controller),
      renderTransport(state, controller),
      renderScores(state),
    )
  }
  controller.subscribe(render)
  render(controller.state)
}

function renderBrowser(state: UiState, controller: AppController): HTMLElement {
  const rows = state.pieces.map((piece) => {
    const excluded = controller.isExcluded(piece)
    const row = el(
      'li',
      { class: excluded ? 'piece excluded' : 'piece' },
      el('button', { id: `select-${piece.id}` }, piece.title || piece.id),
      piece.keywords.length ? el('span', { class: 'tags' }, ` [${piece.keywords.join(', ')}]`) : '',
    )
    row.querySelector('button')!.addEventListener('click', () => void controller.selectPiece(piece.id))
    return row
  })

  const checkboxes = state.keywords.map((keyword) => {
    const box = el('input', {
      type: 'checkbox',
      id: `kw-${keyword}`,
      checked: !state.excludedKeywords.has(keyword),
    })
    box.addEventListener('change', () => void controller.setKeywordChecked(keyword, box.checked))
    return el('label', { class: 'kw' }, box, keyword)
  })

  const playAll = el('button', { id: 'play-all' }, 'Play all')
  playAll.addEventListener('click', () => void controller.playAll())

  return el(
    'section',
    { class: 'browser' },
    el('h2', {}, 'Playlist'),
    el('ul', { class: 'pieces' }, ...rows),
    state.keywords.length
      ? el('div', { class: 'keyword-panel', id: 'keyword-panel' }, 'Keywords: ', ...checkboxes)
      : '',
    playAll,
  )
}

function renderComposer(state: UiState, controller: AppController): HTMLElement {
  if (state.selectedId === null) {
    return el('section', { class: 'composer' }, el('h2', {}, 'Composer'), el('p', {}, 'Select a piece.'))
  }
  const title = el('input', { id: 'title', value: state.draft.title })
  title.addEventListener('change', () => controller.editDraft({ title: title.value }))

  const save = el('button', { id: 'save' }, 'Save')
  save.addEventListener('click', () => void controller.save())

  const generatePlay = el('button', { id: 'generate-play' }, 'Generate & Play')
  generatePlay.addEventListener('click', () => void controller.generateAndPlay())

  return el(
    'section',
    { class: 'composer' },
    el('h2', {}, `Composer — ${state.selectedId}${state.draftDirty ? ' *' : ''}`),
    el('label', {}, 'Title ', title),
    bagEditor('Notes', 'notes', controller),
    bagEditor('Octave-durations', 'octaveDurations', controller),
    bagEditor('Instruments', 'instruments', controller),
    bagEditor('Keywords', 'keywords', controller),
    state.saveError
      ? el(
          'div',
          { class: 'error', id: 'save-error' },
          state.saveError.line !== undefined
            ? `${state.saveError.message} (line ${state.saveError.line}, column ${state.saveError.column})`
            : state.saveError.message,
        )
      : '',
    save,
    generatePlay,
  )
}

function renderTransport(state: UiState, controller: AppController): HTMLElement {
  const numeric = (id: string, value: number, apply: (v: number) => boolean) => {
    const input = el('input', { id, type: 'number', value: String(value) })
    input.addEventListener('change', () => {
      if (!apply(Number(input.value))) input.classList.add('invalid')
      else input.classList.remove('invalid')
    })
    return input
  }
  const length = numeric('ctl-length', state.controls.lengthMs, (v) => controller.setControls({ lengthMs: v }))
  const threads = numeric('ctl-threads', state.controls.streamsK, (v) => controller.setControls({ streamsK: v }))
  const stagger = numeric('ctl-stagger', state.controls.staggerS, (v) => controller.setControls({ staggerS: v }))

  const stopButton = el('button', { id: 'stop' }, 'Stop')
  stopButton.addEventListener('click', () => void controller.stop())

  const bars = (state.status?.progress ?? []).map((words, i) =>
    el(
      'div',
      { class: 'progress' },
      `stream ${i}: ${words}${state.status?.length_ms ? ` / ${state.status.length_ms}` : ''}`,
    ),
  )

  return el(
    'section',
    { class: 'transport' },
    el('h2', {}, 'Player'),
    el('label', {}, 'Words ', length),
    el('label', {}, 'Threads ', threads),
    el('label', {}, 'Stagger s ', stagger),
    stopButton,
    el(
      'div',
      { class: state.statusStale ? 'status stale' : 'status', id: 'status' },
      `state: ${state.status?.state ?? 'unknown'}${state.statusStale ? ' (stale)' : ''}`,
    ),
    ...bars,
  )
}

function renderScores(state: UiState): HTMLElement {
  if (state.scores.length === 0) return el('section', { class: 'scores' })
  return el(
    'section',
    { class: 'scores' },
    el('h2', {}, `Scores (seed ${state.lastSeed})`),
    ...state.scores.map((score) => el('pre', { class: 'score' }, score)),
  )
}
