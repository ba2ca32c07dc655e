// Minimal reader/writer for the brace-format piece files, just enough to
// move between the server's spec_text and the composer panel's fields.
// The server remains the authority on validation.

export interface SpecDraft {
  title: string
  notes: string[]
  octaveDurations: string[]
  instruments: string[]
  keywords: string[]
}

export function emptyDraft(): SpecDraft {
  return { title: '', notes: [], octaveDurations: [], instruments: [], keywords: [] }
}

export function parseSpecText(text: string): SpecDraft {
  // Strip comments, then pull out each {...} row's quoted strings.
  const noComments = text.replace(/\/\/[^\n]*/g, '')
  const inner = noComments.trim().replace(/^\{/, '').replace(/\}$/, '')
  const rows: string[][] = []
  const rowRe = /\{([^{}]*)\}/g
  let match: RegExpExecArray | null
  while ((match = rowRe.exec(inner)) !== null) {
    const strings: string[] = []
    const strRe = /"([^"]*)"/g
    let s: RegExpExecArray | null
    while ((s = strRe.exec(match[1])) !== null) strings.push(s[1])
    rows.push(strings)
  }
  if (rows.length < 4) throw new Error(`expected at least 4 rows, found ${rows.length}`)
  return {
    title: rows[0][0] ?? '',
    notes: rows[1],
    octaveDurations: rows[2],
    instruments: rows[3],
    keywords: rows[4] ?? [],
  }
}

export function buildSpecText(draft: SpecDraft): string {
  const row = (items: string[]) => `  {${items.map((s) => `"${s}"`).join(',')}},`
  const lines = ['{', row([draft.title]), row(draft.notes), row(draft.octaveDurations), row(draft.instruments)]
  if (draft.keywords.length > 0) lines.push(row(draft.keywords))
  lines.push('}')
  return lines.join('\n') + '\n'
}

export interface DraftProblem {
  field: string
  message: string
}

const NOTE_RE = /^[A-G]( [A-G])*$/
const OD_RE = /^(10|[1-9])?[whqi]$/

export function validateDraft(draft: SpecDraft): DraftProblem[] {
  const problems: DraftProblem[] = []
  if (draft.notes.length === 0) problems.push({ field: 'notes', message: 'note bag is empty' })
  if (draft.octaveDurations.length === 0)
    problems.push({ field: 'octaveDurations', message: 'octave-duration bag is empty' })
  if (draft.instruments.length === 0)
    problems.push({ field: 'instruments', message: 'instrument bag is empty' })
  for (const note of draft.notes) {
    if (!NOTE_RE.test(note.trim()))
      problems.push({ field: 'notes', message: `"${note}" is not a pitch letter sequence (A-G)` })
  }
  for (const od of draft.octaveDurations) {
    if (!OD_RE.test(od.trim()))
      problems.push({ field: 'octaveDurations', message: `"${od}" is not octave(1-10)+duration(w/h/q/i)` })
  }
  return problems
}
