/**
 * CSV loading and per-figure schema validation.
 *
 * The CSVs are the only interface to the numerics package: header names
 * identify the figure, every cell must be a finite number, and the
 * checksum of the data rows travels into the rendered file so a figure
 * can always be traced back to the exact rows it was drawn from.
 */

import { createHash } from 'node:crypto'
import Papa from 'papaparse'
import { z } from 'zod'

export const FIGURE_IDS = ['fig1', 'fig3', 'fig4'] as const
export type FigureId = (typeof FIGURE_IDS)[number]
export const figureIdSchema = z.enum(FIGURE_IDS)

export interface CsvTable {
  header: string[]
  rows: number[][]
  /** sha256 over the data-row lines (header excluded, joined with \n). */
  checksum: string
}

const FIG1_HEADER = ['OmegaT', 'negativity_over_lambda2', 'half_delta_over_lambda2']
const FIG3_HEADER = [
  'T_over_L',
  'ev1_full', 'ev2_full', 'ev3_full', 'ev4_full',
  'ev1_unitary', 'ev2_unitary', 'ev3_unitary', 'ev4_unitary',
]

function fixedHeader(expected: string[]) {
  return z.array(z.string()).refine(
    h => h.length === expected.length && h.every((c, i) => c === expected[i]),
    { message: `header must be exactly: ${expected.join(',')}` },
  )
}

// fig4 columns depend on the coupling list: T_over_L, k hs_sq_<tag>
// columns, then the k matching hs_limit_<tag> columns.
const fig4Header = z.array(z.string()).refine(h => {
  if (h[0] !== 'T_over_L' || h.length < 3 || (h.length - 1) % 2 !== 0) return false
  const k = (h.length - 1) / 2
  const sq = h.slice(1, 1 + k)
  const lim = h.slice(1 + k)
  return sq.every((c, i) =>
    c.startsWith('hs_sq_') &&
    lim[i] === `hs_limit_${c.slice('hs_sq_'.length)}`)
}, { message: 'header must be T_over_L, hs_sq_<tag>..., hs_limit_<tag>... with matching tags' })

const HEADER_SCHEMAS: Record<FigureId, z.ZodType<string[]>> = {
  fig1: fixedHeader(FIG1_HEADER),
  fig3: fixedHeader(FIG3_HEADER),
  fig4: fig4Header,
}

export function parseCsv(text: string): CsvTable {
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true })
  if (parsed.errors.length > 0) {
    throw new Error(`CSV parse failed: ${parsed.errors[0]!.message}`)
  }
  const [header, ...raw] = parsed.data
  if (!header || raw.length === 0) throw new Error('CSV needs a header and at least one data row')
  const rows = raw.map((cells, i) => cells.map((cell, j) => {
    const v = Number(cell)
    if (cell.trim() === '' || !Number.isFinite(v)) {
      throw new Error(`row ${i + 1}, column ${header[j] ?? j}: not a finite number: ${JSON.stringify(cell)}`)
    }
    return v
  }))
  const dataLines = text.split(/\r\n|\n/).filter(l => l.length > 0).slice(1)
  const checksum = createHash('sha256').update(dataLines.join('\n')).digest('hex')
  return { header, rows, checksum }
}

export function validateTable(figure: FigureId, table: CsvTable): CsvTable {
  const res = HEADER_SCHEMAS[figure].safeParse(table.header)
  if (!res.success) {
    throw new Error(`${figure}: ${res.error.issues[0]!.message}; got: ${table.header.join(',')}`)
  }
  for (const [i, row] of table.rows.entries()) {
    if (row.length !== table.header.length) {
      throw new Error(`${figure}: row ${i + 1} has ${row.length} cells, header has ${table.header.length}`)
    }
  }
  if (table.rows.length < 2) throw new Error(`${figure}: need at least 2 data rows to draw a curve`)
  return table
}

export function loadTable(figure: FigureId, text: string): CsvTable {
  return validateTable(figure, parseCsv(text))
}
