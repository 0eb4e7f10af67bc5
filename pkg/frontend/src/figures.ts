/**
 * Pure SVG assembly from validated CSV tables.
 *
 * No physics here: every number drawn comes straight out of the table.
 * The data-row checksum and figure id are embedded in an svg <metadata>
 * element so the provenance of a rendered file is checkable later.
 */

import { scaleLinear, scaleLog } from 'd3-scale'
import { line } from 'd3-shape'
import type { CsvTable, FigureId } from './schema.js'

const WIDTH = 720
const HEIGHT = 480
const MARGIN = { top: 28, right: 24, bottom: 52, left: 72 }
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom

const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b']

export interface RenderOptions {
  /** fig1 only: draw the value axis on a log scale, dropping y <= 0. */
  logY?: boolean
}

interface Series {
  name: string
  points: [number, number][]
  color: string
  dashed: boolean
}

type Scale = (v: number) => number
interface ScaleWithTicks extends Scale {
  ticks(n?: number): number[]
  tickFormat(n?: number, spec?: string): (v: number) => string
}

function fmt(v: number): string {
  // enough digits to be faithful, no noise for round tick values
  return Number(v.toPrecision(6)).toString()
}

function esc(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;')
}

// text nodes keep quotes readable; only markup characters need entities
function escText(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;')
}

function axes(xs: ScaleWithTicks, ys: ScaleWithTicks, xLabel: string, yLabel: string, logY: boolean): string {
  const parts: string[] = []
  parts.push(`<g class="axes" stroke="#333" fill="none">`)
  parts.push(`<line x1="${MARGIN.left}" y1="${MARGIN.top + PLOT_H}" x2="${MARGIN.left + PLOT_W}" y2="${MARGIN.top + PLOT_H}"/>`)
  parts.push(`<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + PLOT_H}"/>`)
  parts.push(`</g>`)
  parts.push(`<g class="ticks" font-family="sans-serif" font-size="11" fill="#333">`)
  for (const t of xs.ticks(8)) {
    const x = xs(t)
    parts.push(`<line x1="${x}" y1="${MARGIN.top + PLOT_H}" x2="${x}" y2="${MARGIN.top + PLOT_H + 5}" stroke="#333"/>`)
    parts.push(`<text x="${x}" y="${MARGIN.top + PLOT_H + 18}" text-anchor="middle">${fmt(t)}</text>`)
  }
  const yTicks = logY ? ys.ticks() : ys.ticks(7)
  const yFmt = logY ? ys.tickFormat(7, '.0e') : fmt
  for (const t of yTicks) {
    const label = yFmt(t)
    if (label === '') continue
    const y = ys(t)
    parts.push(`<line x1="${MARGIN.left - 5}" y1="${y}" x2="${MARGIN.left}" y2="${y}" stroke="#333"/>`)
    parts.push(`<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end">${esc(label)}</text>`)
  }
  parts.push(`</g>`)
  parts.push(`<text class="axis-label" x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-family="sans-serif" font-size="13" fill="#111">${esc(xLabel)}</text>`)
  parts.push(`<text class="axis-label" x="18" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-family="sans-serif" font-size="13" fill="#111" transform="rotate(-90 18 ${MARGIN.top + PLOT_H / 2})">${esc(yLabel)}</text>`)
  return parts.join('\n')
}

function legend(series: Series[]): string {
  const parts: string[] = [`<g class="legend" font-family="sans-serif" font-size="11" fill="#111">`]
  series.forEach((s, i) => {
    const y = MARGIN.top + 10 + 16 * i
    const x = MARGIN.left + PLOT_W - 170
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : ''
    parts.push(`<line x1="${x}" y1="${y}" x2="${x + 26}" y2="${y}" stroke="${s.color}" stroke-width="2"${dash}/>`)
    parts.push(`<text x="${x + 32}" y="${y + 4}">${esc(s.name)}</text>`)
  })
  parts.push(`</g>`)
  return parts.join('\n')
}

function drawSeries(series: Series[], xs: Scale, ys: Scale, logY: boolean): string {
  const gen = line<[number, number]>()
    .x(d => xs(d[0]))
    .y(d => ys(d[1]))
    .defined(d => Number.isFinite(xs(d[0])) && Number.isFinite(ys(d[1])) && (!logY || d[1] > 0))
  const parts: string[] = []
  for (const s of series) {
    const d = gen(s.points)
    if (!d) continue
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : ''
    const cls = s.dashed ? 'curve dashed' : 'curve solid'
    parts.push(`<path class="${cls}" d="${d}" fill="none" stroke="${s.color}" stroke-width="1.8"${dash}/>`)
  }
  return parts.join('\n')
}

function svgDocument(figure: FigureId, table: CsvTable, body: string, title: string): string {
  const meta = { figure, rows: table.rows.length, sha256: table.checksum }
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<metadata id="source">${escText(JSON.stringify(meta))}</metadata>`,
    `<title>${esc(title)}</title>`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
    body,
    `</svg>`,
    ``,
  ].join('\n')
}

function extent(values: number[]): [number, number] {
  let lo = Infinity
  let hi = -Infinity
  for (const v of values) {
    if (v < lo) lo = v
    if (v > hi) hi = v
  }
  if (!(hi > lo)) hi = lo + 1
  return [lo, hi]
}

function column(table: CsvTable, j: number): number[] {
  return table.rows.map(r => r[j]!)
}

function seriesFromColumns(
  table: CsvTable, xCol: number, spec: { col: number, name: string, color: string, dashed: boolean }[],
): Series[] {
  const x = column(table, xCol)
  return spec.map(s => ({
    name: s.name,
    color: s.color,
    dashed: s.dashed,
    points: column(table, s.col).map((v, i) => [x[i]!, v] as [number, number]),
  }))
}

function renderFig1(table: CsvTable, opts: RenderOptions): string {
  const logY = opts.logY ?? false
  const series = seriesFromColumns(table, 0, [
    { col: 1, name: table.header[1]!, color: PALETTE[0]!, dashed: false },
    { col: 2, name: table.header[2]!, color: PALETTE[1]!, dashed: false },
  ])
  const ally = series.flatMap(s => s.points.map(p => p[1])).filter(v => !logY || v > 0)
  if (ally.length === 0) throw new Error('fig1: no positive values to draw on a log scale')
  const xs = scaleLinear().domain(extent(column(table, 0))).range([MARGIN.left, MARGIN.left + PLOT_W]) as unknown as ScaleWithTicks
  const yBase = logY
    ? scaleLog().domain(extent(ally))
    : scaleLinear().domain([0, extent(ally)[1]]).nice()
  const ys = yBase.range([MARGIN.top + PLOT_H, MARGIN.top]) as unknown as ScaleWithTicks
  const body = [
    axes(xs, ys, table.header[0]!, 'value / lambda^2', logY),
    drawSeries(series, xs, ys, logY),
    legend(series),
  ].join('\n')
  return svgDocument('fig1', table, body, 'negativity and signalling vs gap')
}

function renderFig3(table: CsvTable): string {
  const spec = []
  for (let i = 0; i < 4; i++) {
    spec.push({ col: 1 + i, name: table.header[1 + i]!, color: PALETTE[i]!, dashed: false })
  }
  for (let i = 0; i < 4; i++) {
    spec.push({ col: 5 + i, name: table.header[5 + i]!, color: PALETTE[i]!, dashed: true })
  }
  const series = seriesFromColumns(table, 0, spec)
  const xs = scaleLinear().domain(extent(column(table, 0))).range([MARGIN.left, MARGIN.left + PLOT_W]) as unknown as ScaleWithTicks
  const ally = series.flatMap(s => s.points.map(p => p[1]))
  const ys = scaleLinear().domain(extent(ally)).nice().range([MARGIN.top + PLOT_H, MARGIN.top]) as unknown as ScaleWithTicks
  const body = [
    axes(xs, ys, table.header[0]!, 'partial-transpose eigenvalues', false),
    drawSeries(series, xs, ys, false),
    legend(series),
  ].join('\n')
  return svgDocument('fig3', table, body, 'partial-transpose spectra vs duration')
}

function renderFig4(table: CsvTable): string {
  const k = (table.header.length - 1) / 2
  const spec = []
  for (let i = 0; i < k; i++) {
    spec.push({ col: 1 + i, name: table.header[1 + i]!, color: PALETTE[i % PALETTE.length]!, dashed: false })
  }
  const series = seriesFromColumns(table, 0, spec)
  const xs = scaleLinear().domain(extent(column(table, 0))).range([MARGIN.left, MARGIN.left + PLOT_W]) as unknown as ScaleWithTicks
  const limits = Array.from({ length: k }, (_, i) => table.rows[0]![1 + k + i]!)
  const ally = [...series.flatMap(s => s.points.map(p => p[1])), ...limits]
  const ys = scaleLinear().domain([0, extent(ally)[1]]).nice().range([MARGIN.top + PLOT_H, MARGIN.top]) as unknown as ScaleWithTicks
  const asymptotes = limits.map((v, i) =>
    `<line class="asymptote" x1="${MARGIN.left}" y1="${ys(v)}" x2="${MARGIN.left + PLOT_W}" y2="${ys(v)}" stroke="${PALETTE[i % PALETTE.length]}" stroke-width="1.2" stroke-dasharray="6 4"/>`,
  ).join('\n')
  const legendRows: Series[] = [
    ...series,
    ...limits.map((v, i) => ({
      name: table.header[1 + k + i]!,
      color: PALETTE[i % PALETTE.length]!,
      dashed: true,
      points: [] as [number, number][],
    })),
  ]
  const body = [
    axes(xs, ys, table.header[0]!, 'squared evolution distance', false),
    asymptotes,
    drawSeries(series, xs, ys, false),
    legend(legendRows),
  ].join('\n')
  return svgDocument('fig4', table, body, 'evolution distance vs duration')
}

export function renderFigure(figure: FigureId, table: CsvTable, opts: RenderOptions = {}): string {
  if (figure === 'fig1') return renderFig1(table, opts)
  if (figure === 'fig3') return renderFig3(table)
  return renderFig4(table)
}
