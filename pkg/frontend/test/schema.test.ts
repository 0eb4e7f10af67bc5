import fs from 'node:fs'
import path from 'node:path'
import { fileURLToPath } from 'node:url'
import { describe, expect, it } from 'vitest'
import { loadTable, parseCsv, validateTable } from '../src/schema.js'

const DATA = fileURLToPath(new URL('../data', import.meta.url))

function read(name: string): string {
  return fs.readFileSync(path.join(DATA, name), 'utf8')
}

describe('csv parsing', () => {
  it('loads every committed reference csv', () => {
    const cases: [string, 'fig1' | 'fig3' | 'fig4'][] = [
      ['fig1.csv', 'fig1'],
      ['fig3_0.25.csv', 'fig3'],
      ['fig3_0.5.csv', 'fig3'],
      ['fig3_1.csv', 'fig3'],
      ['fig4.csv', 'fig4'],
    ]
    for (const [name, figure] of cases) {
      const table = loadTable(figure, read(name))
      expect(table.rows.length).toBeGreaterThan(10)
      expect(table.checksum).toMatch(/^[0-9a-f]{64}$/)
      for (const row of table.rows) {
        expect(row).toHaveLength(table.header.length)
      }
    }
  })

  it('rejects the wrong figure id for a csv', () => {
    expect(() => loadTable('fig1', read('fig3_0.5.csv'))).toThrow(/header/)
    expect(() => loadTable('fig3', read('fig4.csv'))).toThrow(/header/)
    expect(() => loadTable('fig4', read('fig1.csv'))).toThrow(/header/)
  })

  it('rejects a tampered header column', () => {
    const text = read('fig1.csv').replace('OmegaT', 'Omega_T')
    expect(() => loadTable('fig1', text)).toThrow(/header/)
  })

  it('rejects non-numeric cells', () => {
    const text = 'OmegaT,negativity_over_lambda2,half_delta_over_lambda2\r\n0,oops,2\r\n1,2,3\r\n'
    expect(() => loadTable('fig1', text)).toThrow(/not a finite number/)
  })

  it('rejects a single-row table', () => {
    const text = 'OmegaT,negativity_over_lambda2,half_delta_over_lambda2\r\n0,1,2\r\n'
    expect(() => loadTable('fig1', text)).toThrow(/at least 2/)
  })

  it('requires matching coupling tags in the distance csv', () => {
    const bad = 'T_over_L,hs_sq_0.5,hs_limit_1\r\n0,1,2\r\n1,2,3\r\n'
    expect(() => loadTable('fig4', bad)).toThrow(/matching tags/)
    const good = 'T_over_L,hs_sq_0.5,hs_limit_0.5\r\n0,1,2\r\n1,2,3\r\n'
    expect(loadTable('fig4', good).rows).toHaveLength(2)
  })
})

describe('row checksum', () => {
  it('ignores the header and line-ending style', () => {
    const crlf = 'a,b,c\r\n1,2,3\r\n4,5,6\r\n'
    const lf = 'A,B,C\n1,2,3\n4,5,6\n'
    expect(parseCsv(crlf).checksum).toBe(parseCsv(lf).checksum)
  })

  it('changes when any data row changes', () => {
    const base = parseCsv('a,b\r\n1,2\r\n3,4\r\n').checksum
    expect(parseCsv('a,b\r\n1,2\r\n3,5\r\n').checksum).not.toBe(base)
    expect(parseCsv('a,b\r\n1,2\r\n').checksum).not.toBe(base)
  })

  it('is stable for a committed file across loads', () => {
    const a = parseCsv(read('fig1.csv')).checksum
    const b = parseCsv(read('fig1.csv')).checksum
    expect(a).toBe(b)
  })
})

describe('structural validation', () => {
  it('flags ragged rows through validateTable', () => {
    const table = { header: ['a', 'b'], rows: [[1, 2], [3]], checksum: '0'.repeat(64) }
    expect(() => validateTable('fig4', { ...table, header: ['T_over_L', 'hs_sq_1', 'hs_limit_1'] }))
      .toThrow(/cells/)
  })
})
