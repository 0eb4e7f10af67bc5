#!/usr/bin/env node
/**
 * render --figure fig1|fig3|fig4 --csv sweep.csv --out figure.svg
 *
 * Exits nonzero when the CSV does not match the schema for the figure.
 */

import fs from 'node:fs'
import yargs from 'yargs'
import { hideBin } from 'yargs/helpers'
import { renderFigure } from './figures.js'
import { FIGURE_IDS, figureIdSchema, loadTable } from './schema.js'

async function main(): Promise<number> {
  const argv = await yargs(hideBin(process.argv))
    .usage('render --figure <id> --csv <file> --out <file.svg>')
    .option('figure', { type: 'string', choices: FIGURE_IDS, demandOption: true })
    .option('csv', { type: 'string', demandOption: true })
    .option('out', { type: 'string', demandOption: true })
    .option('log-y', { type: 'boolean', default: false, describe: 'log value axis (fig1 only)' })
    .strict()
    .parse()

  const figure = figureIdSchema.parse(argv.figure)
  let text: string
  try {
    text = fs.readFileSync(argv.csv, 'utf8')
  } catch (e) {
    console.error(`cannot read ${argv.csv}: ${(e as Error).message}`)
    return 1
  }
  try {
    const table = loadTable(figure, text)
    const svg = renderFigure(figure, table, { logY: argv['log-y'] })
    fs.writeFileSync(argv.out, svg, 'utf8')
    console.log(`${argv.out}: ${figure}, ${table.rows.length} rows, sha256 ${table.checksum.slice(0, 12)}...`)
  } catch (e) {
    console.error((e as Error).message)
    return 1
  }
  return 0
}

main().then(code => { process.exitCode = code })
