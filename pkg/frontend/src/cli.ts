// figures CLI:
//   node dist/cli.js --kind diff --in a.csv b.csv --labels "d=0.02" "d=0.01" --out fig.svg
//   node dist/cli.js --kind l1 --summary l1_summary.json --out fig.svg
// Exits nonzero with a message on schema mismatches.

import { writeFileSync } from 'fs'
import { basename } from 'path'
import { loadCurve, loadL1Summary } from './csv'
import { renderDiffCurves, renderL1VsDelta } from './figures'

interface Args {
  kind: string
  inputs: string[]
  labels: string[]
  summary: string
  out: string
  title: string
}

export function parseArgs(argv: string[]): Args {
  const args: Args = { kind: '', inputs: [], labels: [], summary: '', out: '', title: '' }
  let key = ''
  for (const tok of argv) {
    if (tok.startsWith('--')) {
      key = tok.slice(2)
      continue
    }
    switch (key) {
      case 'kind':
        args.kind = tok
        break
      case 'in':
        args.inputs.push(tok)
        break
      case 'labels':
        args.labels.push(tok)
        break
      case 'summary':
        args.summary = tok
        break
      case 'out':
        args.out = tok
        break
      case 'title':
        args.title = tok
        break
      default:
        throw new Error(`unexpected argument "${tok}"`)
    }
  }
  if (args.kind !== 'diff' && args.kind !== 'l1') {
    throw new Error('--kind must be "diff" or "l1"')
  }
  if (!args.out) throw new Error('--out is required')
  if (args.kind === 'diff' && args.inputs.length === 0) {
    throw new Error('--kind diff needs at least one --in CSV')
  }
  if (args.kind === 'l1' && !args.summary) {
    throw new Error('--kind l1 needs --summary JSON')
  }
  return args
}

export function main(argv: string[]): number {
  let args: Args
  try {
    args = parseArgs(argv)
  } catch (err) {
    console.error(`argument error: ${(err as Error).message}`)
    return 2
  }
  try {
    let svg: string
    if (args.kind === 'diff') {
      const curves = args.inputs.map(loadCurve)
      const labels = args.labels.length === args.inputs.length
        ? args.labels
        : args.inputs.map(p => basename(p).replace(/\.csv$/, ''))
      svg = renderDiffCurves(curves, labels, args.title || 'rescaled CDF differences')
    } else {
      svg = renderL1VsDelta(loadL1Summary(args.summary), args.title || 'L1 norms vs delta')
    }
    writeFileSync(args.out, svg)
  } catch (err) {
    console.error(`figure error: ${(err as Error).message}`)
    return 1
  }
  return 0
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)))
}
