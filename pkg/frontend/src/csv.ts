import { readFileSync } from 'fs'

export interface Curve {
  abscissa: number[]
  fEmp: number[]
  hRef: number[]
  diff: number[]
  stderr: number[]
  scale: number
}

const HEADER = 'abscissa,f_emp,h_ref,diff,stderr,scale'

export function parseCurveCsv(text: string): Curve {
  const lines = text.trim().split(/\r?\n/)
  if (lines[0].trim() !== HEADER) {
    throw new Error(`bad curve header: expected "${HEADER}", got "${lines[0]}"`)
  }
  const curve: Curve = { abscissa: [], fEmp: [], hRef: [], diff: [], stderr: [], scale: 1 }
  for (let i = 1; i < lines.length; i++) {
    if (!lines[i].trim()) continue
    const cells = lines[i].split(',').map(Number)
    if (cells.length !== 6 || cells.some(Number.isNaN)) {
      throw new Error(`bad curve row ${i}: "${lines[i]}"`)
    }
    curve.abscissa.push(cells[0])
    curve.fEmp.push(cells[1])
    curve.hRef.push(cells[2])
    curve.diff.push(cells[3])
    curve.stderr.push(cells[4])
    curve.scale = cells[5]
  }
  if (curve.abscissa.length === 0) throw new Error('empty curve file')
  return curve
}

export function loadCurve(path: string): Curve {
  return parseCurveCsv(readFileSync(path, 'utf8'))
}

export interface L1Summary {
  points: Record<string, [number, number][]>
  fits: Record<string, { slope: number; intercept: number }>
}

export function parseL1Summary(text: string): L1Summary {
  const data = JSON.parse(text)
  if (!data.points || !data.fits) {
    throw new Error('summary JSON needs "points" and "fits"')
  }
  for (const key of Object.keys(data.points)) {
    if (!(key in data.fits)) throw new Error(`summary has no fit for "${key}"`)
    for (const p of data.points[key]) {
      if (!Array.isArray(p) || p.length !== 2) {
        throw new Error(`bad point in series "${key}"`)
      }
    }
  }
  return data as L1Summary
}

export function loadL1Summary(path: string): L1Summary {
  return parseL1Summary(readFileSync(path, 'utf8'))
}
