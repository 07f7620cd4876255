import { Curve, L1Summary } from './csv'
import { Frame, PALETTE, SvgPlot, niceTicks } from './svg'

const FRAME: Frame = {
  width: 720,
  height: 480,
  margin: { left: 70, right: 20, top: 28, bottom: 44 },
  xMin: 0,
  xMax: 1,
  yMin: 0,
  yMax: 1,
}

/** Overlay of rescaled CDF-difference curves with +-2 stderr bars. */
export function renderDiffCurves(curves: Curve[], labels: string[], title: string): string {
  if (curves.length === 0) throw new Error('no curves to draw')
  const xMin = Math.min(...curves.map(c => c.abscissa[0]))
  const xMax = Math.max(...curves.map(c => c.abscissa[c.abscissa.length - 1]))
  let lo = Infinity
  let hi = -Infinity
  for (const c of curves) {
    for (let i = 0; i < c.diff.length; i++) {
      lo = Math.min(lo, c.diff[i] - 2 * c.stderr[i])
      hi = Math.max(hi, c.diff[i] + 2 * c.stderr[i])
    }
  }
  if (lo === hi) {
    lo -= 1e-6
    hi += 1e-6
  }
  const pad = 0.08 * (hi - lo)
  const frame = { ...FRAME, xMin, xMax, yMin: lo - pad, yMax: hi + pad }
  const plot = new SvgPlot(frame)
  plot.axes('abscissa', 'scaled F - H', niceTicks(xMin, xMax), niceTicks(lo, hi))
  if (lo < 0 && hi > 0) plot.line(xMin, 0, xMax, 0, '#999', 0.8, '4 3')
  curves.forEach((c, ci) => {
    const color = PALETTE[ci % PALETTE.length]
    plot.polyline(c.abscissa, c.diff, color)
    const every = Math.max(1, Math.floor(c.abscissa.length / 24))
    for (let i = every >> 1; i < c.abscissa.length; i += every) {
      plot.errorBar(c.abscissa[i], c.diff[i], 2 * c.stderr[i], color)
    }
  })
  plot.legend(labels.map((label, i) => ({ label, color: PALETTE[i % PALETTE.length] })))
  return plot.render(title)
}

/** L1-vs-delta scatter with the least-squares lines from the summary. */
export function renderL1VsDelta(summary: L1Summary, title: string): string {
  const series = Object.keys(summary.points).sort()
  const xs: number[] = []
  const ys: number[] = []
  for (const k of series) {
    for (const [d, v] of summary.points[k]) {
      xs.push(d)
      ys.push(v)
    }
  }
  const xMax = Math.max(...xs) * 1.08
  const yMax = Math.max(...ys) * 1.15
  const frame = { ...FRAME, xMin: 0, xMax, yMin: 0, yMax }
  const plot = new SvgPlot(frame)
  plot.axes('lattice spacing delta', 'L1 norm of CDF difference',
    niceTicks(0, xMax), niceTicks(0, yMax))
  series.forEach((k, ci) => {
    const color = PALETTE[ci % PALETTE.length]
    const fit = summary.fits[k]
    const y0 = fit.intercept
    const y1 = fit.intercept + fit.slope * xMax
    plot.line(0, y0, xMax, y1, color, 1.2)
    for (const [d, v] of summary.points[k]) plot.marker(d, v, color)
  })
  plot.legend(series.map((label, i) => ({ label, color: PALETTE[i % PALETTE.length] })))
  return plot.render(title)
}
