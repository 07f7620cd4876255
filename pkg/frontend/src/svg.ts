// Minimal deterministic SVG plotting: axes, ticks, polylines, error bars,
// scatter markers.  No timestamps or randomness, so identical inputs give
// byte-identical images.

export interface Frame {
  width: number
  height: number
  margin: { left: number; right: number; top: number; bottom: number }
  xMin: number
  xMax: number
  yMin: number
  yMax: number
}

export const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b']

const fmt = (v: number) => {
  const s = v.toPrecision(6)
  return String(Number(s))
}

export class SvgPlot {
  private parts: string[] = []
  constructor(readonly frame: Frame) {}

  sx(x: number): number {
    const { margin, width, xMin, xMax } = this.frame
    return margin.left + ((x - xMin) / (xMax - xMin)) * (width - margin.left - margin.right)
  }

  sy(y: number): number {
    const { margin, height, yMin, yMax } = this.frame
    return height - margin.bottom - ((y - yMin) / (yMax - yMin)) * (height - margin.top - margin.bottom)
  }

  raw(s: string): void {
    this.parts.push(s)
  }

  polyline(xs: number[], ys: number[], color: string, width = 1.2): void {
    const pts = xs.map((x, i) => `${fmt(this.sx(x))},${fmt(this.sy(ys[i]))}`).join(' ')
    this.parts.push(`<polyline fill="none" stroke="${color}" stroke-width="${width}" points="${pts}"/>`)
  }

  line(x1: number, y1: number, x2: number, y2: number, color: string, width = 1, dash = ''): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : ''
    this.parts.push(
      `<line x1="${fmt(this.sx(x1))}" y1="${fmt(this.sy(y1))}" x2="${fmt(this.sx(x2))}" y2="${fmt(this.sy(y2))}" stroke="${color}" stroke-width="${width}"${d}/>`)
  }

  errorBar(x: number, y: number, half: number, color: string): void {
    const px = fmt(this.sx(x))
    const yl = fmt(this.sy(y - half))
    const yh = fmt(this.sy(y + half))
    this.parts.push(`<line x1="${px}" y1="${yl}" x2="${px}" y2="${yh}" stroke="${color}" stroke-width="0.8"/>`)
  }

  marker(x: number, y: number, color: string, r = 3): void {
    this.parts.push(
      `<circle class="pt" cx="${fmt(this.sx(x))}" cy="${fmt(this.sy(y))}" r="${r}" fill="${color}"/>`)
  }

  text(x: number, y: number, s: string, anchor = 'middle', size = 11, color = '#000'): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-family="Helvetica,Arial,sans-serif" font-size="${size}" fill="${color}" text-anchor="${anchor}">${escapeXml(s)}</text>`)
  }

  axes(xLabel: string, yLabel: string, xTicks: number[], yTicks: number[]): void {
    const f = this.frame
    const x0 = f.margin.left
    const x1 = f.width - f.margin.right
    const y0 = f.height - f.margin.bottom
    const y1 = f.margin.top
    this.parts.push(`<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#333" stroke-width="1"/>`)
    for (const t of xTicks) {
      const px = this.sx(t)
      this.parts.push(`<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 4}" stroke="#333"/>`)
      this.text(px, y0 + 16, fmt(t))
    }
    for (const t of yTicks) {
      const py = this.sy(t)
      this.parts.push(`<line x1="${x0 - 4}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="#333"/>`)
      this.text(x0 - 8, py + 3.5, fmt(t), 'end', 10)
    }
    this.text((x0 + x1) / 2, f.height - 6, xLabel)
    this.parts.push(
      `<text x="14" y="${(y0 + y1) / 2}" font-family="Helvetica,Arial,sans-serif" font-size="11" text-anchor="middle" transform="rotate(-90 14 ${(y0 + y1) / 2})">${escapeXml(yLabel)}</text>`)
  }

  legend(entries: { label: string; color: string }[]): void {
    const f = this.frame
    let y = f.margin.top + 14
    const x = f.width - f.margin.right - 150
    for (const e of entries) {
      this.parts.push(`<line x1="${x}" y1="${y - 4}" x2="${x + 22}" y2="${y - 4}" stroke="${e.color}" stroke-width="2"/>`)
      this.text(x + 28, y, e.label, 'start', 10)
      y += 15
    }
  }

  render(title: string): string {
    const f = this.frame
    const head =
      `<svg xmlns="http://www.w3.org/2000/svg" width="${f.width}" height="${f.height}" viewBox="0 0 ${f.width} ${f.height}">` +
      `<rect width="${f.width}" height="${f.height}" fill="#ffffff"/>`
    const titleEl = `<text x="${f.width / 2}" y="16" font-family="Helvetica,Arial,sans-serif" font-size="13" text-anchor="middle">${escapeXml(title)}</text>`
    return head + titleEl + this.parts.join('') + '</svg>'
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;')
}

export function niceTicks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) return [lo]
  const span = hi - lo
  const step0 = span / n
  const mag = Math.pow(10, Math.floor(Math.log10(step0)))
  let step = mag
  for (const m of [1, 2, 2.5, 5, 10]) {
    if (m * mag >= step0) {
      step = m * mag
      break
    }
  }
  const first = Math.ceil(lo / step) * step
  const out: number[] = []
  for (let v = first; v <= hi + 1e-12 * span; v += step) out.push(Number(v.toPrecision(12)))
  return out
}
