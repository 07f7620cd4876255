import { describe, expect, it } from 'vitest'
import { parseCurveCsv, parseL1Summary } from '../src/csv'

const GOOD = `abscissa,f_emp,h_ref,diff,stderr,scale
0.1,0.25,0.24,0.01,0.002,1
0.2,0.5,0.49,0.01,0.002,1
0.3,0.75,0.76,-0.01,0.002,1
`

describe('parseCurveCsv', () => {
  it('parses the shared schema', () => {
    const c = parseCurveCsv(GOOD)
    expect(c.abscissa).toEqual([0.1, 0.2, 0.3])
    expect(c.diff[2]).toBeCloseTo(-0.01)
    expect(c.scale).toBe(1)
  })

  it('rejects a wrong header', () => {
    expect(() => parseCurveCsv('x,y\n1,2\n')).toThrow(/bad curve header/)
  })

  it('rejects malformed rows', () => {
    expect(() =>
      parseCurveCsv('abscissa,f_emp,h_ref,diff,stderr,scale\n1,2,3\n'),
    ).toThrow(/bad curve row/)
  })

  it('rejects empty files', () => {
    expect(() =>
      parseCurveCsv('abscissa,f_emp,h_ref,diff,stderr,scale\n'),
    ).toThrow(/empty curve/)
  })
})

describe('parseL1Summary', () => {
  it('parses points and fits', () => {
    const s = parseL1Summary(
      JSON.stringify({
        points: { d1: [[0.01, 2], [0.02, 4]] },
        fits: { d1: { slope: 200, intercept: 0 } },
      }),
    )
    expect(s.points.d1.length).toBe(2)
    expect(s.fits.d1.slope).toBe(200)
  })

  it('requires a fit per series', () => {
    expect(() =>
      parseL1Summary(JSON.stringify({ points: { a: [[1, 2]] }, fits: {} })),
    ).toThrow(/no fit/)
  })
})
