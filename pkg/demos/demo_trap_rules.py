"""Walk the trap-detection rules through the classic configurations.

Builds the C-shaped square-lattice walk whose tip sees one occupied
neighbour pair, one trapped site and one allowed site, then the hexagonal
pocket that seals a fork site, and finally cross-checks the winding-angle
verdicts against the flood-fill oracle on a batch of random decisions.
"""

import numpy as np

from sksaw import _kernels as K
from sksaw.lattice import LatticeKind
from sksaw.walker import WalkState, allowable_neighbors, is_trapping

SQ, HEX = LatticeKind.SQUARE, LatticeKind.HEXAGONAL


def build(kind, sites):
    w = WalkState(kind, origin=sites[0])
    for s in sites[1:]:
        w.append(s)
    return w


print("=== square lattice: the near-loop configuration ===")
w = build(SQ, [(1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1),
               (0, -1)])
print("walk:", w.path)
print("tip:", w.tip, " total turning:", w.turn_total_units(), "* pi/12")
for cand in [(0, 0), (0, -2)]:
    v = is_trapping(w, cand)
    print(f"  neighbour {cand}: {'TRAPPING' if v.trapping else 'allowed'}")
print("allowable set:", allowable_neighbors(w), "(forced move)")

print()
print("=== hexagonal lattice: a corridor seals the left fork ===")
w = build(HEX, [(-1, -1), (-2, -1), (-3, -1), (-3, 0), (-2, 0), (-2, 1),
                (-1, 1), (0, 1), (0, 0)])
print("walk:", w.path)
for cand in [(-1, 0), (1, 0)]:
    v = is_trapping(w, cand)
    print(f"  fork {cand}: {'TRAPPING' if v.trapping else 'allowed'}")

print()
print("=== flood-fill oracle agreement on random long-walk decisions ===")
for kind, name in ((0, "square"), (1, "hexagonal")):
    cnt = np.zeros(4, dtype=np.int64)
    K.trap_agreement_run(kind, 0.02, 40, 2024, cnt)
    print(f"{name:10s}: {cnt[0]:7d} decisions, {cnt[1]} disagreements")
