"""
From a lifting to a painted tropical complex
============================================

A five-point planar configuration, one lifting, and a sweep of the level
parameter: prints the induced subdivision, the dual complex, and how the
three-coloring changes as the level moves.
"""

from fractions import Fraction as F

from tropaint import PaintSpec, build_configuration, dual_complex, paint
from tropaint.regular_subdivision import Lifting, induce_subdivision

# a quadrilateral with one interior point, heights chosen so the induced
# subdivision is a four-triangle star around the interior point
config = build_configuration([(0, 0), (1, 0), (0, 1), (-1, 0), (-1, -1)])
eta = Lifting.of(config, [-1, 1, 0, 2, 0])

s = induce_subdivision(config, eta)
print("maximal cells of the induced subdivision:")
for mc in sorted(s.maximal, key=lambda mc: sorted(mc.marks)):
    print("  ", [config.labels[i] for i in sorted(mc.marks)])

# the dual complex lives in the dual plane; cell dimensions are complementary
p, _ = dual_complex(config, eta)
print("\ndual complex cells by dimension:")
for d in (0, 1, 2):
    cells = p.cells_of_dim(d)
    print(f"  dimension {d}: {len(cells)} cells")

# painting compares the tropical polynomial against one affine report level;
# alpha is the distinguished evaluation point, c shifts the comparison
alpha = (F(1, 3), F(1, 3))
for c in (F(-2), F(-1), F(0), F(1)):
    spec = PaintSpec.of(config, [-1, 1, 0, 2, 0], c, alpha)
    painted = paint(p, spec)
    tally = {"red": 0, "purple": 0, "blue": 0}
    for marking in p.cells:
        tally[painted.kappa[marking]] += 1
    print(f"level {c}: {tally['red']} red, {tally['purple']} purple, {tally['blue']} blue")
