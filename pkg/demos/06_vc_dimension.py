"""
VC dimension of simple line families
====================================

Traces on the Boolean cube of halfspaces, polynomial thresholds and
linear systems over F_2, with a Sauer-Shelah check on random subfamilies.
"""

import random

from clique_measure.vcdim import reference_line_families, sauer_shelah_check, vc_dimension

for kind, dim, kw in [
    ("halfspace", 2, dict(coeff_bound=4)),
    ("halfspace", 3, dict(coeff_bound=2)),
    ("ptf", 2, dict(coeff_bound=2, degree=2)),
    ("f2_affine", 3, {}),
    ("f2_affine", 3, dict(affine=True)),
]:
    fam = reference_line_families(kind, dim, **kw)
    print(f"{kind:9s} dim={dim} {kw}: {len(fam)} sets, VC {vc_dimension(fam)}")

rng = random.Random(0)
fam = reference_line_families("halfspace", 3, 2)
worst = 0.0
for _ in range(200):
    sub = fam.subfamily(m for m in fam.members if rng.random() < 0.3)
    size, bound, ok = sauer_shelah_check(sub)
    assert ok
    worst = max(worst, size / bound)
print("largest size / Sauer-Shelah bound over 200 subfamilies: %.3f" % worst)
