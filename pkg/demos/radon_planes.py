"""Radon planes: symmetry checks and planes glued from a seed norm and its dual.

Run: python3 demos/radon_planes.py   (boundary curves land in demos/out/ as CSV)
"""

import re
from pathlib import Path

from bjortho import (
    AbsoluteRadon,
    Lp,
    check_gamma0_hilbert_conditions_real,
    day_construction,
    hexagonal,
    linf,
    verify_radon_symmetry,
)

OUT = Path(__file__).resolve().parent / "out"


def main():
    OUT.mkdir(exist_ok=True)
    for spec in (AbsoluteRadon(), hexagonal(), Lp(4, 2)):
        r = verify_radon_symmetry(spec, 500, seed=0)
        print(f"{spec.label:<14} symmetric={r['symmetric']!s:<5} max gap={r['max_asymmetry']:.2e}"
              f"  counterexample={r['counterexample']}")
    for seed in (linf(2), Lp(4, 2), AbsoluteRadon()):
        curve = day_construction(seed)
        r = verify_radon_symmetry(curve.spec, 500, seed=0)
        path = OUT / f"day_{re.sub(r'[^0-9a-z]+', '_', seed.label.lower()).strip('_')}.csv"
        curve.to_csv(path, 720)
        print(f"Day({seed.label}): symmetric={r['symmetric']} max gap={r['max_asymmetry']:.2e} -> {path.name}")
    for spec in (AbsoluteRadon(), hexagonal()):
        h = check_gamma0_hilbert_conditions_real(spec)
        print(f"{spec.label}: flat segments with smooth endpoints -> {h['verdict']}")


if __name__ == "__main__":
    main()
