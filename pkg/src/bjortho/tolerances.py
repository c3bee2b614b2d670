"""Numeric tolerance ladder. Exact (polyhedral) computations use none of these."""

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    ortho: float = 1e-8          # margin on the [D-, D+] interval endpoints
    functional: float = 1e-9     # f(x) = ||x|| identities
    fd_coarse: float = 1e-6      # finite-difference step, coarse
    fd_fine: float = 1e-8        # finite-difference step, reported value
    fd_flag: float = 1e-4        # disagreement between the two steps that is flagged
    fd_margin: float = 1e-6      # orthogonality margin when derivatives come from differences
    fd_smooth_gap: float = 1e-6  # D+ - D- below this counts as a smooth point (difference route)
    seam: float = 1e-9           # distance to a nonsmooth seam treated as on the seam
    merge_angle: float = 1e-7    # sampled directions closer than this are one projective vertex
    descriptor_angle: float = 1e-8  # kernels closer than this are the same neighborhood
    flat_collinear: float = 1e-9    # collinearity threshold for flat boundary detection
    flat_midpoint: float = 1e-11    # midpoint norm check confirming a flat segment
    radon: float = 1e-6          # asymmetry allowed in Radon symmetry checks
    arg: float = 1e-9            # angle comparison for complex arguments

    def with_overrides(self, overrides):
        names = {f.name for f in fields(self)}
        clean = {}
        for key, value in overrides.items():
            if key not in names:
                raise KeyError(f"unknown tolerance {key!r}; known: {sorted(names)}")
            clean[key] = float(value)
        return replace(self, **clean)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT = Tolerances()
