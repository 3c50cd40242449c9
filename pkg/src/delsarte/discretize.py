"""Bridge from real-line extremal problems to cyclic-group problems.

A torus of rational circumference L is sampled on an N-point grid anchored
at 0, so sets containing a neighbourhood of 0 always discretize to sets
containing 0.  Grid membership is decided exactly on rational points,
honoring endpoint openness, which is what distinguishes the closed, open
and punctured variants of the same interval.

The grid problem constrains the spectrum on Z_N only; it has no continuity
constraint.  For sets that are not boundary-coherent this models the
integral relaxation of positive definiteness rather than the real-line
problem, and every such discretization carries a warning flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import FiniteAbelianGroup
from .realsets import RealSet1D, closure, is_boundary_coherent, is_symmetric

RELAXATION_WARNING = (
    "set is not boundary-coherent: the grid problem models the integral "
    "relaxation, not the real-line constant"
)


@dataclass(frozen=True)
class TorusSpec:
    """Circle of circumference L sampled on N grid points of step L/N."""

    circumference: Fraction
    grid: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "circumference", Fraction(self.circumference))
        if self.circumference <= 0:
            raise ValueError(f"circumference must be positive, got {self.circumference}")
        if self.grid < 2:
            raise ValueError(f"grid count must be at least 2, got {self.grid}")

    @property
    def step(self) -> Fraction:
        return self.circumference / self.grid


@dataclass(frozen=True)
class DiscreteProblemSet:
    """Symmetric index set on Z_N with Haar weight equal to the grid step."""

    torus: TorusSpec
    group: FiniteAbelianGroup
    signed_members: tuple[int, ...]
    boundary_coherent: bool
    warning: str | None

    @property
    def residues(self) -> frozenset[int]:
        n = self.torus.grid
        return frozenset(j % n for j in self.signed_members)

    def __len__(self) -> int:
        return len(self.signed_members)


def default_circumference(s: RealSet1D) -> Fraction:
    """4 * sup|x|: keeps the set in half the torus so wraparound cannot
    manufacture spurious feasible functions."""
    if s.is_empty:
        raise ValueError("no default circumference for the empty set")
    return 4 * closure(s).sup_abs()


def sample_set(s: RealSet1D, torus: TorusSpec) -> DiscreteProblemSet:
    """Indices j in (-N/2, N/2] with j * step in S, decided exactly."""
    if not is_symmetric(s):
        raise ValueError("discretization requires a symmetric set")
    half = torus.circumference / 2
    if not s.is_empty and closure(s).sup_abs() >= half:
        raise ValueError(
            f"set reaches {closure(s).sup_abs()} but the torus window is "
            f"(-{half}, {half}): circumference too small (wraparound)"
        )
    n = torus.grid
    h = torus.step
    members = tuple(
        j for j in range(-((n - 1) // 2), n // 2 + 1) if s.contains(j * h)
    )
    verdict = is_boundary_coherent(s)
    return DiscreteProblemSet(
        torus=torus,
        group=FiniteAbelianGroup((n,), h),
        signed_members=members,
        boundary_coherent=verdict.ok,
        warning=None if verdict.ok else RELAXATION_WARNING,
    )


def sweep_plan(
    s: RealSet1D, circumference: Fraction | int, grids: list[int]
) -> list[DiscreteProblemSet]:
    """One discretization per grid count, all on the same circumference."""
    circumference = Fraction(circumference)
    return [sample_set(s, TorusSpec(circumference, n)) for n in grids]
