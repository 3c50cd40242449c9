"""Restriction and trivial extension across subgroups, and the harness
that checks the equal-constants reduction on concrete instances.

A subgroup inherits the parent's Haar weight (the restricted measure), its
addition, and its characters: every character of the subgroup arises by
restricting a parent character, so the subgroup's dual is enumerated by
deduplicating restricted phase signatures.  That keeps all pairing phases
exact and literally shared between the two problems, which is what makes
the reduction equality exact in rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classes import SymmetricSet
from .groups import FiniteAbelianGroup, Subgroup
from .harmonic import GroupFunction
from .solver import ProblemSpec, Solution, solve


class SubgroupView:
    """A subgroup presented through the group interface used by the
    transform and the solver: indices 0..|H|-1 in parent-index order."""

    __slots__ = (
        "parent", "members", "weight", "_index_in_sub", "_char_turns", "_char_neg",
    )

    def __init__(self, subgroup: Subgroup):
        parent = subgroup.group
        members = tuple(subgroup.members)
        self.parent = parent
        self.members = members
        self.weight = Fraction(parent.weight)
        self._index_in_sub = {g: i for i, g in enumerate(members)}
        # Characters: deduplicated restrictions of the parent's characters,
        # canonically ordered by first appearance (ascending parent index).
        seen: dict[tuple, int] = {}
        turns: list[tuple] = []
        for chi in range(parent.size):
            signature = tuple(parent.pairing_turn(g, chi) for g in members)
            if signature not in seen:
                seen[signature] = len(turns)
                turns.append(signature)
        if len(turns) != len(members):
            raise ValueError("character restriction did not produce a full dual")
        self._char_turns = tuple(turns)
        neg = []
        for signature in turns:
            negated = tuple(t and 1 - t for t in signature)
            neg.append(seen[negated])
        self._char_neg = tuple(neg)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def dimension(self) -> int:
        return self.parent.dimension

    def add_index(self, i: int, j: int) -> int:
        return self._index_in_sub[self.parent.add_index(self.members[i], self.members[j])]

    def neg_index(self, i: int) -> int:
        return self._index_in_sub[self.parent.neg_index(self.members[i])]

    def pairing_turn(self, g_index: int, chi_index: int) -> Fraction:
        return self._char_turns[chi_index][g_index]

    def char_neg_index(self, k: int) -> int:
        return self._char_neg[k]

    def coords_of(self, i: int) -> tuple[int, ...]:
        return self.parent.coords_of(self.members[i])

    def label(self, i: int) -> str:
        return self.parent.label(self.members[i])

    def to_sub_index(self, parent_index: int) -> int:
        try:
            return self._index_in_sub[parent_index]
        except KeyError:
            raise ValueError(
                f"{self.parent.label(parent_index)} is not in the subgroup"
            ) from None

    def contains_parent_index(self, parent_index: int) -> bool:
        return parent_index in self._index_in_sub

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupView)
            and self.parent == other.parent
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.members))

    def __repr__(self) -> str:
        return f"SubgroupView(order={self.size} in {self.parent})"


@dataclass(frozen=True)
class SubgroupEmbedding:
    """Index maps between a subgroup view and its parent, plus the coset
    representatives that partition the parent."""

    parent: FiniteAbelianGroup
    view: SubgroupView
    coset_representatives: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        seen = set()
        reps = []
        member_set = set(self.view.members)
        for g in range(self.parent.size):
            if g in seen:
                continue
            reps.append(g)
            for m in member_set:
                seen.add(self.parent.add_index(g, m))
        object.__setattr__(self, "coset_representatives", tuple(reps))

    @staticmethod
    def of(subgroup: Subgroup) -> "SubgroupEmbedding":
        return SubgroupEmbedding(subgroup.group, SubgroupView(subgroup))


def trivial_extension(f: GroupFunction, embedding: SubgroupEmbedding) -> GroupFunction:
    """Extend by zero off the subgroup; preserves f(0), the integral, and
    positive definiteness (the extension's spectrum averages the subgroup
    spectrum over each restriction fibre)."""
    view = embedding.view
    if f.group != view:
        raise ValueError("function is not defined on the embedded subgroup")
    values = [0.0] * embedding.parent.size
    for i, g in enumerate(view.members):
        values[g] = float(f.values[i])
    return GroupFunction(embedding.parent, values)


def restrict(f: GroupFunction, embedding: SubgroupEmbedding) -> GroupFunction:
    """Restrict to the subgroup; preserves positive definiteness and f(0)."""
    if f.group != embedding.parent:
        raise ValueError("function is not defined on the parent group")
    view = embedding.view
    return GroupFunction(view, [float(f.values[g]) for g in view.members])


def restrict_set(omega: SymmetricSet, view: SubgroupView) -> SymmetricSet:
    """Intersect a symmetric parent set with the subgroup, in subgroup indices."""
    return SymmetricSet(
        view,
        frozenset(
            view.to_sub_index(i)
            for i in omega.indices
            if view.contains_parent_index(i)
        ),
    )


@dataclass(frozen=True)
class ReductionComparison:
    subgroup_order: int
    value_group: float
    value_subgroup: float
    difference: float
    value_group_exact: Fraction | None
    value_subgroup_exact: Fraction | None
    solution_group: Solution
    solution_subgroup: Solution

    @property
    def exact_equal(self) -> bool | None:
        if self.value_group_exact is None or self.value_subgroup_exact is None:
            return None
        return self.value_group_exact == self.value_subgroup_exact


@dataclass(frozen=True)
class ReductionReport:
    """Values on the group and on the subgroup generated by the plus set
    (minus set intersected), plus the variant generated by both sets."""

    spec: ProblemSpec
    plus_generated: ReductionComparison
    both_generated: ReductionComparison

    def lines(self) -> list[str]:
        out = []
        for name, comp in (
            ("H = <omega_plus>", self.plus_generated),
            ("H = <omega_plus u omega_minus>", self.both_generated),
        ):
            out.append(
                f"{name}: |H|={comp.subgroup_order} value_G={comp.value_group:.12g} "
                f"value_H={comp.value_subgroup:.12g} diff={comp.difference:.3g}"
            )
        return out


def _compare(
    spec: ProblemSpec,
    sol_g: Solution,
    generators: frozenset[int],
    intersect_minus: bool,
) -> ReductionComparison:
    group = spec.group
    subgroup = group.subgroup_generated(generators)
    view = SubgroupView(subgroup)
    omega_plus_h = restrict_set(spec.omega_plus, view)
    omega_minus_h = restrict_set(spec.omega_minus, view)
    if not intersect_minus and len(omega_minus_h) != len(spec.omega_minus):
        raise ValueError("subgroup does not contain the minus set")
    sub_mode = spec.mode
    if sub_mode == "delsarte" and not omega_minus_h.is_full:
        sub_mode = "general"  # minus set intersected below the full group
    if sub_mode == "turan" and omega_plus_h.indices != omega_minus_h.indices:
        sub_mode = "general"
    sol_h = solve(
        ProblemSpec(
            view, omega_plus_h, omega_minus_h,
            mode=sub_mode, arithmetic=spec.arithmetic, tolerance=spec.tolerance,
        )
    )
    return ReductionComparison(
        subgroup_order=view.size,
        value_group=sol_g.value,
        value_subgroup=sol_h.value,
        difference=sol_g.value - sol_h.value,
        value_group_exact=sol_g.value_exact,
        value_subgroup_exact=sol_h.value_exact,
        solution_group=sol_g,
        solution_subgroup=sol_h,
    )


def reduce_and_compare(spec: ProblemSpec) -> ReductionReport:
    """Solve on the group and on the generated subgroups, reporting both
    reduction identities."""
    if 0 not in spec.omega_plus:
        raise ValueError("reduction requires the identity in the plus set")
    sol_g = solve(spec)
    plus = _compare(spec, sol_g, spec.omega_plus.indices, intersect_minus=True)
    both = _compare(
        spec, sol_g,
        spec.omega_plus.indices | spec.omega_minus.indices,
        intersect_minus=False,
    )
    return ReductionReport(spec=spec, plus_generated=plus, both_generated=both)
