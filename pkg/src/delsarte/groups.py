"""Finite abelian groups as products of cyclic groups.

Elements and characters are indexed in mixed-radix order with the last
coordinate fastest, so a function on the group is a dense array of length
``|G|`` and index 0 is the identity.  Character phases are kept as exact
rational numbers of turns; complex values are materialized only at use
sites, which keeps symmetry and equality checks exact.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


def _fold_turn(t: Fraction) -> Fraction:
    """Reduce a phase to the canonical representative in [0, 1)."""
    return t - (t.numerator // t.denominator)


# cos(2*pi*t) is rational exactly when the reduced denominator of t is
# 1, 2, 3, 4 or 6 (Niven); the table is keyed by that denominator.
_RATIONAL_COS = {
    1: {0: Fraction(1)},
    2: {1: Fraction(-1)},
    3: {1: Fraction(-1, 2), 2: Fraction(-1, 2)},
    4: {1: Fraction(0), 3: Fraction(0)},
    6: {1: Fraction(1, 2), 5: Fraction(1, 2)},
}
_RATIONAL_SIN = {
    1: {0: Fraction(0)},
    2: {1: Fraction(0)},
    4: {1: Fraction(1), 3: Fraction(-1)},
}


def cos_turn_exact(t: Fraction) -> Fraction | None:
    """Exact rational value of cos(2*pi*t), or None if irrational."""
    t = _fold_turn(t)
    return _RATIONAL_COS.get(t.denominator, {}).get(t.numerator)


def sin_turn_exact(t: Fraction) -> Fraction | None:
    t = _fold_turn(t)
    return _RATIONAL_SIN.get(t.denominator, {}).get(t.numerator)


def cos_turn(t: Fraction) -> float:
    """cos(2*pi*t) with the argument folded into [0, 1/4] for accuracy."""
    exact = cos_turn_exact(t)
    if exact is not None:
        return float(exact)
    t = _fold_turn(t)
    if t > Fraction(1, 2):
        t = 1 - t
    if t > Fraction(1, 4):
        return -math.cos(2.0 * math.pi * float(Fraction(1, 2) - t))
    return math.cos(2.0 * math.pi * float(t))


def sin_turn(t: Fraction) -> float:
    exact = sin_turn_exact(t)
    if exact is not None:
        return float(exact)
    t = _fold_turn(t)
    sign = 1.0
    if t > Fraction(1, 2):
        t = 1 - t
        sign = -1.0
    if t > Fraction(1, 4):
        t = Fraction(1, 2) - t
    return sign * math.sin(2.0 * math.pi * float(t))


def unit_turn(t: Fraction) -> complex:
    """exp(2*pi*i*t)."""
    return complex(cos_turn(t), sin_turn(t))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups Z_{N1} x ... x Z_{Nd} with a Haar weight.

    The weight is the measure of a single point, so every integral over the
    group is ``weight`` times a plain sum.
    """

    orders: tuple[int, ...]
    weight: Fraction = Fraction(1)
    _strides: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _neg: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        orders = tuple(int(n) for n in self.orders)
        if not orders or any(n < 1 for n in orders):
            raise ValueError(f"group orders must be positive, got {self.orders!r}")
        weight = Fraction(self.weight)
        if weight <= 0:
            raise ValueError(f"Haar weight must be positive, got {self.weight}")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "weight", weight)
        strides = []
        acc = 1
        for n in reversed(orders):
            strides.append(acc)
            acc *= n
        object.__setattr__(self, "_strides", tuple(reversed(strides)))
        object.__setattr__(
            self, "_neg", tuple(self._neg_index_raw(i) for i in range(acc))
        )

    @property
    def size(self) -> int:
        n = 1
        for order in self.orders:
            n *= order
        return n

    @property
    def dimension(self) -> int:
        return len(self.orders)

    def index_of(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.orders):
            raise ValueError(
                f"expected {len(self.orders)} coordinates, got {len(coords)}"
            )
        idx = 0
        for c, n, s in zip(coords, self.orders, self._strides):
            idx += (int(c) % n) * s
        return idx

    def coords_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise ValueError(f"element index {index} out of range for {self}")
        coords = []
        for n, s in zip(self.orders, self._strides):
            coords.append((index // s) % n)
        return tuple(coords)

    def signed_coords(self, index: int) -> tuple[int, ...]:
        """Coordinates mapped to the symmetric window (-N/2, N/2]."""
        return tuple(
            c - n if 2 * c > n else c for c, n in zip(self.coords_of(index), self.orders)
        )

    def element(self, coords: Sequence[int] | int) -> "GroupElement":
        if isinstance(coords, int):
            return GroupElement(self, self.coords_of(coords))
        return GroupElement(self, tuple(int(c) % n for c, n in zip(coords, self.orders)))

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.orders))

    def elements(self) -> Iterator["GroupElement"]:
        for i in range(self.size):
            yield self.element(i)

    def add_index(self, i: int, j: int) -> int:
        out = 0
        for n, s in zip(self.orders, self._strides):
            out += (((i // s) + (j // s)) % n) * s
        return out

    def _neg_index_raw(self, i: int) -> int:
        out = 0
        for n, s in zip(self.orders, self._strides):
            out += ((n - (i // s) % n) % n) * s
        return out

    def neg_index(self, i: int) -> int:
        return self._neg[i]

    def add(self, a: "GroupElement", b: "GroupElement") -> "GroupElement":
        if a.group != self or b.group != self:
            raise ValueError("elements belong to a different group")
        return self.element(self.add_index(a.index, b.index))

    def negate(self, g: "GroupElement") -> "GroupElement":
        if g.group != self:
            raise ValueError("element belongs to a different group")
        return self.element(self.neg_index(g.index))

    def pairing_turn(self, g_index: int, chi_index: int) -> Fraction:
        """Phase of chi(g) in turns, as an exact fraction in [0, 1)."""
        t = Fraction(0)
        for n, s in zip(self.orders, self._strides):
            t += Fraction(((g_index // s) % n) * ((chi_index // s) % n), n)
        return _fold_turn(t)

    def char_neg_index(self, chi_index: int) -> int:
        # The dual group has the same mixed-radix coordinates.
        return self.neg_index(chi_index)

    def character(self, coords: Sequence[int] | int) -> "Character":
        if isinstance(coords, int):
            return Character(self, self.coords_of(coords))
        return Character(self, tuple(int(c) % n for c, n in zip(coords, self.orders)))

    def characters(self) -> Iterator["Character"]:
        for i in range(self.size):
            yield self.character(i)

    def label(self, index: int) -> str:
        signed = self.signed_coords(index)
        if len(signed) == 1:
            return str(signed[0])
        return "(" + ",".join(str(c) for c in signed) + ")"

    def subgroup_generated(self, generators: Iterable["GroupElement" | int]) -> "Subgroup":
        """Smallest subgroup containing the generators (breadth-first closure)."""
        gen_indices = sorted(
            {g.index if isinstance(g, GroupElement) else int(g) for g in generators}
        )
        seeds = set(gen_indices)
        for s in list(seeds):
            seeds.add(self.neg_index(s))
        members = {0} | seeds
        frontier = deque(sorted(members))
        while frontier:
            current = frontier.popleft()
            for s in seeds:
                nxt = self.add_index(current, s)
                if nxt not in members:
                    members.add(nxt)
                    frontier.append(nxt)
        return Subgroup(self, tuple(sorted(members)), tuple(gen_indices))

    def scaling_map(self, multiplier: int) -> "ScalingMap":
        """The automorphism g -> multiplier * g; requires gcd(R, Ni) = 1."""
        for n in self.orders:
            if math.gcd(multiplier, n) != 1:
                raise ValueError(
                    f"scaling by {multiplier} is not an automorphism of {self}: "
                    f"gcd({multiplier}, {n}) > 1"
                )
        perm = []
        for i in range(self.size):
            out = 0
            for n, s in zip(self.orders, self._strides):
                out += ((((i // s) % n) * multiplier) % n) * s
            perm.append(out)
        return ScalingMap(self, multiplier, tuple(perm))

    def __str__(self) -> str:
        name = "x".join(f"Z{n}" for n in self.orders)
        if self.weight != 1:
            name += f",weight={self.weight}"
        return name


@dataclass(frozen=True)
class GroupElement:
    """Element of a finite abelian group, stored as canonical residues."""

    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        for c, n in zip(self.coords, self.group.orders):
            if not 0 <= c < n:
                raise ValueError(f"coordinate {c} is not a canonical residue mod {n}")

    @property
    def index(self) -> int:
        return self.group.index_of(self.coords)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return self.group.add(self, other)

    def __neg__(self) -> "GroupElement":
        return self.group.negate(self)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self.group.add(self, self.group.negate(other))

    def __str__(self) -> str:
        return self.group.label(self.index)


@dataclass(frozen=True)
class Character:
    """Character of the group; evaluation goes through an exact phase."""

    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.group.index_of(self.coords)

    def turn(self, g: GroupElement | int) -> Fraction:
        g_index = g.index if isinstance(g, GroupElement) else int(g)
        return self.group.pairing_turn(g_index, self.index)

    def value(self, g: GroupElement | int) -> complex:
        return unit_turn(self.turn(g))


@dataclass(frozen=True)
class Subgroup:
    """Subgroup given by its sorted member indices and a generator set."""

    group: FiniteAbelianGroup
    members: tuple[int, ...]
    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        if 0 not in self.members:
            raise ValueError("a subgroup must contain the identity")
        if self.group.size % len(self.members) != 0:
            raise ValueError("subgroup order does not divide the group order")

    @property
    def order(self) -> int:
        return len(self.members)

    def contains_index(self, i: int) -> bool:
        return i in self._member_set()

    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_proper(self) -> bool:
        return self.order < self.group.size

    def elements(self) -> Iterator[GroupElement]:
        for i in self.members:
            yield self.group.element(i)


@dataclass(frozen=True)
class ScalingMap:
    """Automorphism g -> R*g of a group, stored as an index permutation."""

    group: FiniteAbelianGroup
    multiplier: int
    permutation: tuple[int, ...]

    def apply_index(self, i: int) -> int:
        return self.permutation[i]

    def apply(self, g: GroupElement) -> GroupElement:
        return self.group.element(self.permutation[g.index])

    def apply_index_set(self, indices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.permutation[i] for i in indices)


_GROUP_RE = re.compile(r"^Z(\d+)$", re.IGNORECASE)


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse a group literal such as "Z8", "Z4xZ3" or "Z8,weight=1/4"."""
    body = text.strip().replace(" ", "")
    weight = Fraction(1)
    if "," in body:
        body, _, tail = body.partition(",")
        key, _, value = tail.partition("=")
        if key != "weight" or not value:
            raise ValueError(f"unrecognized group option {tail!r} in {text!r}")
        weight = Fraction(value)
    orders = []
    for part in body.split("x"):
        m = _GROUP_RE.match(part)
        if not m:
            raise ValueError(f"unrecognized group literal {text!r}")
        orders.append(int(m.group(1)))
    return FiniteAbelianGroup(tuple(orders), weight)
