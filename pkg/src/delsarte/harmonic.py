"""Functions on finite abelian groups: transform, convolution, kernels.

Transform convention: the forward transform carries the Haar weight and
the inverse carries 1/(h*|G|), so the value at the trivial character is
exactly the integral of the function.  The naive quadratic-time summation
with exact rational phases is the reference path; the product-structure
fast path (numpy FFT) must reproduce it and is used by default.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .groups import FiniteAbelianGroup, GroupElement, unit_turn


def fmt_sig(x: float, digits: int = 12) -> str:
    """Fixed significant-digit decimal formatting for deterministic output."""
    if x == 0:
        x = 0.0  # normalize -0.0
    return format(float(x), f".{digits}g")


def _group_size(group) -> int:
    return group.size


class GroupFunction:
    """Real-valued function on a group with a write-once cached spectrum."""

    __slots__ = ("group", "values", "_spectrum")

    def __init__(self, group, values: Sequence[float] | np.ndarray):
        arr = np.asarray(values, dtype=float).copy()
        if arr.shape != (_group_size(group),):
            raise ValueError(
                f"expected {_group_size(group)} values, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("function values must be finite")
        arr.flags.writeable = False
        self.group = group
        self.values = arr
        self._spectrum: Spectrum | None = None

    @staticmethod
    def delta(group) -> "GroupFunction":
        values = np.zeros(_group_size(group))
        values[0] = 1.0
        return GroupFunction(group, values)

    @staticmethod
    def constant(group, value: float = 1.0) -> "GroupFunction":
        return GroupFunction(group, np.full(_group_size(group), float(value)))

    @staticmethod
    def indicator(group, indices: Iterable[int]) -> "GroupFunction":
        values = np.zeros(_group_size(group))
        for i in indices:
            values[int(i)] = 1.0
        return GroupFunction(group, values)

    def __call__(self, g: GroupElement | int) -> float:
        index = g.index if isinstance(g, GroupElement) else int(g)
        return float(self.values[index])

    def integral(self) -> float:
        """h * sum of values, the Haar integral."""
        return float(self.group.weight) * float(self.values.sum())

    def is_even(self, tol: float = 0.0) -> bool:
        neg = _neg_permutation(self.group)
        return bool(np.max(np.abs(self.values - self.values[neg])) <= tol)

    def spectrum(self) -> "Spectrum":
        if self._spectrum is None:
            self._spectrum = dft(self)
        return self._spectrum

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index", "coordinates", "value"])
            for i, v in enumerate(self.values):
                coordinates = ";".join(str(c) for c in self.group.coords_of(i))
                writer.writerow([i, coordinates, fmt_sig(v)])

    @staticmethod
    def from_csv(group, path: str | Path) -> "GroupFunction":
        values = np.zeros(_group_size(group))
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            for row in reader:
                values[int(row["index"])] = float(row["value"])
        return GroupFunction(group, values)


@dataclass(frozen=True)
class Spectrum:
    """Transform values, one complex number per character in canonical order."""

    group: object
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=complex).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __call__(self, chi_index: int) -> complex:
        return complex(self.values[chi_index])

    @property
    def min_real(self) -> float:
        return float(self.values.real.min())

    @property
    def max_abs_imag(self) -> float:
        return float(np.abs(self.values.imag).max())

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["char_index", "value_re", "value_im"])
            for i, v in enumerate(self.values):
                writer.writerow([i, fmt_sig(v.real), fmt_sig(v.imag)])


def _neg_permutation(group) -> np.ndarray:
    return np.fromiter(
        (group.neg_index(i) for i in range(_group_size(group))), dtype=int
    )


def dft(f: GroupFunction) -> Spectrum:
    """Forward transform; uses the factor-wise FFT on product groups."""
    group = f.group
    h = float(group.weight)
    if hasattr(group, "orders"):
        shaped = f.values.reshape(group.orders)
        out = np.fft.fftn(shaped).reshape(-1) * h
        return Spectrum(group, out)
    return dft_reference(f)


def dft_reference(f: GroupFunction) -> Spectrum:
    """Naive quadratic-time transform with exact rational phases.

    This is the correctness anchor for every spectral certificate; the fast
    path is validated against it.
    """
    group = f.group
    n = _group_size(group)
    h = float(group.weight)
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        acc = 0j
        for g in range(n):
            value = f.values[g]
            if value != 0.0:
                acc += value * unit_turn(-group.pairing_turn(g, k))
        out[k] = h * acc
    return Spectrum(group, out)


def idft(spectrum: Spectrum, imag_tol: float = 1e-9) -> GroupFunction:
    """Inverse transform back to a real function on the group."""
    group = spectrum.group
    n = _group_size(group)
    h = float(group.weight)
    if hasattr(group, "orders"):
        shaped = np.asarray(spectrum.values).reshape(group.orders)
        out = np.fft.ifftn(shaped).reshape(-1) / h
    else:
        out = np.zeros(n, dtype=complex)
        for g in range(n):
            acc = 0j
            for k in range(n):
                acc += spectrum.values[k] * unit_turn(group.pairing_turn(g, k))
            out[g] = acc / (h * n)
    scale = max(1.0, float(np.abs(out).max()))
    if np.abs(out.imag).max() > imag_tol * scale:
        raise ValueError("inverse transform produced a non-real function")
    return GroupFunction(group, out.real)


def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f * g)(x) = h * sum_y f(y) g(x - y)."""
    if f.group != g.group:
        raise ValueError("convolution requires functions on the same group")
    group = f.group
    h = float(group.weight)
    if hasattr(group, "orders"):
        fa = np.fft.fftn(f.values.reshape(group.orders))
        ga = np.fft.fftn(g.values.reshape(group.orders))
        out = np.fft.ifftn(fa * ga).real.reshape(-1) * h
        return GroupFunction(group, out)
    n = _group_size(group)
    out = np.zeros(n)
    for x in range(n):
        acc = 0.0
        for y in range(n):
            acc += f.values[y] * g.values[group.add_index(x, group.neg_index(y))]
        out[x] = h * acc
    return GroupFunction(group, out)


def autocorrelation(
    group, subset: Iterable[GroupElement | int], normalize: bool = True
) -> GroupFunction:
    """1_A convolved with 1_{-A}; positive definite with support in A - A."""
    indices = [a.index if isinstance(a, GroupElement) else int(a) for a in subset]
    if not indices:
        raise ValueError("autocorrelation of an empty subset")
    ind = GroupFunction.indicator(group, indices)
    neg = _neg_permutation(group)
    ind_neg = GroupFunction(group, ind.values[neg])
    out = convolve(ind, ind_neg)
    if normalize:
        scale = float(group.weight) * len(set(indices))
        out = GroupFunction(group, out.values / scale)
    return out


def pointwise_product(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    if f.group != g.group:
        raise ValueError("pointwise product requires functions on the same group")
    return GroupFunction(f.group, f.values * g.values)


def fejer_kernel(group: FiniteAbelianGroup, m: int) -> GroupFunction:
    """Normalized autocorrelation of the box {0..m}^d.

    Takes the value 1 at the identity, lies in [0, 1], is positive
    definite, and dominates 1 - (sum |g_i|)/(m+1) near the identity.
    """
    if m < 0:
        raise ValueError("kernel parameter must be nonnegative")
    if 2 * m + 1 > min(group.orders):
        raise ValueError(
            f"kernel parameter {m} too large: support 2*{m}+1 wraps around "
            f"an order-{min(group.orders)} factor"
        )
    box = [()]
    for _ in group.orders:
        box = [coords + (c,) for coords in box for c in range(m + 1)]
    indices = [group.index_of(coords) for coords in box]
    return autocorrelation(group, indices, normalize=True)


def evenize(f: GroupFunction) -> GroupFunction:
    """(f(x) + f(-x)) / 2; preserves the value at 0 and the integral."""
    neg = _neg_permutation(f.group)
    return GroupFunction(f.group, (f.values + f.values[neg]) / 2.0)


@dataclass(frozen=True)
class SpectralVerdict:
    """Positive-definiteness verdict with a witness character on failure."""

    ok: bool
    witness_index: int | None
    witness_value: complex | None
    min_real: float
    max_abs_imag: float

    def __bool__(self) -> bool:
        return self.ok


def default_pd_tolerance(f: GroupFunction) -> float:
    # Accumulated rounding in the spectrum scales with the group size.
    return 1e-9 * max(1.0, abs(f(0))) * _group_size(f.group)


def is_positive_definite(f: GroupFunction, tol: float | None = None) -> SpectralVerdict:
    """Spectral test: nonnegative real spectrum within tolerance.

    On a finite abelian group this is equivalent to all Gram matrices
    [f(g_i - g_j)] being positive semidefinite.
    """
    if tol is None:
        tol = default_pd_tolerance(f)
    spec = f.spectrum()
    values = spec.values
    re_min_idx = int(values.real.argmin())
    im_max_idx = int(np.abs(values.imag).argmax())
    min_real = float(values.real[re_min_idx])
    max_imag = float(abs(values.imag[im_max_idx]))
    if min_real < -tol:
        return SpectralVerdict(False, re_min_idx, complex(values[re_min_idx]), min_real, max_imag)
    if max_imag > tol:
        return SpectralVerdict(False, im_max_idx, complex(values[im_max_idx]), min_real, max_imag)
    return SpectralVerdict(True, None, None, min_real, max_imag)
