"""Extremal linear programs on finite groups with dual certificates.

The problems maximize the Haar integral of an even function f with
f(0) = 1, a nonnegative spectrum, and sign constraints outside two
symmetric sets.  Restricting to even functions loses nothing: averaging
f with its reflection preserves the spectrum sign, the normalization,
the sign constraints and the objective, and it makes every spectral row
real.  One variable per negation orbit, one spectral row per character
orbit.

Two formulations are built from the same pairing data: the primal form
in function values and an independent Fourier-side form in spectrum
values; their agreement is the standing cross-check.  A dense two-phase
simplex with Bland's rule is the single solving engine; it pivots either
in float64 or in exact rational arithmetic.  Rational pairing values are
used exactly where the phase admits one (denominators 1, 2, 3, 4, 6);
other phases are lifted from float64, so "exact" means exact pivoting on
exactly represented row data.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .classes import ClassSpec, ClassVerdict, SymmetricSet, in_class
from .discretize import TorusSpec, sample_set
from .groups import cos_turn, cos_turn_exact
from .harmonic import GroupFunction
from .realsets import RealSet1D

FLOAT = "float"
EXACT = "exact-rational"
MODES = ("general", "turan", "delsarte")

FULL = "FULL"
SAME = "SAME"

_TRACE = False  # diagnostic pivot tracing


class ClassEmptyProblem(Exception):
    """The admissible class is empty (the identity is not a plus point)."""


class SimplexError(Exception):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    """An extremal problem instance.

    Turan mode forces the minus set to equal the plus set; Delsarte mode
    forces the minus set to be the whole group.
    """

    group: object
    omega_plus: SymmetricSet
    omega_minus: SymmetricSet
    mode: str = "general"
    arithmetic: str = FLOAT
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.arithmetic not in (FLOAT, EXACT):
            raise ValueError(f"unknown arithmetic {self.arithmetic!r}")
        if self.omega_plus.group != self.group or self.omega_minus.group != self.group:
            raise ValueError("sign sets must live on the problem group")
        if self.mode == "turan" and self.omega_minus.indices != self.omega_plus.indices:
            raise ValueError("turan mode requires equal plus and minus sets")
        if self.mode == "delsarte" and not self.omega_minus.is_full:
            raise ValueError("delsarte mode requires the minus set to be the group")

    @staticmethod
    def turan(group, omega: SymmetricSet, **kw) -> "ProblemSpec":
        return ProblemSpec(group, omega, omega, mode="turan", **kw)

    @staticmethod
    def delsarte(group, omega_plus: SymmetricSet, **kw) -> "ProblemSpec":
        return ProblemSpec(
            group, omega_plus, SymmetricSet.full(group), mode="delsarte", **kw
        )

    @staticmethod
    def general(group, omega_plus: SymmetricSet, omega_minus: SymmetricSet, **kw) -> "ProblemSpec":
        return ProblemSpec(group, omega_plus, omega_minus, mode="general", **kw)

    def class_spec(self) -> ClassSpec:
        return ClassSpec(self.omega_plus, self.omega_minus)


@dataclass(frozen=True)
class LPRow:
    label: tuple
    coeffs: tuple[tuple[int, object], ...]  # (variable position, coefficient)
    sense: str  # "<=", ">=", "="
    rhs: object


@dataclass(frozen=True)
class LinearProgram:
    """Dense-ready LP over boxed variables, maximization sense.

    The objective is stored h-free with the Haar weight as a separate
    exact scale, so the value scales linearly in the weight by
    construction.
    """

    var_labels: tuple
    var_bounds: tuple[tuple[object, object], ...]
    rows: tuple[LPRow, ...]
    objective: tuple
    objective_scale: Fraction
    arithmetic: str
    maximize: bool = True

    @property
    def num_vars(self) -> int:
        return len(self.var_labels)

    def rows_with_label(self, head: str) -> list[LPRow]:
        return [r for r in self.rows if r.label[0] == head]


def _element_orbits(group) -> tuple[list[int], dict[int, int]]:
    """Negation-orbit representatives (smallest index) and orbit sizes."""
    reps, size = [], {}
    for i in range(group.size):
        j = group.neg_index(i)
        if i <= j:
            reps.append(i)
            size[i] = 1 if i == j else 2
    return reps, size


def _char_orbits(group) -> tuple[list[int], dict[int, int]]:
    reps, size = [], {}
    for k in range(group.size):
        j = group.char_neg_index(k)
        if k <= j:
            reps.append(k)
            size[k] = 1 if k == j else 2
    return reps, size


def _pairing_coeff(group, g_index: int, chi_index: int, count: int, exact: bool):
    """count * cos of the pairing phase, in the requested arithmetic."""
    t = group.pairing_turn(g_index, chi_index)
    if exact:
        value = cos_turn_exact(t)
        if value is None:
            value = Fraction(cos_turn(t))
        return count * value
    return count * cos_turn(t)


def build_primal(spec: ProblemSpec) -> LinearProgram:
    """LP in function values on negation-orbit representatives.

    Constraints: f(0) = 1, sign rows outside the plus/minus sets, and one
    nonnegative-spectrum row per character orbit.  Orbits outside both
    sign sets are fixed to zero and dropped (both sign constraints are
    active there).
    """
    group = spec.group
    if 0 not in spec.omega_plus:
        raise ClassEmptyProblem("the identity is not in the plus set")
    exact = spec.arithmetic == EXACT
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    plus, minus = spec.omega_plus.indices, spec.omega_minus.indices

    reps, rep_size = _element_orbits(group)
    var_reps = [r for r in reps if r == 0 or r in plus or r in minus]
    pos = {r: j for j, r in enumerate(var_reps)}
    bounds = tuple((-one, one) for _ in var_reps)

    rows: list[LPRow] = [LPRow(("normalization",), ((pos[0], one),), "=", one)]
    for r in var_reps:
        if r == 0:
            continue
        if r not in plus:
            rows.append(LPRow(("sign_plus", r), ((pos[r], one),), "<=", zero))
        if r not in minus:
            rows.append(LPRow(("sign_minus", r), ((pos[r], one),), ">=", zero))
    chi_reps, _ = _char_orbits(group)
    for k in chi_reps:
        coeffs = tuple(
            (pos[r], _pairing_coeff(group, r, k, rep_size[r], exact)) for r in var_reps
        )
        rows.append(LPRow(("spectral", k), coeffs, ">=", zero))

    objective = tuple(
        (Fraction(rep_size[r]) if exact else float(rep_size[r])) for r in var_reps
    )
    return LinearProgram(
        var_labels=tuple(var_reps),
        var_bounds=bounds,
        rows=tuple(rows),
        objective=objective,
        objective_scale=Fraction(group.weight),
        arithmetic=spec.arithmetic,
    )


def build_fourier_form(spec: ProblemSpec) -> LinearProgram:
    """Independent reformulation in spectrum values on character orbits.

    Variables are the h-free transform values, nonnegative by positive
    definiteness; the normalization row encodes f(0) = 1 and the sign
    rows constrain the reconstructed function outside the sign sets.
    Equivalence with the primal form follows from the inversion formula.
    """
    group = spec.group
    if 0 not in spec.omega_plus:
        raise ClassEmptyProblem("the identity is not in the plus set")
    exact = spec.arithmetic == EXACT
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    n = group.size
    plus, minus = spec.omega_plus.indices, spec.omega_minus.indices

    chi_reps, chi_size = _char_orbits(group)
    pos = {k: j for j, k in enumerate(chi_reps)}
    big = Fraction(n) if exact else float(n)
    bounds = tuple((zero, big) for _ in chi_reps)

    rows: list[LPRow] = [
        LPRow(
            ("normalization",),
            tuple((pos[k], chi_size[k] * one) for k in chi_reps),
            "=",
            big,
        )
    ]
    reps, _ = _element_orbits(group)
    for g in reps:
        if g == 0:
            continue
        in_plus, in_minus = g in plus, g in minus
        if in_plus and in_minus:
            continue
        coeffs = tuple(
            (pos[k], _pairing_coeff(group, g, k, chi_size[k], exact))
            for k in chi_reps
        )
        if not in_plus:
            rows.append(LPRow(("sign_plus", g), coeffs, "<=", zero))
        if not in_minus:
            rows.append(LPRow(("sign_minus", g), coeffs, ">=", zero))

    objective = tuple(one if k == 0 else zero for k in chi_reps)
    return LinearProgram(
        var_labels=tuple(("fhat", k) for k in chi_reps),
        var_bounds=bounds,
        rows=tuple(rows),
        objective=objective,
        objective_scale=Fraction(group.weight),
        arithmetic=spec.arithmetic,
    )


# -- simplex engine -----------------------------------------------------------


@dataclass(frozen=True)
class RawOptimum:
    """Optimal basic solution of a LinearProgram with dual multipliers.

    Row multipliers follow the convention: nonnegative on <= rows,
    nonpositive on >= rows, free on equalities; bound multipliers are
    nonnegative.  Stationarity: c_j = sum_i y_i A_ij + upper_j - lower_j.
    """

    x: tuple
    objective: object
    row_duals: tuple
    lower_duals: tuple
    upper_duals: tuple
    iterations: int
    phase1_iterations: int


def simplex_solve(lp: LinearProgram, max_iterations: int | None = None) -> RawOptimum:
    """Dense two-phase tableau simplex.

    The float path relaxes every inequality outward by a distinct
    deterministic epsilon (breaking degenerate ties without losing
    feasibility), prices by steepest reduced cost with a Harris two-pass
    ratio test so it never pivots on tiny elements, runs bounded
    Bland-rule bursts on objective plateaus, and refactorizes the tableau
    from the source data periodically so rounding from degenerate chains
    cannot accumulate.  At the end the true right-hand side is restored, a
    short dual-simplex pass repairs the perturbation-sized infeasibility,
    and the primal loop re-certifies optimality.  The exact-rational path
    runs pure Bland's rule on unperturbed data with no tolerances.

    Finite variable boxes guarantee boundedness; the admissible problems
    are never infeasible (the point mass at the identity is feasible), so
    both failure modes raise rather than return.
    """
    exact = lp.arithmetic == EXACT
    zero = Fraction(0) if exact else 0.0
    eps = Fraction(0) if exact else 1e-9
    ratio_eps = Fraction(0) if exact else 1e-11

    nv = lp.num_vars
    lo = [b[0] for b in lp.var_bounds]
    hi = [b[1] for b in lp.var_bounds]

    # Shift to x = lo + xt with xt >= 0; upper bounds become explicit rows.
    rows: list[tuple[tuple, list, str, object]] = []
    for r in lp.rows:
        dense = [zero] * nv
        shift = zero
        for j, a in r.coeffs:
            dense[j] = a
            shift += a * lo[j]
        rows.append((r.label, dense, r.sense, r.rhs - shift))
    for j in range(nv):
        width = hi[j] - lo[j]
        dense = [zero] * nv
        dense[j] = zero + 1
        rows.append((("box", lp.var_labels[j]), dense, "<=", width))

    m = len(rows)
    flipped = [False] * m
    senses = []
    for i, (_, dense, sense, rhs) in enumerate(rows):
        if rhs < zero:
            rows[i] = (rows[i][0], [-a for a in dense], _flip(sense), -rhs)
            flipped[i] = True
        senses.append(rows[i][2])

    # Column layout: structural vars, then per-row one +e_i column (slack for
    # <=, artificial for >= and =) and a -e_i surplus column for >= rows.
    unit_col = [0] * m  # column index of the +e_i column of each row
    surplus_col: dict[int, int] = {}
    ncols = nv
    artificial: list[int] = []
    for i, sense in enumerate(senses):
        if sense == ">=":
            surplus_col[i] = ncols
            ncols += 1
    for i, sense in enumerate(senses):
        unit_col[i] = ncols
        if sense != "<=":
            artificial.append(ncols)
        ncols += 1

    dtype = object if exact else float
    T = np.zeros((m, ncols + 1), dtype=dtype)
    if exact:
        T[:, :] = Fraction(0)
    basis = [0] * m
    for i, (_, dense, sense, rhs) in enumerate(rows):
        for j in range(nv):
            if dense[j] != zero:
                T[i, j] = dense[j]
        if i in surplus_col:
            T[i, surplus_col[i]] = zero - 1
        T[i, unit_col[i]] = zero + 1
        T[i, ncols] = rhs
        basis[i] = unit_col[i]

    art_set = frozenset(artificial)
    iterations = 0

    # Deterministic degeneracy-breaking perturbation (float path): relax
    # every inequality outward by a distinct tiny amount.  The admissible
    # point mass stays feasible, exact ratio ties disappear, and the true
    # right-hand side is restored before the final polish.
    source = {"data": None}
    if not exact:
        original_true = T.copy()
        pert_base = 1e-5 * (1.0 + max(abs(float(T[i, ncols])) for i in range(m)))
        for i in range(m):
            delta = pert_base * (i + 1) / m
            if senses[i] == "<=":
                T[i, ncols] += delta
            elif senses[i] == ">=" and T[i, ncols] > delta:
                T[i, ncols] -= delta
        source["data"] = T.copy()

    def pivot(leave: int, enter: int) -> None:
        piv = T[leave, enter]
        T[leave] = T[leave] / piv
        for i in range(m):
            if i != leave and T[i, enter] != zero:
                T[i] = T[i] - T[i, enter] * T[leave]
        basis[leave] = enter

    def refactor() -> None:
        # Rebuild T = B^-1 [A | b] from the source data under the current
        # basis; degenerate pivot chains otherwise erode the tableau.  A
        # numerically singular basis (forced tiny pivot) keeps the running
        # tableau; the certificate check downstream guards the result.
        if exact:
            return
        B = source["data"][:, basis]
        try:
            fresh = np.linalg.solve(B, source["data"])
        except np.linalg.LinAlgError:
            return
        T[:, :] = fresh

    def build_obj(cost: list) -> np.ndarray:
        obj = np.zeros(ncols + 1, dtype=dtype)
        if exact:
            obj[:] = Fraction(0)
        for j in range(ncols):
            obj[j] = -cost[j]
        for i in range(m):
            cb = cost[basis[i]]
            if cb != zero:
                obj += cb * T[i]
        return obj

    refactor_period = 40
    pivot_tol = 1e-9  # float path never pivots on anything smaller
    harris_slack = 1e-9

    def choose_leave_exact(enter: int) -> int:
        leave = -1
        best = None
        for i in range(m):
            a = T[i, enter]
            if a > 0:
                ratio = T[i, ncols] / a
                if best is None or ratio < best:
                    best = ratio
                    leave = i
                elif ratio == best and basis[i] < basis[leave]:
                    leave = i
        return leave

    def choose_leave_float(enter: int) -> int:
        # Harris two-pass ratio test: a small feasibility slack lets rows
        # with tiny pivot entries be skipped, then the numerically largest
        # admissible pivot is taken.
        theta = None
        for i in range(m):
            a = T[i, enter]
            if a > pivot_tol:
                bound = (T[i, ncols] + harris_slack) / a
                if theta is None or bound < theta:
                    theta = bound
        if theta is None:
            # only tiny entries remain; take the largest of them
            leave = -1
            biggest = ratio_eps
            for i in range(m):
                a = T[i, enter]
                if a > biggest:
                    biggest = a
                    leave = i
            return leave
        leave = -1
        biggest = 0.0
        for i in range(m):
            a = T[i, enter]
            if a > pivot_tol and T[i, ncols] / a <= theta and a > biggest:
                biggest = a
                leave = i
        return leave

    def choose_leave_bland(enter: int) -> int:
        # Bland's leaving rule: strict minimum ratio, ties broken by the
        # lowest basic variable index.  Entries above the pivot threshold
        # are preferred; tiny ones are a last resort.
        for tol in (pivot_tol, ratio_eps):
            leave = -1
            best = None
            for i in range(m):
                a = T[i, enter]
                if a > tol:
                    ratio = T[i, ncols] / a
                    if best is None or ratio < best:
                        best = ratio
                        leave = i
                    elif ratio == best and basis[i] < basis[leave]:
                        leave = i
            if leave >= 0:
                return leave
        return -1

    def run_phase(cost: list, barred: frozenset[int]) -> int:
        nonlocal iterations
        obj = build_obj(cost)
        steps = 0
        stalled = 0
        bland_burst = 0  # remaining Bland-rule pivots of an anti-cycling burst
        limit = max_iterations or (2000 + 200 * (m + ncols))
        while True:
            bland_pricing = exact or bland_burst > 0
            enter = -1
            if bland_pricing:
                for j in range(ncols):
                    if j not in barred and obj[j] < -eps:
                        enter = j
                        break
            else:
                best_rc = -eps
                for j in range(ncols):
                    if j not in barred and obj[j] < best_rc:
                        best_rc = obj[j]
                        enter = j
            if enter < 0:
                return steps
            if exact:
                leave = choose_leave_exact(enter)
            elif bland_pricing:
                leave = choose_leave_bland(enter)
            else:
                leave = choose_leave_float(enter)
            if leave < 0:
                raise SimplexError("unbounded direction in a boxed program")
            entering_rc = obj[enter]
            before = obj[ncols]
            pivot(leave, enter)
            if entering_rc != zero:
                obj -= entering_rc * T[leave]
            steps += 1
            iterations += 1
            if not exact:
                if bland_burst > 0:
                    bland_burst -= 1
                progressed = obj[ncols] > before + 1e-13 * (1.0 + abs(before))
                stalled = 0 if progressed else stalled + 1
                # anti-cycling: long degenerate plateaus trigger a bounded
                # burst of Bland's rule, then pricing reverts
                if stalled > 60 and bland_burst == 0:
                    bland_burst = min(2 * m, 400)
                    stalled = 0
                if steps % refactor_period == 0:
                    refactor()
                    obj = build_obj(cost)
            if _TRACE and steps % 2000 == 0:
                print(
                    f"trace: steps={steps} obj={float(obj[ncols]):.9f} "
                    f"burst={bland_burst} stalled={stalled} enter={enter} leave={leave}"
                )
            if steps > limit:
                raise SimplexError("iteration limit exceeded")

    phase1_iterations = 0
    if artificial:
        cost1 = [zero] * ncols
        for j in artificial:
            cost1[j] = zero - 1
        phase1_iterations = run_phase(cost1, frozenset())
        refactor()
        infeas = sum((T[i, ncols] for i in range(m) if basis[i] in art_set), zero)
        feas_tol = zero if exact else 1e-7
        if infeas > feas_tol:
            raise SimplexError(f"infeasible program (residual {infeas})")
        # Drive leftover degenerate artificials out of the basis so phase 2
        # cannot move them; an all-zero row is redundant and stays put.  The
        # float path needs a real pivot threshold here or elimination residue
        # (~1e-16) gets picked as a pivot and corrupts the tableau.
        drive_tol = zero if exact else 1e-7
        for i in range(m):
            if basis[i] in art_set:
                for j in range(ncols):
                    if j not in art_set and abs(T[i, j]) > drive_tol:
                        pivot(i, j)
                        break

    cost2 = [zero] * ncols
    for j in range(nv):
        cost2[j] = lp.objective[j] if lp.maximize else -lp.objective[j]
    for attempt in range(4):
        run_phase(cost2, art_set)
        if exact:
            break
        refactor()
        obj = build_obj(cost2)
        worst = min(
            (obj[j] for j in range(ncols) if j not in art_set), default=zero
        )
        if worst >= -1e-8:
            break
    else:
        raise SimplexError("optimality not reached after refactorization")

    if not exact:
        # Restore the true right-hand side.  The perturbed optimum basis is
        # dual feasible for the true data; a short dual-simplex pass repairs
        # the (at most perturbation-sized) primal infeasibility, then the
        # primal loop re-certifies optimality.
        source["data"] = original_true
        refactor()
        obj = build_obj(cost2)
        polish_limit = 4 * m + 50
        polish = 0
        while True:
            leave = -1
            worst_rhs = -1e-11
            for i in range(m):
                if T[i, ncols] < worst_rhs:
                    worst_rhs = T[i, ncols]
                    leave = i
            if leave < 0:
                break
            enter = -1
            best_ratio = None
            for j in range(ncols):
                if j in art_set:
                    continue
                a = T[leave, j]
                if a < -pivot_tol:
                    ratio = obj[j] / (-a)
                    if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and abs(a) > abs(T[leave, enter])
                    ):
                        best_ratio = ratio
                        enter = j
            if enter < 0:
                raise SimplexError("dual polish found an infeasible row")
            entering_rc = obj[enter]
            pivot(leave, enter)
            if entering_rc != zero:
                obj -= entering_rc * T[leave]
            iterations += 1
            polish += 1
            if polish > polish_limit:
                raise SimplexError("dual polish did not converge")
        for attempt in range(4):
            run_phase(cost2, art_set)
            refactor()
            obj = build_obj(cost2)
            worst = min(
                (obj[j] for j in range(ncols) if j not in art_set), default=zero
            )
            feasible = all(T[i, ncols] >= -1e-9 for i in range(m))
            if worst >= -1e-8 and feasible:
                break
        else:
            raise SimplexError("optimality not reached on the restored data")

    # Final reduced-cost row for dual extraction.
    obj = build_obj(cost2)

    xt = [zero] * ncols
    for i in range(m):
        xt[basis[i]] = T[i, ncols]
    x = tuple(lo[j] + xt[j] for j in range(nv))
    objective = sum((lp.objective[j] * x[j] for j in range(nv)), zero)

    # y_i is the reduced cost of the +e_i column, sign-corrected for rows
    # that were negated to make the right side nonnegative.
    y = []
    for i in range(m):
        yi = obj[unit_col[i]]
        y.append(-yi if flipped[i] else yi)
    lower = tuple(obj[j] for j in range(nv))
    row_duals = tuple(y[: len(lp.rows)])
    upper_duals = tuple(y[len(lp.rows):])

    return RawOptimum(
        x=x,
        objective=objective,
        row_duals=row_duals,
        lower_duals=lower,
        upper_duals=upper_duals,
        iterations=iterations,
        phase1_iterations=phase1_iterations,
    )


def _flip(sense: str) -> str:
    return {"<=": ">=", ">=": "<=", "=": "="}[sense]


# -- certificates and solutions ----------------------------------------------


@dataclass(frozen=True)
class DualCertificate:
    """Named multipliers proving optimality by weak duality."""

    rows: tuple[tuple[tuple, object], ...]  # (row label, multiplier)
    lower_bounds: tuple
    upper_bounds: tuple
    dual_objective: object


@dataclass(frozen=True)
class SolveStats:
    iterations: int
    pivots: int
    phase1_iterations: int
    runtime: float


@dataclass(frozen=True)
class Solution:
    """Solved extremal problem: status, value in Haar units, extremal
    function, dual certificate and solve statistics."""

    spec: ProblemSpec
    status: str  # "optimal" | "class_empty"
    value: float
    value_exact: Fraction | None
    extremal_function: GroupFunction | None
    extremal_values_exact: tuple[Fraction, ...] | None
    dual_certificate: DualCertificate | None
    gap: float
    stats: SolveStats
    formulation: str
    lp: LinearProgram | None
    var_values: tuple | None
    class_verdict: ClassVerdict | None
    certificate_verdict: "CertificateVerdict | None" = None

    def __post_init__(self) -> None:
        if self.status == "class_empty" and self.value != 0.0:
            raise ValueError("empty classes have extremal value 0 by convention")


def _reconstruct_primal(spec: ProblemSpec, lp: LinearProgram, x: Sequence) -> list:
    group = spec.group
    values = [Fraction(0) if spec.arithmetic == EXACT else 0.0] * group.size
    for rep, value in zip(lp.var_labels, x):
        values[rep] = value
        values[group.neg_index(rep)] = value
    return values


def _reconstruct_fourier(spec: ProblemSpec, lp: LinearProgram, x: Sequence) -> list:
    group = spec.group
    exact = spec.arithmetic == EXACT
    n = group.size
    chi_reps = [label[1] for label in lp.var_labels]
    _, chi_size = _char_orbits(group)
    values = []
    for g in range(n):
        acc = Fraction(0) if exact else 0.0
        for k, u in zip(chi_reps, x):
            if u != 0:
                acc += u * _pairing_coeff(group, g, k, chi_size[k], exact)
        values.append(acc / n)
    return values


def solve(spec: ProblemSpec, formulation: str = "primal") -> Solution:
    """Build, solve and validate one extremal problem.

    Class emptiness is a status, not an error: if the identity is not an
    admissible plus point the value is 0 by convention.
    """
    start = time.perf_counter()
    builder = {"primal": build_primal, "fourier": build_fourier_form}[formulation]
    try:
        lp = builder(spec)
    except ClassEmptyProblem:
        return Solution(
            spec=spec,
            status="class_empty",
            value=0.0,
            value_exact=Fraction(0) if spec.arithmetic == EXACT else None,
            extremal_function=None,
            extremal_values_exact=None,
            dual_certificate=None,
            gap=0.0,
            stats=SolveStats(0, 0, 0, time.perf_counter() - start),
            formulation=formulation,
            lp=None,
            var_values=None,
            class_verdict=None,
        )
    raw = simplex_solve(lp)
    exact = spec.arithmetic == EXACT
    h = lp.objective_scale

    if formulation == "primal":
        values = _reconstruct_primal(spec, lp, raw.x)
    else:
        values = _reconstruct_fourier(spec, lp, raw.x)
    function = GroupFunction(spec.group, [float(v) for v in values])

    certificate = DualCertificate(
        rows=tuple((r.label, y) for r, y in zip(lp.rows, raw.row_duals)),
        lower_bounds=raw.lower_duals,
        upper_bounds=raw.upper_duals,
        dual_objective=_dual_objective(lp, raw),
    )

    gap_raw = raw.objective - certificate.dual_objective
    gap = abs(float(h) * float(gap_raw))
    value_exact = h * raw.objective if exact else None
    verdict = in_class(
        function,
        spec.class_spec(),
        tol=max(spec.tolerance, 1e-9),
        pd_tol=None,
    )
    sol = Solution(
        spec=spec,
        status="optimal",
        value=float(h) * float(raw.objective),
        value_exact=value_exact,
        extremal_function=function,
        extremal_values_exact=tuple(values) if exact else None,
        dual_certificate=certificate,
        gap=gap,
        stats=SolveStats(
            raw.iterations, raw.iterations, raw.phase1_iterations,
            time.perf_counter() - start,
        ),
        formulation=formulation,
        lp=lp,
        var_values=tuple(raw.x),
        class_verdict=verdict,
    )
    return replace(sol, certificate_verdict=verify_certificate(sol))


def _dual_objective(lp: LinearProgram, raw: RawOptimum):
    exact = lp.arithmetic == EXACT
    acc = Fraction(0) if exact else 0.0
    for row, y in zip(lp.rows, raw.row_duals):
        acc += y * row.rhs
    for j, mu in enumerate(raw.upper_duals):
        acc += mu * lp.var_bounds[j][1]
    for j, nu in enumerate(raw.lower_duals):
        acc -= nu * lp.var_bounds[j][0]
    return acc


@dataclass(frozen=True)
class CertificateVerdict:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(sol: Solution, tol: float | None = None) -> CertificateVerdict:
    """Dual feasibility, complementary slackness and the weak-duality gap.

    Empty-class solutions pass vacuously.  Any violated condition is
    reported with the offending row or bound label.
    """
    if sol.status == "class_empty":
        return CertificateVerdict(True, ())
    lp, cert = sol.lp, sol.dual_certificate
    if lp is None or cert is None or sol.var_values is None:
        return CertificateVerdict(False, ("missing certificate data",))
    exact = lp.arithmetic == EXACT
    if tol is None:
        tol = 0.0 if exact else max(sol.spec.tolerance, 1e-9)
    x = sol.var_values
    violations: list[str] = []

    def check(condition: bool, message: str) -> None:
        if not condition:
            violations.append(message)

    scale = max(1.0, abs(float(sol.value)))
    row_maps = [dict(row.coeffs) for row in lp.rows]
    for row, coeffs, (label, y) in zip(lp.rows, row_maps, cert.rows):
        activity = sum((a * x[j] for j, a in coeffs.items()), Fraction(0) if exact else 0.0)
        slack = float(row.rhs - activity)
        name = _row_name(label)
        if row.sense == "<=":
            check(slack >= -tol * scale, f"{name}: primal row violated by {-slack}")
            check(float(y) >= -tol * scale, f"{name}: multiplier sign ({y})")
        elif row.sense == ">=":
            check(slack <= tol * scale, f"{name}: primal row violated by {slack}")
            check(float(y) <= tol * scale, f"{name}: multiplier sign ({y})")
        check(
            abs(float(y) * slack) <= tol * scale * max(1.0, abs(float(y))),
            f"{name}: complementary slackness (y={y}, slack={slack})",
        )
    for j in range(lp.num_vars):
        lo_j, hi_j = lp.var_bounds[j]
        nu = cert.lower_bounds[j]
        mu = cert.upper_bounds[j]
        name = f"variable[{lp.var_labels[j]}]"
        check(float(x[j]) >= float(lo_j) - tol * scale, f"{name}: below lower bound")
        check(float(x[j]) <= float(hi_j) + tol * scale, f"{name}: above upper bound")
        check(float(nu) >= -tol * scale, f"{name}: lower multiplier sign ({nu})")
        check(float(mu) >= -tol * scale, f"{name}: upper multiplier sign ({mu})")
        check(
            abs(float(nu) * float(x[j] - lo_j)) <= tol * scale * max(1.0, abs(float(nu))),
            f"{name}: lower-bound complementary slackness",
        )
        check(
            abs(float(mu) * float(hi_j - x[j])) <= tol * scale * max(1.0, abs(float(mu))),
            f"{name}: upper-bound complementary slackness",
        )
        stat = lp.objective[j]
        for coeffs, (label, y) in zip(row_maps, cert.rows):
            coeff = coeffs.get(j)
            if coeff is not None:
                stat = stat - y * coeff
        stat = stat - mu + nu
        check(
            abs(float(stat)) <= tol * scale * 10,
            f"{name}: dual stationarity residual {float(stat)}",
        )
    # Recompute the dual objective from the multipliers themselves; the
    # certificate is the multipliers, not a claimed gap.
    dual_obj = sum((y * row.rhs for row, (_, y) in zip(lp.rows, cert.rows)),
                   Fraction(0) if exact else 0.0)
    for j in range(lp.num_vars):
        dual_obj += cert.upper_bounds[j] * lp.var_bounds[j][1]
        dual_obj -= cert.lower_bounds[j] * lp.var_bounds[j][0]
    gap = float(sol.value) - float(lp.objective_scale) * float(dual_obj)
    check(
        abs(gap) <= max(tol, sol.spec.tolerance) * max(1.0, abs(float(sol.value))),
        f"duality gap {gap}",
    )
    return CertificateVerdict(not violations, tuple(violations))


def _row_name(label: tuple) -> str:
    return label[0] + "".join(f"[{part}]" for part in label[1:])


# -- sweeps -------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    grid: int
    step: float
    value: float
    gap: float
    runtime: float
    status: str
    warning: str | None
    value_exact: Fraction | None = None


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple[SweepRow, ...]

    def values(self) -> list[float]:
        return [r.value for r in self.rows]

    def lines(self) -> list[str]:
        out = ["grid,step,value,gap,runtime,warning"]
        for r in self.rows:
            warn = r.warning or ""
            out.append(
                f"{r.grid},{r.step:.12g},{r.value:.12g},{r.gap:.3g},"
                f"{r.runtime:.3f},{warn}"
            )
        return out

    def csv_lines(self) -> list[str]:
        # Byte-stable artifact: no wall-clock column.
        out = ["grid,step,value,gap,warning"]
        for r in self.rows:
            warn = r.warning or ""
            out.append(
                f"{r.grid},{r.step:.12g},{r.value:.12g},{r.gap:.3g},{warn}"
            )
        return out


def _discretize_pair(
    s_plus: RealSet1D,
    s_minus: RealSet1D | str | None,
    torus: TorusSpec,
    mode: str,
):
    dp = sample_set(s_plus, torus)
    group = dp.group
    omega_plus = SymmetricSet.from_signed(group, dp.signed_members)
    if mode == "turan":
        return dp, omega_plus, omega_plus
    if mode == "delsarte":
        return dp, omega_plus, SymmetricSet.full(group)
    if s_minus == SAME or s_minus is None:
        return dp, omega_plus, omega_plus
    if s_minus == FULL:
        return dp, omega_plus, SymmetricSet.full(group)
    dm = sample_set(s_minus, torus)
    return dp, omega_plus, SymmetricSet.from_signed(group, dm.signed_members)


def solve_discretized(
    s_plus: RealSet1D,
    s_minus: RealSet1D | str | None,
    torus: TorusSpec,
    mode: str = "turan",
    arithmetic: str = FLOAT,
    tolerance: float = 1e-9,
) -> tuple[Solution, str | None]:
    """Discretize a real-line problem on the torus grid and solve it."""
    dp, omega_plus, omega_minus = _discretize_pair(s_plus, s_minus, torus, mode)
    spec = ProblemSpec(
        dp.group, omega_plus, omega_minus,
        mode=mode, arithmetic=arithmetic, tolerance=tolerance,
    )
    return solve(spec), dp.warning


def sweep(
    s_plus: RealSet1D,
    s_minus: RealSet1D | str | None,
    circumference,
    grids: Iterable[int],
    mode: str = "turan",
    arithmetic: str = FLOAT,
    tolerance: float = 1e-9,
    max_workers: int | None = None,
) -> ConvergenceTable:
    """One solve per grid count; results are ordered by grid count."""
    grids = list(grids)
    circumference = Fraction(circumference)

    def run(n: int) -> SweepRow:
        start = time.perf_counter()
        torus = TorusSpec(circumference, n)
        sol, warning = solve_discretized(
            s_plus, s_minus, torus, mode, arithmetic, tolerance
        )
        return SweepRow(
            grid=n,
            step=float(torus.step),
            value=sol.value,
            gap=sol.gap,
            runtime=time.perf_counter() - start,
            status=sol.status,
            warning=warning,
            value_exact=sol.value_exact,
        )

    if len(grids) <= 1:
        rows = [run(n) for n in grids]
    else:
        with ThreadPoolExecutor(max_workers=max_workers or min(4, len(grids))) as pool:
            rows = list(pool.map(run, grids))
    return ConvergenceTable(tuple(rows))
