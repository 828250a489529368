"""The seven three-dimensional Lorentzian Lie algebra families and friends.

Each family is given by its bracket table on a pseudo-orthonormal basis
(e1, e2, e3) with e3 timelike, together with the parameter side conditions
that come with it: polynomial equality constraints that must vanish and
polynomials that must not vanish.  Structure constants are polynomials in
the shared variable table, so everything downstream (connections,
curvature, soliton systems) stays exact.

The family g4 carries a discrete parameter eta in {+1, -1}; it is
instantiated at construction time, so no polynomial ever contains a
symbolic eta (its defining relation eta^2 = 1 would otherwise leak
quotient-ring arithmetic into the whole pipeline).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .poly import DEFAULT_TABLE, Polynomial, PolynomialError, VariableTable, parse_polynomial

Vector = tuple[Polynomial, Polynomial, Polynomial]

FAMILY_IDS = ("g1", "g2", "g3", "g4", "g5", "g6", "g7")


@dataclass(frozen=True)
class MetricSignature:
    """Diagonal metric g(e_i, e_j) = eps_i * delta_ij with eps_i in {+1, -1}."""

    eps: tuple[int, int, int] = (1, 1, -1)

    def __post_init__(self):
        if any(e not in (1, -1) for e in self.eps):
            raise ValueError(f"signature entries must be +/-1, got {self.eps}")


LORENTZIAN = MetricSignature((1, 1, -1))

# Product structure J = diag(1, 1, -1): J e1 = e1, J e2 = e2, J e3 = -e3.
PRODUCT_STRUCTURE_J = (1, 1, -1)


@dataclass(frozen=True)
class StructureConstants:
    """Brackets [e_i, e_j] = sum_k c[i][j][k] e_k, antisymmetric in (i, j)."""

    c: tuple[tuple[Vector, Vector, Vector], ...]

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.c[i][j]


@dataclass(frozen=True)
class LieAlgebraFamily:
    family_id: str
    structure: StructureConstants
    metric: MetricSignature
    equality_constraints: tuple[Polynomial, ...]
    nonvanishing: tuple[Polynomial, ...]
    eta: Optional[int]
    table: VariableTable
    parameters: tuple[str, ...]  # variables occurring in brackets/constraints

    def describe(self) -> str:
        eta = f", eta={self.eta:+d}" if self.eta is not None else ""
        return f"{self.family_id}{eta}"


@dataclass(frozen=True)
class ParameterPoint:
    """A parameter assignment satisfying the family's side conditions."""

    values: dict[str, Union[Fraction, float]]
    exact: bool
    warning: bool = False  # set when exact solving fell back to floats


# Bracket tables: entries are expressions for ([e1,e2], [e1,e3], [e2,e3]).
_BRACKETS = {
    "g1": (("alpha", "0", "-beta"), ("-alpha", "-beta", "0"), ("beta", "alpha", "alpha")),
    "g2": (("0", "gamma", "-beta"), ("0", "-beta", "-gamma"), ("alpha", "0", "0")),
    "g3": (("0", "0", "-gamma"), ("0", "-beta", "0"), ("alpha", "0", "0")),
    "g4": (("0", "-1", "2*eta - beta"), ("0", "-beta", "1"), ("alpha", "0", "0")),
    "g5": (("0", "0", "0"), ("alpha", "beta", "0"), ("gamma", "delta", "0")),
    "g6": (("0", "alpha", "beta"), ("0", "gamma", "delta"), ("0", "0", "0")),
    "g7": (
        ("-alpha", "-beta", "-beta"),
        ("alpha", "beta", "beta"),
        ("gamma", "delta", "delta"),
    ),
}

_EQUALITY = {
    "g5": ("alpha*gamma + beta*delta",),
    "g6": ("alpha*gamma - beta*delta",),
    "g7": ("alpha*gamma",),
}

_NONVANISHING = {
    "g1": ("alpha",),
    "g2": ("gamma",),
    "g5": ("alpha + delta",),
    "g6": ("alpha + delta",),
    "g7": ("alpha + delta",),
}


def _antisymmetric_structure(
    table: VariableTable, pair_rows: dict[tuple[int, int], Vector]
) -> StructureConstants:
    zero: Vector = (table.zero, table.zero, table.zero)
    grid = [[zero for _ in range(3)] for _ in range(3)]
    for (i, j), vec in pair_rows.items():
        grid[i][j] = vec
        grid[j][i] = tuple(-p for p in vec)  # type: ignore[assignment]
    return StructureConstants(tuple(tuple(row) for row in grid))


def build_family(
    family_id: str,
    eta: Optional[int] = None,
    table: VariableTable = DEFAULT_TABLE,
) -> LieAlgebraFamily:
    """Construct one of g1..g7 over `table`.

    `eta` must be +1 or -1 for g4 and omitted otherwise.
    """
    if family_id not in _BRACKETS:
        raise ValueError(f"unknown family {family_id!r} (expected one of {FAMILY_IDS})")
    if family_id == "g4":
        if eta not in (1, -1):
            raise ValueError("g4 requires eta=+1 or eta=-1")
    elif eta is not None:
        raise ValueError(f"{family_id} does not take an eta branch")

    def prep(text: str) -> Polynomial:
        q = parse_polynomial(text, table)
        if eta is not None:
            q = q.substitute("eta", table.const(eta))
        return q

    rows = {
        (0, 1): tuple(prep(t) for t in _BRACKETS[family_id][0]),
        (0, 2): tuple(prep(t) for t in _BRACKETS[family_id][1]),
        (1, 2): tuple(prep(t) for t in _BRACKETS[family_id][2]),
    }
    structure = _antisymmetric_structure(table, rows)  # type: ignore[arg-type]
    equality = tuple(prep(t) for t in _EQUALITY.get(family_id, ()))
    nonvanishing = tuple(prep(t) for t in _NONVANISHING.get(family_id, ()))

    used: set[str] = set()
    for vec in rows.values():
        for q in vec:
            used |= q.variables()
    for q in equality + nonvanishing:
        used |= q.variables()
    parameters = tuple(n for n in table.names if n in used)

    return LieAlgebraFamily(
        family_id=family_id,
        structure=structure,
        metric=LORENTZIAN,
        equality_constraints=equality,
        nonvanishing=nonvanishing,
        eta=eta,
        table=table,
        parameters=parameters,
    )


def custom_family(
    text: str,
    table: VariableTable = DEFAULT_TABLE,
    family_id: str = "custom",
) -> LieAlgebraFamily:
    """Build a custom algebra from its key/value description.

    Recognized keys (one `key = value` pair per line, '#' starts a comment):

        bracket.12 = expr, expr, expr     components of [e1, e2]
        bracket.13 = expr, expr, expr     components of [e1, e3]
        bracket.23 = expr, expr, expr     components of [e2, e3]
        constraints = expr; expr; ...     polynomials required to vanish
        nonvanishing = expr; expr; ...    polynomials required to be nonzero

    Missing bracket keys default to zero.  The Jacobi identity is not
    enforced; use `jacobi_residuals` to inspect it.
    """
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()

    def parse_vector(key: str) -> Vector:
        value = entries.get(key)
        if value is None:
            return (table.zero, table.zero, table.zero)
        parts = value.split(",")
        if len(parts) != 3:
            raise ValueError(f"{key}: expected three comma-separated expressions")
        return tuple(parse_polynomial(part, table) for part in parts)  # type: ignore[return-value]

    def parse_list(key: str) -> tuple[Polynomial, ...]:
        value = entries.get(key, "")
        return tuple(
            parse_polynomial(part, table) for part in value.split(";") if part.strip()
        )

    rows = {
        (0, 1): parse_vector("bracket.12"),
        (0, 2): parse_vector("bracket.13"),
        (1, 2): parse_vector("bracket.23"),
    }
    structure = _antisymmetric_structure(table, rows)
    equality = parse_list("constraints")
    nonvanishing = parse_list("nonvanishing")

    used: set[str] = set()
    for vec in rows.values():
        for q in vec:
            used |= q.variables()
    for q in equality + nonvanishing:
        used |= q.variables()

    return LieAlgebraFamily(
        family_id=family_id,
        structure=structure,
        metric=LORENTZIAN,
        equality_constraints=equality,
        nonvanishing=nonvanishing,
        eta=None,
        table=table,
        parameters=tuple(n for n in table.names if n in used),
    )


def load_family(spec: str, table: VariableTable = DEFAULT_TABLE, eta: Optional[int] = None):
    """Resolve a family selector: 'g1'..'g7' or 'custom:<path>'."""
    if spec.startswith("custom:"):
        path = spec.split(":", 1)[1]
        with open(path, "r", encoding="utf-8") as fh:
            return custom_family(fh.read(), table)
    return build_family(spec, eta=eta, table=table)


def bracket(fam: LieAlgebraFamily, x: Sequence[Polynomial], y: Sequence[Polynomial]) -> Vector:
    """Bilinear, antisymmetric extension of the bracket table to vectors."""
    table = fam.table
    out = [table.zero, table.zero, table.zero]
    for i in range(3):
        if x[i].is_zero:
            continue
        for j in range(3):
            if i == j or y[j].is_zero:
                continue
            coeff = x[i] * y[j]
            for k, comp in enumerate(fam.structure.c[i][j]):
                if not comp.is_zero:
                    out[k] = out[k] + coeff * comp
    return (out[0], out[1], out[2])


def basis_vector(table: VariableTable, i: int) -> Vector:
    vec = [table.zero, table.zero, table.zero]
    vec[i] = table.one
    return (vec[0], vec[1], vec[2])


def jacobi_residuals(fam: LieAlgebraFamily) -> Vector:
    """Components of [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2].

    Identically zero exactly when the table defines a Lie algebra; for
    custom algebras the residuals are reported, never enforced.
    """
    table = fam.table
    e = [basis_vector(table, i) for i in range(3)]
    total = [table.zero, table.zero, table.zero]
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        inner = bracket(fam, e[i], e[j])
        outer = bracket(fam, inner, e[k])
        for m in range(3):
            total[m] = total[m] + outer[m]
    return (total[0], total[1], total[2])


# -- constrained parameter sampling -------------------------------------------

# Exact draws come from {-3..3} scaled by 1/d for d in {1,2,3}.
_NUMERATORS = tuple(range(-3, 4))
_DENOMINATORS = (1, 2, 3)


def _linear_solve_var(constraint: Polynomial) -> Optional[str]:
    """The last table variable in which `constraint` is linear, if any."""
    chosen = None
    for name in constraint.table.names:
        if constraint.degree_in(name) == 1:
            coeff = constraint.coefficient_of(name, 1)
            if name not in coeff.variables():
                chosen = name
    return chosen


def solve_constraint_for(
    constraint: Polynomial, var: str, values: dict[str, Union[Fraction, float]]
):
    """Solve constraint == 0 for `var` given the other values.

    Returns the solved value, the string "free" when the constraint is
    already satisfied for every value of `var`, or None when inconsistent.
    """
    if constraint.degree_in(var) != 1:
        raise PolynomialError(f"constraint is not linear in {var!r}")
    a = constraint.coefficient_of(var, 1).evaluate(values)
    b = constraint.coefficient_of(var, 0).evaluate(values)
    if a != 0:
        return -b / a
    return "free" if b == 0 else None


def sample_parameters(
    fam: LieAlgebraFamily,
    seed: int,
    count: int,
    mode: str = "exact",
) -> list[ParameterPoint]:
    """Deterministic parameter points satisfying the family side conditions.

    Exact mode solves each equality constraint for the last variable that
    appears linearly in it and draws the rest from a small rational pool;
    when no such variable exists the sampler falls back to float search and
    flags the points.  Nonvanishing conditions are enforced by rejection.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    solve_vars: dict[Polynomial, Optional[str]] = {
        con: _linear_solve_var(con) for con in fam.equality_constraints
    }
    degraded = mode == "float" or any(v is None for v in solve_vars.values())

    points: list[ParameterPoint] = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 200 * count + 1000:
            raise RuntimeError(f"sampling for {fam.family_id} keeps violating constraints")
        values: dict[str, Union[Fraction, float]] = {}
        solved = {v for v in solve_vars.values() if v is not None}
        for name in fam.parameters:
            if name in solved:
                continue
            if degraded:
                values[name] = rng.uniform(-3.0, 3.0)
            else:
                values[name] = Fraction(rng.choice(_NUMERATORS), rng.choice(_DENOMINATORS))
        ok = True
        for con, var in solve_vars.items():
            if var is None:
                if not _float_project(con, values, rng):
                    ok = False
                    break
                continue
            sol = solve_constraint_for(con, var, values)
            if sol is None:
                ok = False
                break
            if sol == "free":
                values[var] = (
                    rng.uniform(-3.0, 3.0)
                    if degraded
                    else Fraction(rng.choice(_NUMERATORS), rng.choice(_DENOMINATORS))
                )
            else:
                values[var] = sol
        if not ok:
            continue
        tol = 1e-6 if degraded else 0
        if any(abs(q.evaluate(values)) <= tol for q in fam.nonvanishing):
            continue
        points.append(ParameterPoint(values=values, exact=not degraded, warning=degraded and mode == "exact"))
    return points


def _float_project(
    constraint: Polynomial, values: dict[str, Union[Fraction, float]], rng: random.Random
) -> bool:
    """Numerically solve `constraint` == 0 for its last present variable."""
    present = [n for n in constraint.table.names if n in constraint.variables()]
    if not present:
        return abs(constraint.evaluate(values)) < 1e-9
    var = present[-1]

    def f(x: float) -> float:
        probe = dict(values)
        probe[var] = x
        return float(constraint.evaluate(probe))

    xs = [(-10.0 + 20.0 * k / 128.0) for k in range(129)]
    prev_x, prev_f = xs[0], f(xs[0])
    for x in xs[1:]:
        fx = f(x)
        if prev_f == 0.0:
            values[var] = prev_x
            return True
        if prev_f * fx < 0:
            lo, hi, flo = prev_x, x, prev_f
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if flo * fm <= 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            values[var] = 0.5 * (lo + hi)
            return True
        prev_x, prev_f = x, fx
    return False
