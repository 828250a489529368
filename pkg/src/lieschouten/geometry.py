"""Connections and curvature for left-invariant metrics in dimension 3.

Everything is computed symbolically from the structure constants:

* the Levi-Civita connection via the Koszul formula
      2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y),
* the canonical connection   nabla0_X Y = nabla_X Y - 1/2 (nabla_X J) J Y,
* the Kobayashi-Nomizu connection
      nabla1_X Y = nabla0_X Y - 1/4 [ (nabla_Y J) J X - (nabla_{JY} J) X ],
* curvature  R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
* the Ricci form
      rho(X,Y) = -g(R(X,e1)Y,e1) - g(R(X,e2)Y,e2) + g(R(X,e3)Y,e3),
  its symmetrization, the epsilon-weighted scalar curvature, and the
  lambda0-generalized Schouten form rho - s*lambda0*g.

Sign caveat: the catalogued reference matrices for the Levi-Civita
connection follow the opposite curvature sign convention from the
canonical/Kobayashi-Nomizu series (R(X,Y) = nabla_[X,Y] - [nabla_X,
nabla_Y] versus the commutator-first form above).  `ricci_form` folds that
single sign into the Levi-Civita branch so both series of catalogued
matrices are reproduced as exact identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebras import PRODUCT_STRUCTURE_J, LieAlgebraFamily, MetricSignature
from .poly import Polynomial

LEVI_CIVITA = "lc"
CANONICAL = "canonical"
KOBAYASHI_NOMIZU = "kn"
CONNECTION_KINDS = (LEVI_CIVITA, CANONICAL, KOBAYASHI_NOMIZU)

Matrix3 = tuple[tuple[Polynomial, ...], ...]
Array3 = tuple[tuple[tuple[Polynomial, ...], ...], ...]


def _freeze3(rows) -> Matrix3:
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class ConnectionCoefficients:
    """Gamma[i][j][k]: nabla_{e_i} e_j = sum_k Gamma[i][j][k] e_k."""

    kind: str
    gamma: Array3


@dataclass(frozen=True)
class CurvatureTensor:
    """r[i][j][k][l]: R(e_i, e_j) e_k = sum_l r[i][j][k][l] e_l."""

    r: tuple[Array3, ...]


@dataclass(frozen=True)
class BilinearForm:
    entries: Matrix3

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        return self.entries[ij[0]][ij[1]]

    @property
    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i] for i in range(3) for j in range(i)
        )


@dataclass(frozen=True)
class OperatorMatrix:
    """Row convention: row i holds the components of the image of e_i."""

    entries: Matrix3

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        return self.entries[ij[0]][ij[1]]


def levi_civita(fam: LieAlgebraFamily) -> ConnectionCoefficients:
    """Koszul-formula Levi-Civita connection of the family's metric."""
    c = fam.structure.c
    eps = fam.metric.eps
    half = Fraction(1, 2)
    gamma = [[[None] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            for k in range(3):
                # 2 eps_k Gamma^k_ij = C^k_ij eps_k - C^i_jk eps_i + C^j_ki eps_j
                val = (
                    c[i][j][k] * eps[k]
                    - c[j][k][i] * eps[i]
                    + c[k][i][j] * eps[j]
                ) * (half * eps[k])
                gamma[i][j][k] = val
    return ConnectionCoefficients(LEVI_CIVITA, _freeze3([_freeze3(g) for g in gamma]))


def nabla_j(conn: ConnectionCoefficients, fam: LieAlgebraFamily) -> tuple[OperatorMatrix, ...]:
    """The three operators (nabla_{e_i} J), rows as images of e_j.

    (nabla_{e_i} J) e_j = nabla_{e_i}(J e_j) - J nabla_{e_i} e_j, which for
    diagonal J reduces to Gamma[i][j][k] (sigma_j - sigma_k) on e_k.
    """
    sigma = PRODUCT_STRUCTURE_J
    out = []
    for i in range(3):
        rows = [
            [conn.gamma[i][j][k] * (sigma[j] - sigma[k]) for k in range(3)]
            for j in range(3)
        ]
        out.append(OperatorMatrix(_freeze3(rows)))
    return tuple(out)


def canonical_connection(fam: LieAlgebraFamily) -> ConnectionCoefficients:
    """nabla0 = nabla - 1/2 (nabla J) J, which parallelizes J and the metric."""
    lc = levi_civita(fam)
    nj = nabla_j(lc, fam)
    sigma = PRODUCT_STRUCTURE_J
    half = Fraction(1, 2)
    gamma = [
        [
            [
                lc.gamma[i][j][k] - half * sigma[j] * nj[i].entries[j][k]
                for k in range(3)
            ]
            for j in range(3)
        ]
        for i in range(3)
    ]
    return ConnectionCoefficients(CANONICAL, _freeze3([_freeze3(g) for g in gamma]))


def kobayashi_nomizu(fam: LieAlgebraFamily) -> ConnectionCoefficients:
    """nabla1 = nabla0 - 1/4 [(nabla_Y J) J X - (nabla_{JY} J) X] on (X, Y)."""
    lc = levi_civita(fam)
    can = canonical_connection(fam)
    nj = nabla_j(lc, fam)
    sigma = PRODUCT_STRUCTURE_J
    quarter = Fraction(1, 4)
    gamma = [
        [
            [
                can.gamma[i][j][k]
                - quarter * (sigma[i] - sigma[j]) * nj[j].entries[i][k]
                for k in range(3)
            ]
            for j in range(3)
        ]
        for i in range(3)
    ]
    return ConnectionCoefficients(KOBAYASHI_NOMIZU, _freeze3([_freeze3(g) for g in gamma]))


def connection(fam: LieAlgebraFamily, kind: str) -> ConnectionCoefficients:
    if kind == LEVI_CIVITA:
        return levi_civita(fam)
    if kind == CANONICAL:
        return canonical_connection(fam)
    if kind == KOBAYASHI_NOMIZU:
        return kobayashi_nomizu(fam)
    raise ValueError(f"unknown connection kind {kind!r}")


def curvature(conn: ConnectionCoefficients, fam: LieAlgebraFamily) -> CurvatureTensor:
    g = conn.gamma
    c = fam.structure.c
    zero = fam.table.zero
    planes = []
    for i in range(3):
        plane_i = []
        for j in range(3):
            plane_j = []
            for k in range(3):
                row = []
                for l in range(3):
                    if i == j:
                        row.append(zero)
                        continue
                    acc = zero
                    for m in range(3):
                        acc = acc + g[j][k][m] * g[i][m][l] - g[i][k][m] * g[j][m][l]
                        acc = acc - c[i][j][m] * g[m][k][l]
                    row.append(acc)
                plane_j.append(tuple(row))
            plane_i.append(tuple(plane_j))
        planes.append(tuple(plane_i))
    return CurvatureTensor(tuple(planes))


def ricci_form(conn: ConnectionCoefficients, fam: LieAlgebraFamily) -> BilinearForm:
    """rho(e_i, e_j) with the weights (-1, -1, +1) over the basis trace.

    For the Levi-Civita kind the contraction is negated; see the module
    docstring for why the two catalogued series need opposite signs.
    """
    riem = curvature(conn, fam)
    eps = fam.metric.eps
    weights = tuple(-e for e in eps)  # (-1, -1, +1) in Lorentzian signature
    sign = -1 if conn.kind == LEVI_CIVITA else 1
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = fam.table.zero
            for a in range(3):
                # g(R(e_i, e_a) e_j, e_a) = R^a_{iaj} eps_a
                acc = acc + weights[a] * eps[a] * riem.r[i][a][j][a]
            row.append(sign * acc)
        rows.append(row)
    return BilinearForm(_freeze3(rows))


def symmetrize(form: BilinearForm) -> BilinearForm:
    half = Fraction(1, 2)
    rows = [
        [(form.entries[i][j] + form.entries[j][i]) * half for j in range(3)]
        for i in range(3)
    ]
    return BilinearForm(_freeze3(rows))


def ricci_operator(form: BilinearForm, metric: MetricSignature) -> OperatorMatrix:
    """Index raising: entry (i, j) = eps_j * form(e_i, e_j)."""
    rows = [
        [form.entries[i][j] * metric.eps[j] for j in range(3)] for i in range(3)
    ]
    return OperatorMatrix(_freeze3(rows))


def scalar_curvature(form: BilinearForm) -> Polynomial:
    """Epsilon-weighted trace: form(e1,e1) + form(e2,e2) - form(e3,e3)."""
    return form.entries[0][0] + form.entries[1][1] - form.entries[2][2]


def schouten_form(form: BilinearForm, s: Polynomial, lambda0: Polynomial) -> BilinearForm:
    metric_diag = (1, 1, -1)
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            entry = form.entries[i][j]
            if i == j:
                entry = entry - s * lambda0 * metric_diag[i]
            row.append(entry)
        rows.append(row)
    return BilinearForm(_freeze3(rows))


def torsion(conn: ConnectionCoefficients, fam: LieAlgebraFamily) -> Array3:
    """T(e_i, e_j) components: Gamma^k_ij - Gamma^k_ji - C^k_ij."""
    g = conn.gamma
    c = fam.structure.c
    return _freeze_array3(
        [
            [[g[i][j][k] - g[j][i][k] - c[i][j][k] for k in range(3)] for j in range(3)]
            for i in range(3)
        ]
    )


def metric_compatibility_residual(
    conn: ConnectionCoefficients, fam: LieAlgebraFamily
) -> Array3:
    """(nabla_{e_i} g)(e_j, e_k) = -Gamma^k_ij eps_k - Gamma^j_ik eps_j."""
    g = conn.gamma
    eps = fam.metric.eps
    return _freeze_array3(
        [
            [
                [-(g[i][j][k] * eps[k]) - (g[i][k][j] * eps[j]) for k in range(3)]
                for j in range(3)
            ]
            for i in range(3)
        ]
    )


def _freeze_array3(arr) -> Array3:
    return tuple(_freeze3(plane) for plane in arr)


def ricci_pipeline(fam: LieAlgebraFamily, kind: str):
    """The (form, operator, scalar) triple the reference matrices display.

    The Levi-Civita Ricci form is already symmetric; for the other two
    connections the raw form is symmetrized before the operator is built.
    """
    conn = connection(fam, kind)
    rho = ricci_form(conn, fam)
    form = rho if kind == LEVI_CIVITA else symmetrize(rho)
    op = ricci_operator(form, fam.metric)
    s = scalar_curvature(form)
    return form, op, s
