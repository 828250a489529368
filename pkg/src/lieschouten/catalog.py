"""Catalogued reference data and the one-shot verification driver.

The catalog data file (data/catalog.txt) holds, as parseable expression
strings, every reference Ricci operator matrix, every scalar curvature,
and every classification case for the seven families under the three
connections.  Storing them as data keeps transcriptions diffable and makes
the catalog itself the test oracle.

`verify_all` replays the whole battery: structural identities, matrix and
scalar fidelity, case verification with negative controls, the
no-solutions scan, per-case witness evidence, and completeness scans that
look for solvable points outside the catalogued classification.
"""

from __future__ import annotations

import importlib.resources
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .algebras import LieAlgebraFamily, build_family
from .geometry import (
    CANONICAL,
    CONNECTION_KINDS,
    KOBAYASHI_NOMIZU,
    LEVI_CIVITA,
    canonical_connection,
    connection,
    curvature,
    kobayashi_nomizu,
    levi_civita,
    metric_compatibility_residual,
    nabla_j,
    ricci_form,
    ricci_pipeline,
    torsion,
)
from .poly import DEFAULT_TABLE, ParseError, Polynomial, PolynomialError, VariableTable, parse_polynomial
from .soliton import (
    DEFAULT_LAMBDA0_GRID,
    CSolution,
    TheoremCase,
    case_matches_point,
    negative_control,
    resolve_witness,
    scan,
    solve_for_c,
    soliton_system,
    verify_case,
)

Value = Union[Fraction, float]

KIND_ALIASES = {"lc": LEVI_CIVITA, "canonical": CANONICAL, "kn": KOBAYASHI_NOMIZU}

MATRIX_LABELS = (
    "3.9", "3.12", "3.18", "3.23", "3.27", "3.31", "3.36",
    "4.16", "4.19", "4.21", "4.27", "4.31", "4.35", "4.39",
    "4.44", "4.45", "4.48", "4.51", "4.54", "4.58", "4.62", "4.69",
)


class CatalogError(Exception):
    """A fixture failed to parse; the message names the offending label."""


@dataclass(frozen=True)
class MatrixFixture:
    label: str
    family_id: str
    kind: str
    entries: tuple[tuple[Polynomial, ...], ...]


@dataclass(frozen=True)
class ScalarFixture:
    label: str
    family_id: str
    kind: str
    expr: Polynomial
    suspect: bool = False
    variant: Optional[Polynomial] = None
    note: str = ""


@dataclass(frozen=True)
class Catalog:
    matrices: tuple[MatrixFixture, ...]
    scalars: tuple[ScalarFixture, ...]
    cases: tuple[TheoremCase, ...]

    def matrix(self, label: str) -> MatrixFixture:
        for m in self.matrices:
            if m.label == label:
                return m
        raise KeyError(label)

    def case(self, label: str) -> TheoremCase:
        for c in self.cases:
            if c.label == label:
                return c
        raise KeyError(label)


# -- data file parsing ---------------------------------------------------------

_SECTION_RE = re.compile(r"^\[(matrix|scalar|case)\s+([^\]]+)\]$")
_AUX_NAMES = ("a1", "a2", "a3", "b1", "b2", "b3")


def _read_sections(text: str) -> list[tuple[str, str, dict[str, str], int]]:
    sections = []
    current: Optional[tuple[str, str, dict[str, str], int]] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _SECTION_RE.match(line.strip())
        if m:
            current = (m.group(1), m.group(2).strip(), {}, lineno)
            sections.append(current)
            continue
        if current is None:
            raise CatalogError(f"line {lineno}: content before any section header")
        if "=" not in line:
            raise CatalogError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        current[2][key.strip()] = value.strip()
    return sections


def _parse_defs(text: str, table: VariableTable, label: str) -> dict[str, Polynomial]:
    out: dict[str, Polynomial] = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if ":=" not in part:
            raise CatalogError(f"[{label}] defs entry {part!r} lacks ':='")
        name, expr = part.split(":=", 1)
        out[name.strip()] = parse_polynomial(expr, table)
    return out


def _expression(
    text: str, defs: dict[str, Polynomial], aux_table: VariableTable, label: str
) -> Polynomial:
    try:
        q = parse_polynomial(text, aux_table)
        for name, rhs in defs.items():
            q = q.substitute(name, rhs)
        return q.project_to(DEFAULT_TABLE)
    except (ParseError, PolynomialError) as err:
        raise CatalogError(f"[{label}] cannot parse {text!r}: {err}") from err


def _parse_assignments(
    text: str, defs, aux_table, label: str, sep: str = ";"
) -> tuple[tuple[str, Polynomial], ...]:
    out = []
    for part in text.split(sep):
        part = part.strip()
        if not part:
            continue
        if ":=" not in part:
            raise CatalogError(f"[{label}] assignment {part!r} lacks ':='")
        name, expr = part.split(":=", 1)
        out.append((name.strip(), _expression(expr, defs, aux_table, label)))
    return tuple(out)


def _parse_reductions(text: str, defs, aux_table, label: str):
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if ":=" not in part:
            raise CatalogError(f"[{label}] reduction {part!r} lacks ':='")
        lhs, rhs = part.split(":=", 1)
        lhs = lhs.strip()
        if not lhs.endswith("^2"):
            raise CatalogError(f"[{label}] reduction lhs {lhs!r} must be var^2")
        out.append((lhs[:-2].strip(), _expression(rhs, defs, aux_table, label)))
    return tuple(out)


def _parse_witness(text: str, label: str) -> tuple[tuple[str, object], ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise CatalogError(f"[{label}] witness entry {part!r} lacks '='")
        name, value = part.split("=", 1)
        name, value = name.strip(), value.strip()
        if "." in value:
            # decimal witnesses stay floats (they mark irrational loci)
            out.append((name, float(value)))
            continue
        try:
            out.append((name, Fraction(value)))
            continue
        except ValueError:
            pass
        out.append((name, parse_polynomial(value, DEFAULT_TABLE)))
    return tuple(out)


def _catalog_text() -> str:
    return (
        importlib.resources.files("lieschouten")
        .joinpath("data/catalog.txt")
        .read_text(encoding="utf-8")
    )


def load_catalog(text: Optional[str] = None) -> Catalog:
    """Parse the catalog; raises CatalogError naming any failing label."""
    if text is None:
        text = _catalog_text()
    aux_table = DEFAULT_TABLE.extended(_AUX_NAMES)
    matrices: list[MatrixFixture] = []
    scalars: list[ScalarFixture] = []
    cases: list[TheoremCase] = []
    for stype, label, kv, _ in _read_sections(text):
        family_id = kv.get("family", "")
        kind = KIND_ALIASES.get(kv.get("kind", ""), kv.get("kind", ""))
        defs = _parse_defs(kv.get("defs", ""), aux_table, label)
        if stype == "matrix":
            rows = []
            for key in ("row1", "row2", "row3"):
                if key not in kv:
                    raise CatalogError(f"[matrix {label}] missing {key}")
                parts = kv[key].split(",")
                if len(parts) != 3:
                    raise CatalogError(f"[matrix {label}] {key} needs 3 entries")
                rows.append(tuple(_expression(t, defs, aux_table, f"matrix {label}") for t in parts))
            matrices.append(MatrixFixture(label, family_id, kind, tuple(rows)))
        elif stype == "scalar":
            if "expr" not in kv:
                raise CatalogError(f"[scalar {label}] missing expr")
            scalars.append(
                ScalarFixture(
                    label,
                    family_id,
                    kind,
                    _expression(kv["expr"], defs, aux_table, f"scalar {label}"),
                    suspect=kv.get("suspect", "no") == "yes",
                    variant=(
                        _expression(kv["variant_expr"], defs, aux_table, f"scalar {label}")
                        if "variant_expr" in kv
                        else None
                    ),
                    note=kv.get("note", ""),
                )
            )
        else:  # case
            clabel = f"case {label}"
            c_text = kv.get("c", "").strip()
            if kv.get("empty", "no") == "yes":
                c_expr = None
            elif not c_text:
                raise CatalogError(f"[{clabel}] missing c")
            else:
                c_expr = None if c_text == "free" else _expression(c_text, defs, aux_table, clabel)
            variant_c = kv.get("variant_c")
            cases.append(
                TheoremCase(
                    label=label,
                    family_id=family_id,
                    kind=kind,
                    substitutions=_parse_assignments(kv.get("subs", ""), defs, aux_table, clabel),
                    c_expr=c_expr,
                    reductions=_parse_reductions(kv.get("reduce", ""), defs, aux_table, clabel),
                    nonzero=tuple(
                        _expression(t, defs, aux_table, clabel)
                        for t in kv.get("nonzero", "").split(";")
                        if t.strip()
                    ),
                    sample_subs=_parse_assignments(kv.get("sample", ""), defs, aux_table, clabel),
                    witness=_parse_witness(kv.get("witness", ""), clabel),
                    suspect=kv.get("suspect", "no") == "yes",
                    empty=kv.get("empty", "no") == "yes",
                    variant_substitutions=(
                        _parse_assignments(kv["variant_subs"], defs, aux_table, clabel)
                        if "variant_subs" in kv
                        else None
                    ),
                    variant_c=(
                        _expression(variant_c, defs, aux_table, clabel) if variant_c else None
                    ),
                    variant_reductions=(
                        _parse_reductions(kv["variant_reduce"], defs, aux_table, clabel)
                        if "variant_reduce" in kv
                        else None
                    ),
                    note=kv.get("note", ""),
                )
            )
    return Catalog(tuple(matrices), tuple(scalars), tuple(cases))


# -- verification driver --------------------------------------------------------


@dataclass(frozen=True)
class VerifyRecord:
    section: str  # structural | matrix | scalar | case | control | witness | scan
    label: str
    status: str  # pass | fail | warn | skip
    method: str
    detail: str
    selectors: tuple[str, ...]


@dataclass(frozen=True)
class VerifySummary:
    records: tuple[VerifyRecord, ...]
    seed: int

    @property
    def failed(self) -> tuple[VerifyRecord, ...]:
        return tuple(r for r in self.records if r.status == "fail")

    @property
    def warned(self) -> tuple[VerifyRecord, ...]:
        return tuple(r for r in self.records if r.status == "warn")

    @property
    def ok(self) -> bool:
        return not self.failed

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "warn": 0, "skip": 0}
        for r in self.records:
            out[r.status] = out.get(r.status, 0) + 1
        return out


def _family_branches(family_id: str, table: VariableTable) -> list[LieAlgebraFamily]:
    if family_id == "g4":
        return [build_family("g4", eta=1, table=table), build_family("g4", eta=-1, table=table)]
    return [build_family(family_id, table=table)]


def _kind_tag(kind: str) -> str:
    return {LEVI_CIVITA: "lc", CANONICAL: "can", KOBAYASHI_NOMIZU: "kn"}[kind]


def _theorem_prefix(label: str) -> str:
    return label.rsplit(".", 1)[0] if label.count(".") >= 2 else label


def _matches_only(selectors: Sequence[str], only: Optional[str]) -> bool:
    return only is None or only in selectors


def _compare_mod_constraints(
    computed: Polynomial, expected: Polynomial, fam: LieAlgebraFamily
) -> tuple[bool, bool]:
    """(equal, used_constraints): exact equality, possibly modulo constraints."""
    diff = computed - expected
    if diff.is_zero:
        return True, False
    if fam.equality_constraints:
        reduced = diff.reduce_by_relations(fam.equality_constraints)
        if reduced.is_zero:
            return True, True
    return False, False


def _instantiate_eta(q: Polynomial, eta: Optional[int], table: VariableTable) -> Polynomial:
    if eta is not None and "eta" in q.variables():
        return q.substitute("eta", table.const(eta))
    return q


def _structural_records(table: VariableTable, only: Optional[str]) -> list[VerifyRecord]:
    records = []
    for fid in ("g1", "g2", "g3", "g4", "g5", "g6", "g7"):
        for fam in _family_branches(fid, table):
            selectors = (fam.describe(), fid, "structural")
            if not _matches_only(selectors, only):
                continue
            problems = []
            lc = levi_civita(fam)
            if any(
                not q.is_zero for plane in torsion(lc, fam) for row in plane for q in row
            ):
                problems.append("lc torsion")
            if any(
                not q.is_zero
                for plane in metric_compatibility_residual(lc, fam)
                for row in plane
                for q in row
            ):
                problems.append("lc metric residual")
            can = canonical_connection(fam)
            if any(
                not q.is_zero
                for plane in metric_compatibility_residual(can, fam)
                for row in plane
                for q in row
            ):
                problems.append("canonical metric residual")
            for kind, conn in (("canonical", can), ("kn", kobayashi_nomizu(fam))):
                if any(
                    not q.is_zero for m in nabla_j(conn, fam) for row in m.entries for q in row
                ):
                    problems.append(f"{kind} nabla-J")
            for kind in CONNECTION_KINDS:
                riem = curvature(connection(fam, kind), fam)
                if any(
                    not (riem.r[i][j][k][l] + riem.r[j][i][k][l]).is_zero
                    for i in range(3)
                    for j in range(3)
                    for k in range(3)
                    for l in range(3)
                ):
                    problems.append(f"{_kind_tag(kind)} curvature antisymmetry")
            if not ricci_form(lc, fam).is_symmetric:
                problems.append("lc ricci symmetry")
            records.append(
                VerifyRecord(
                    section="structural",
                    label=fam.describe(),
                    status="fail" if problems else "pass",
                    method="identity",
                    detail="; ".join(problems) if problems else "all identities hold",
                    selectors=selectors,
                )
            )
    return records


def _matrix_records(catalog: Catalog, table: VariableTable, only: Optional[str]) -> list[VerifyRecord]:
    records = []
    for fixture in catalog.matrices:
        tag = f"{fixture.family_id}-{_kind_tag(fixture.kind)}"
        selectors = (fixture.label, fixture.family_id, tag, "matrix")
        if not _matches_only(selectors, only):
            continue
        status = "pass"
        used_constraints = False
        details = []
        for fam in _family_branches(fixture.family_id, table):
            _, op, _ = ricci_pipeline(fam, fixture.kind)
            for i in range(3):
                for j in range(3):
                    expected = _instantiate_eta(fixture.entries[i][j], fam.eta, table)
                    equal, used = _compare_mod_constraints(op.entries[i][j], expected, fam)
                    used_constraints = used_constraints or used
                    if not equal:
                        status = "fail"
                        details.append(
                            f"{fam.describe()} entry ({i+1},{j+1}): computed {op.entries[i][j]}, expected {expected}"
                        )
        method = "exact-mod-constraints" if used_constraints else "exact"
        records.append(
            VerifyRecord(
                section="matrix",
                label=fixture.label,
                status=status,
                method=method,
                detail="; ".join(details) if details else f"operator matches ({tag})",
                selectors=selectors,
            )
        )
    # the two stored forms of the g4 Kobayashi-Nomizu matrix must agree
    pair_selectors = ("4.44", "4.45", "4.44=4.45", "g4", "g4-kn", "matrix")
    if not _matches_only(pair_selectors, only):
        return records
    try:
        m_def = catalog.matrix("4.44")
        m_flat = catalog.matrix("4.45")
    except KeyError:
        return records
    same = all(
        m_def.entries[i][j] == m_flat.entries[i][j] for i in range(3) for j in range(3)
    )
    records.append(
        VerifyRecord(
            section="matrix",
            label="4.44=4.45",
            status="pass" if same else "fail",
            method="exact",
            detail="auxiliary-symbol form expands to the flat form"
            if same
            else "forms disagree after expanding the auxiliaries",
            selectors=pair_selectors,
        )
    )
    return records


def _scalar_records(catalog: Catalog, table: VariableTable, only: Optional[str]) -> list[VerifyRecord]:
    records = []
    for fixture in catalog.scalars:
        selectors = (fixture.label, fixture.family_id, "scalar")
        if not _matches_only(selectors, only):
            continue
        stated_ok = True
        variant_ok = fixture.variant is not None
        details = []
        for fam in _family_branches(fixture.family_id, table):
            _, _, s = ricci_pipeline(fam, fixture.kind)
            expected = _instantiate_eta(fixture.expr, fam.eta, table)
            equal, _ = _compare_mod_constraints(s, expected, fam)
            if not equal:
                stated_ok = False
                details.append(f"{fam.describe()}: computed {s}, stated {expected}")
            if fixture.variant is not None:
                v_expected = _instantiate_eta(fixture.variant, fam.eta, table)
                v_equal, _ = _compare_mod_constraints(s, v_expected, fam)
                variant_ok = variant_ok and v_equal
        if stated_ok:
            status = "pass"
            detail = "scalar curvature matches"
        elif fixture.suspect and variant_ok:
            status = "warn"
            detail = "; ".join(details) + "; variant matches"
            if fixture.note:
                detail += f" [{fixture.note}]"
        else:
            status = "fail"
            detail = "; ".join(details)
        records.append(
            VerifyRecord(
                section="scalar",
                label=fixture.label,
                status=status,
                method="exact",
                detail=detail,
                selectors=selectors,
            )
        )
    return records


def _format_point(values: dict[str, Value]) -> str:
    parts = []
    for name in sorted(values):
        v = values[name]
        parts.append(f"{name}={v}")
    return ", ".join(parts)


def _case_records(
    catalog: Catalog,
    table: VariableTable,
    seed: int,
    tolerance: float,
    sample_count: int,
    only: Optional[str],
) -> list[VerifyRecord]:
    records = []
    for case in catalog.cases:
        tag = f"{case.family_id}-{_kind_tag(case.kind)}"
        selectors = (case.label, _theorem_prefix(case.label), case.family_id, tag, "case")
        if not _matches_only(selectors, only):
            continue
        report = verify_case(
            case, table=table, seed=seed, sample_count=sample_count, tolerance=tolerance
        )
        if case.empty:
            records.append(
                VerifyRecord(
                    section="case",
                    label=case.label,
                    status="pass" if report.ok else "fail",
                    method=report.method,
                    detail=report.detail,
                    selectors=selectors,
                )
            )
            continue
        detail = f"stated: {report.method}"
        if report.variant_method is not None:
            detail += f"; variant: {report.variant_method}"
        if report.counterexample:
            detail += f"; counterexample {_format_point(report.counterexample)}"
        if case.note:
            detail += f" [{case.note}]"
        if case.suspect:
            status = "warn" if report.ok else "fail"
        else:
            status = "pass" if report.ok and report.method in ("exact", "reduced") else "fail"
        records.append(
            VerifyRecord(
                section="case",
                label=case.label,
                status=status,
                method=report.method,
                detail=detail,
                selectors=selectors,
            )
        )
    return records


def _control_records(
    catalog: Catalog, table: VariableTable, tolerance: float, only: Optional[str]
) -> list[VerifyRecord]:
    records = []
    for case in catalog.cases:
        tag = f"{case.family_id}-{_kind_tag(case.kind)}"
        selectors = (case.label, _theorem_prefix(case.label), case.family_id, tag, "control")
        if not _matches_only(selectors, only):
            continue
        report = negative_control(case, table=table, tolerance=tolerance)
        status = "skip" if report.method == "skipped" else ("pass" if report.ok else "fail")
        records.append(
            VerifyRecord(
                section="control",
                label=case.label,
                status=status,
                method=report.method,
                detail=report.detail,
                selectors=selectors,
            )
        )
    return records


def _witness_records(
    catalog: Catalog, table: VariableTable, tolerance: float, only: Optional[str]
) -> list[VerifyRecord]:
    """Each stated case must be witnessed by a solvable point in its locus."""
    records = []
    lam = Fraction(1, 2)
    for case in catalog.cases:
        if case.empty:
            continue
        tag = f"{case.family_id}-{_kind_tag(case.kind)}"
        selectors = (case.label, _theorem_prefix(case.label), case.family_id, tag, "witness")
        if not _matches_only(selectors, only):
            continue
        problems = []
        for fam in _family_branches(case.family_id, table):
            system = soliton_system(fam, case.kind)
            witness = resolve_witness(case, fam.eta, table)
            sol = solve_for_c(system, witness, lam, tolerance=tolerance)
            if sol.status == "none":
                problems.append(f"{fam.describe()}: witness not solvable")
                continue
            if not case_matches_point(
                case, fam.eta, witness, lam, sol, table, tolerance=tolerance
            ):
                problems.append(f"{fam.describe()}: witness solves but falls outside the case")
        records.append(
            VerifyRecord(
                section="witness",
                label=case.label,
                status="fail" if problems else "pass",
                method="solve",
                detail="; ".join(problems) if problems else "witness solvable inside the case locus",
                selectors=selectors,
            )
        )
    return records


def _scan_records(
    catalog: Catalog,
    table: VariableTable,
    seed: int,
    scan_count: int,
    tolerance: float,
    lambda0_grid,
    only: Optional[str],
) -> list[VerifyRecord]:
    records = []
    for fid in ("g1", "g2", "g3", "g4", "g5", "g6", "g7"):
        for kind in CONNECTION_KINDS:
            tag = f"{fid}-{_kind_tag(kind)}"
            if not _matches_only((tag, fid, "scan"), only):
                continue
            cases = [c for c in catalog.cases if c.family_id == fid and c.kind == kind]
            solvable_total = 0
            entry_total = 0
            unmatched = []
            for fam in _family_branches(fid, table):
                report = scan(
                    fam,
                    kind,
                    seed=seed,
                    count=scan_count,
                    lambda0_grid=lambda0_grid,
                    tolerance=tolerance,
                )
                entry_total += len(report.entries)
                for entry in report.solvable:
                    solvable_total += 1
                    sol = CSolution(entry.status, entry.c, entry.residual_max)
                    if not any(
                        case_matches_point(
                            case, fam.eta, entry.values, entry.lambda0, sol, table, tolerance
                        )
                        for case in cases
                    ):
                        if len(unmatched) < 3:
                            unmatched.append(
                                f"{fam.describe()} {_format_point(entry.values)}, lambda0={entry.lambda0}, c={entry.c}"
                            )
            has_nonempty_case = any(not c.empty for c in cases)
            if unmatched:
                status = "fail"
                detail = (
                    f"{solvable_total}/{entry_total} solvable; outside classification: "
                    + " | ".join(unmatched)
                )
            elif not has_nonempty_case and solvable_total > 0:
                status = "fail"
                detail = f"{solvable_total}/{entry_total} solvable but classification claims none"
            else:
                status = "pass"
                detail = f"{solvable_total}/{entry_total} solvable, all inside the classification"
            records.append(
                VerifyRecord(
                    section="scan",
                    label=tag,
                    status=status,
                    method="scan",
                    detail=detail,
                    selectors=(tag, fid, "scan"),
                )
            )
    return records


def verify_all(
    seed: int = 0,
    tolerance: float = 1e-9,
    scan_count: int = 500,
    sample_count: int = 120,
    only: Optional[str] = None,
    table: VariableTable = DEFAULT_TABLE,
    lambda0_grid=DEFAULT_LAMBDA0_GRID,
    catalog: Optional[Catalog] = None,
) -> VerifySummary:
    """Run every catalogued check; deterministic for a fixed seed.

    `only` restricts to records whose selector set contains it exactly: a
    case label ("3.3.7"), a theorem prefix ("3.3"), a matrix label ("3.9"),
    a family ("g5"), a family-kind tag ("g5-can"), or a section name.
    """
    if catalog is None:
        catalog = load_catalog()
    records: list[VerifyRecord] = []
    records.extend(_structural_records(table, only))
    records.extend(_matrix_records(catalog, table, only))
    records.extend(_scalar_records(catalog, table, only))
    records.extend(_case_records(catalog, table, seed, tolerance, sample_count, only))
    records.extend(_control_records(catalog, table, tolerance, only))
    records.extend(_witness_records(catalog, table, tolerance, only))
    records.extend(
        _scan_records(catalog, table, seed, scan_count, tolerance, lambda0_grid, only)
    )
    return VerifySummary(records=tuple(records), seed=seed)
