"""Recompute the reference result tables side by side with their printed values."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from . import reference_values as ref
from .assembly import integrate
from .diagnostics import conserved_quantities, linf_error, relative_changes
from .experiment import run_experiment
from .fitting import fit_initial
from .problems import preset
from .scan import ScanSpec, scan

__all__ = ["Cell", "TableRow", "build_table", "format_table", "TABLE_IDS"]

TABLE_IDS = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class Cell:
    name: str
    computed: float
    printed: str

    @property
    def reference(self) -> float:
        return float(self.printed)

    @property
    def rel_dev(self) -> float:
        ref = self.reference
        return abs(self.computed - ref) / abs(ref) if ref else abs(self.computed)

    def rounded(self) -> str:
        """``computed`` written with the precision of the printed value."""
        text = self.printed.lower()
        if "e" in text:
            mant = text.split("e")[0].lstrip("-")
            digits = len(mant.replace(".", "")) - 1
            return f"{self.computed:.{digits}e}"
        places = -Decimal(text).as_tuple().exponent
        return f"{self.computed:.{places}f}"


@dataclass(frozen=True)
class TableRow:
    label: str
    cells: tuple


def _errors_at(p, times, closure):
    s0 = fit_initial(p.initial, p.grid, p.params.lam, closure)
    _, snaps = integrate(s0, p.params, p.grid, p.dt, p.t_end, record_times=times)
    return [linf_error(snaps[t], p.exact, p.grid, p.params.lam) for t in times]


def _error_table(name, reference, times, rows, closure):
    out = []
    for n in rows:
        printed = reference[n]
        base = preset(name).with_overrides(n=n)
        e0 = _errors_at(base, times, closure)
        res = scan(base, ScanSpec(), closure=closure)
        e1 = _errors_at(base.with_overrides(lam=res.lambda_star), times, closure)
        t1, t2 = times
        cells = (
            Cell(f"Linf({t1:g}) lam=0", e0[0], printed[0]),
            Cell("lam*", res.lambda_star, printed[1]),
            Cell(f"Linf({t1:g}) lam*", e1[0], printed[2]),
            Cell(f"Linf({t2:g}) lam=0", e0[1], printed[3]),
            Cell(f"Linf({t2:g}) lam*", e1[1], printed[4]),
        )
        out.append(TableRow(f"N={n}", cells))
    return out


def _invariant_cells(q0, changes, printed, t):
    names = ("M0", "E0", "H0", f"C(M{t:g})", f"C(E{t:g})", f"C(H{t:g})")
    values = tuple(q0) + tuple(changes)
    return tuple(Cell(nm, v, s) for nm, v, s in zip(names, values, printed))


def _invariant_table(name, reference, rows, rule, closure):
    out = []
    for n in rows:
        p = preset(name).with_overrides(n=n)
        s0 = fit_initial(p.initial, p.grid, p.params.lam, closure)
        final, _ = integrate(s0, p.params, p.grid, p.dt, p.t_end)
        q0 = conserved_quantities(s0, p.params, p.grid, rule)
        q1 = conserved_quantities(final, p.params, p.grid, rule)
        out.append(TableRow(f"N={n}", _invariant_cells(q0, relative_changes(q1, q0),
                                                       reference[n], p.t_end)))
    return out


def _generation_table(rows, closure):
    p = preset("generation")
    res = run_experiment(p, snapshots=rows, diag_every=10**9, closure=closure)
    out = []
    for t in rows:
        rec = res.record_at(t)
        out.append(TableRow(f"t={t:g}", _invariant_cells(
            res.invariants0, (rec.c_m, rec.c_e, rec.c_h),
            ref.GENERATION_INVARIANTS[t], t)))
    return out


def build_table(table_id: int, rows=None, closure: str = "curvature"):
    """Rows of computed-versus-printed cells for table ``table_id`` (1..5).

    ``rows`` restricts the grid sizes (tables 1-4) or times (table 5).
    """
    refs = {
        1: ref.PULSE_ERRORS,
        2: ref.PULSE_INVARIANTS,
        3: ref.KINK_ERRORS,
        4: ref.KINK_INVARIANTS,
        5: ref.GENERATION_INVARIANTS,
    }
    if table_id not in refs:
        raise ValueError(f"table id must be one of {TABLE_IDS}, got {table_id}")
    available = tuple(refs[table_id])
    rows = available if rows is None else tuple(rows)
    missing = [r for r in rows if r not in available]
    if missing:
        raise ValueError(f"table {table_id} has no rows {missing}; choose from {available}")
    if table_id == 1:
        return _error_table("pulse", refs[1], (2.5, 5.0), rows, closure)
    if table_id == 2:
        return _invariant_table("pulse", refs[2], rows, "simpson", closure)
    if table_id == 3:
        return _error_table("kink", refs[3], (4.0, 12.0), rows, closure)
    if table_id == 4:
        # the printed kink invariants are plain nodal sums
        return _invariant_table("kink", refs[4], rows, "nodal", closure)
    return _generation_table(rows, closure)


def format_table(rows) -> str:
    lines = []
    for row in rows:
        lines.append(row.label)
        for c in row.cells:
            lines.append(f"  {c.name:<16} computed {c.rounded():>12}   printed {c.printed:>12}"
                         f"   rel.dev {c.rel_dev:.2e}")
    return "\n".join(lines)
