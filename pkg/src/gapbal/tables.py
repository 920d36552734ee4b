"""Tabular views: the per-class term table with transition and step rows."""

from __future__ import annotations

from dataclasses import dataclass

from .classes import classes_for, tandem_balancer_class
from .core import _ctx, counterbalancer_of
from .transitions import NON_INTEGRAL, sorting_transitions


@dataclass
class TermTable:
    k: int
    columns: list[str]
    rows: list[tuple[str, list]]  # cells are ints or NON_INTEGRAL

    def row(self, label: str) -> list:
        for name, cells in self.rows:
            if name == label:
                return cells
        raise KeyError(label)


def term_table(k: int = 9, terms: int = 3) -> TermTable:
    """Columns ``i_x`` for i < terms and every class x, read column-wise ascending.

    Rows: B, C, m, r, rhat; one row per distinct sorting transition (the first
    component only, ``*`` where non-integral); and the forward step f_k.
    """
    ctx = _ctx(k)
    classes = classes_for(ctx)
    tandem = [tandem_balancer_class(c) for c in classes]
    cols = [(i, j) for i in range(terms) for j in range(len(classes))]
    columns = [f"{i}_{classes[j].label()}" for i, j in cols]
    pairs = [classes[j].term(i) for i, j in cols]
    bal = [tandem[j].term(i) for i, j in cols]

    rows: list[tuple[str, list]] = [
        ("B", [p.B for p in pairs]),
        ("C", [p.C for p in pairs]),
        ("m", [counterbalancer_of(p) for p in pairs]),
        ("r", [q.r for q in bal]),
        ("rhat", [q.r_hat for q in bal]),
    ]
    seen = []
    for n, t in enumerate(sorting_transitions(ctx), start=1):
        if t.coefficients in seen:
            continue
        seen.append(t.coefficients)
        rows.append((f"t{n}", [t.first(p) for p in pairs]))
    rows.append((f"f{k}", [3 * p.B + p.C + 1 - k for p in pairs]))
    return TermTable(k, columns, rows)


__all__ = ["TermTable", "term_table", "NON_INTEGRAL"]
