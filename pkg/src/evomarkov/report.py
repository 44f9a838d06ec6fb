"""The ``analyze`` report: one object, two renderings.

The structured rendering is JSON with a fixed key order (documented in
the README).  Keys are only ever added, never renamed.  Every value is
produced by a library call; nothing is recomputed here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .core import DEFAULT_TOL, MarkovChain, StructureMatrix, format_number, is_row_stochastic
from .errors import DimensionTooLarge, NotMarkov
from .structure import (
    ClassPartition,
    canonical_partition,
    enumerate_closed_sets,
    idempotents,
    is_primitive,
    subalgebra,
)
from .triad import (
    EvolutionAlgebra,
    graph_from_algebra,
    graph_from_chain,
    is_graphicable,
)
from .walks import verify_walk_theorem

REPORT_FORMAT = "evomarkov.analysis/1"


@dataclass
class ClosedSetEntry:
    members: tuple[int, ...]
    laws: list[str]


@dataclass
class WalkSummary:
    max_length: int
    tol: float
    checked: int
    failed: int
    max_abs_error: float


@dataclass
class AnalysisReport:
    matrix: StructureMatrix
    tol: float
    zero_tol: float
    is_markov: bool
    markov_defect: Optional[tuple[int, float]]
    is_graphicable: bool
    partition: ClassPartition
    idempotents: tuple[int, ...]
    is_simple: bool
    primitivity_index: Optional[int]
    closed_sets: Optional[list[ClosedSetEntry]]
    closed_sets_cap: int
    walk_summary: Optional[WalkSummary] = None
    edges: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.matrix.labels

    def names(self, members) -> list[str]:
        return [self.labels[k] for k in members]

    def to_tree(self) -> dict:
        tree = {
            "format": REPORT_FORMAT,
            "dimension": self.matrix.n,
            "labels": list(self.labels),
            "edges": self.edges,
            "is_markov": self.is_markov,
        }
        if self.markov_defect is not None:
            row, total = self.markov_defect
            tree["markov_defect"] = {"row": self.labels[row], "row_sum": total}
        tree["is_graphicable"] = self.is_graphicable
        tree["is_simple"] = self.is_simple
        if self.is_markov:
            tree["primitivity_index"] = self.primitivity_index
        tree["classes"] = [
            {
                "members": self.names(c.members),
                "closed": c.closed,
                "recurrent": c.recurrent,
                "period": c.period,
                "degenerate": c.degenerate,
            }
            for c in self.partition.classes
        ]
        tree["transient"] = self.names(self.partition.transient_states)
        tree["recurrent"] = self.names(self.partition.recurrent_states)
        tree["idempotents"] = self.names(self.idempotents)
        if self.closed_sets is None:
            tree["closed_sets"] = None
            tree["closed_sets_cap"] = self.closed_sets_cap
        else:
            tree["closed_sets"] = [
                {"members": self.names(e.members), "laws": e.laws} for e in self.closed_sets
            ]
        if self.walk_summary is not None:
            w = self.walk_summary
            tree["walk_theorem"] = {
                "max_length": w.max_length,
                "tol": w.tol,
                "checked": w.checked,
                "failed": w.failed,
                "max_abs_error": w.max_abs_error,
            }
        tree["notes"] = list(self.notes)
        return tree

    def render_structured(self) -> str:
        return json.dumps(self.to_tree(), indent=2) + "\n"

    def render_text(self) -> str:
        def fmt(members):
            return "{" + ", ".join(self.names(members)) + "}"

        yn = {True: "yes", False: "no"}
        out = []
        if not self.is_markov:
            row, total = self.markov_defect
            out.append(
                f"*** non-Markov: row {self.labels[row]} sums to {format_number(total)}; "
                "structural analysis only ***"
            )
        out.append(f"dimension: {self.matrix.n}")
        out.append(f"generators: {' '.join(self.labels)}")
        out.append(f"edges: {self.edges}")
        out.append(f"markov: {yn[self.is_markov]}")
        out.append(f"graphicable: {yn[self.is_graphicable]}")
        out.append(f"simple: {yn[self.is_simple]}")
        if self.is_markov:
            idx = self.primitivity_index
            out.append(f"primitivity index: {idx if idx is not None else 'none'}")
        out.append("communication classes:")
        for c in self.partition.classes:
            kind = "closed, recurrent" if c.closed else "open, transient"
            per = f"period {c.period}" if c.period is not None else "no cycle"
            flag = ", degenerate: zero row" if c.degenerate else ""
            out.append(f"  {fmt(c.members)}: {kind}, {per}{flag}")
        out.append(f"transient: {fmt(self.partition.transient_states)}")
        out.append(f"recurrent: {fmt(self.partition.recurrent_states)}")
        out.append(f"idempotents: {fmt(self.idempotents)}")
        if self.closed_sets is None:
            out.append(f"closed sets: skipped (dimension above cap {self.closed_sets_cap})")
        else:
            out.append(f"closed sets ({len(self.closed_sets)}):")
            for e in self.closed_sets:
                out.append(f"  {fmt(e.members)}")
                for law in e.laws:
                    out.append(f"    {law}")
        if self.walk_summary is not None:
            w = self.walk_summary
            status = "ok" if w.failed == 0 else f"{w.failed} FAILED"
            out.append(
                f"walk theorem (n <= {w.max_length}, tol {format_number(w.tol)}): "
                f"{w.checked} checked, {status}, max error {w.max_abs_error:.3g}"
            )
        for note in self.notes:
            out.append(f"note: {note}")
        return "\n".join(out) + "\n"


def build_report(
    M: StructureMatrix,
    tol: float = DEFAULT_TOL,
    zero_tol: float = 0.0,
    closed_sets_cap: int = 20,
    walk_max_length: Optional[int] = None,
) -> AnalysisReport:
    alg = EvolutionAlgebra(M)
    markov = is_row_stochastic(M, tol)
    defect = None
    chain = None
    if markov:
        chain = MarkovChain(M, tol)
        g = graph_from_chain(chain, zero_tol)
    else:
        try:
            MarkovChain(M, tol)
        except NotMarkov as exc:
            defect = (exc.row, exc.row_sum)
        g = graph_from_algebra(alg, zero_tol)

    partition = canonical_partition(g)
    notes = []
    if any(c.degenerate for c in partition.classes):
        notes.append("some generators have zero rows; their classes are closed only vacuously")

    try:
        closed = [
            ClosedSetEntry(c, subalgebra(alg, c, g).laws())
            for c in enumerate_closed_sets(g, closed_sets_cap)
        ]
    except DimensionTooLarge:
        closed = None

    summary = None
    if walk_max_length is not None:
        reports = verify_walk_theorem(g, walk_max_length, tol)
        summary = WalkSummary(
            walk_max_length,
            tol,
            len(reports),
            sum(not r.ok for r in reports),
            max((r.abs_error for r in reports), default=0.0),
        )

    return AnalysisReport(
        matrix=M,
        tol=tol,
        zero_tol=zero_tol,
        is_markov=markov,
        markov_defect=defect,
        is_graphicable=is_graphicable(alg, tol),
        partition=partition,
        idempotents=idempotents(alg, tol),
        is_simple=len(partition.classes) == 1,
        primitivity_index=is_primitive(chain) if chain is not None else None,
        closed_sets=closed,
        closed_sets_cap=closed_sets_cap,
        walk_summary=summary,
        edges=len(g.edges),
        notes=notes,
    )
