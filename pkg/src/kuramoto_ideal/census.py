"""Census of SCT isomorphism classes: one row of invariants and search counts per graph."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional, Sequence

from .dynamics import SearchParams, SearchResult, multistart_search
from .graphs import (
    Graph,
    UnsupportedSizeError,
    canonical_form,
    canonical_key,
    connectivity_mu,
    enumerate_sct,
    has_chordless_cycle,
    klet_codim_bound,
)

CSV_COLUMNS = (
    "canonicalKey", "n", "edgeCount", "muC", "kletBound", "chordlessGe5",
    "stableRecordCount", "exoticRecordCount", "searchBudget", "seed",
)


@dataclass(frozen=True)
class CensusRow:
    canonicalKey: str
    n: int
    edgeCount: int
    muC: str
    kletBound: Optional[int]
    chordlessGe5: bool
    stableRecordCount: int
    exoticRecordCount: int
    searchBudget: int
    seed: int

    def __post_init__(self):
        if self.exoticRecordCount > self.stableRecordCount:
            raise AssertionError("more exotic than stable records")

    @property
    def exotic(self) -> bool:
        return self.exoticRecordCount > 0

    @property
    def low_codim(self) -> bool:
        return self.kletBound is not None and self.kletBound <= self.n - 2

    def key_hex(self) -> str:
        return self.canonicalKey.encode("ascii").hex()

    def to_json(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def csv_values(self) -> list[str]:
        return [
            self.canonicalKey, str(self.n), str(self.edgeCount), self.muC,
            "" if self.kletBound is None else str(self.kletBound),
            "true" if self.chordlessGe5 else "false",
            str(self.stableRecordCount), str(self.exoticRecordCount),
            str(self.searchBudget), str(self.seed),
        ]


@dataclass
class CensusSummary:
    class_count: int
    klet_bound_count: int
    exotic_graph_count: int

    def line(self) -> str:
        return (f"classes={self.class_count} kletBound={self.klet_bound_count} "
                f"exoticGraphs={self.exotic_graph_count}")


def analyze_graph(g: Graph, params: SearchParams) -> tuple[CensusRow, SearchResult]:
    g = canonical_form(g)
    result = multistart_search(g, params)
    for rec in result.records:
        if rec.residual_norm > params.newton_tol:
            raise AssertionError(f"record residual {rec.residual_norm:.3g} above newton_tol")
    row = CensusRow(
        canonicalKey=canonical_key(g).decode("ascii"),
        n=g.n,
        edgeCount=g.edge_count,
        muC=str(connectivity_mu(g)),
        kletBound=klet_codim_bound(g),
        chordlessGe5=has_chordless_cycle(g, 5),
        stableRecordCount=len(result.stable),
        exoticRecordCount=len(result.exotic),
        searchBudget=params.restart_count(g.n),
        seed=params.seed,
    )
    return row, result


def _worker(args):
    g, params = args
    return analyze_graph(g, params)


def census_graphs(n: Optional[int] = None, graphs: Optional[Sequence[Graph]] = None) -> list[Graph]:
    """Built-in enumeration for n in 4..6, or a supplied list reduced to distinct classes."""
    if graphs is None:
        if n is None:
            raise ValueError("need n or a graph list")
        return enumerate_sct(n)
    seen: dict[bytes, Graph] = {}
    for g in graphs:
        if g.n > 8:
            raise UnsupportedSizeError(f"census supports n <= 8, got {g.n}")
        seen.setdefault(canonical_key(g), canonical_form(g))
    return [seen[k] for k in sorted(seen)]


def run_census(graphs: Sequence[Graph], params: SearchParams = SearchParams(),
               workers: int = 1) -> tuple[list[CensusRow], list[SearchResult]]:
    """Analyse every graph; rows come back sorted by canonical key whatever the worker count."""
    jobs = [(g, params) for g in graphs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_worker, jobs))
    else:
        out = [_worker(j) for j in jobs]
    out.sort(key=lambda pair: pair[0].canonicalKey)
    return [r for r, _ in out], [s for _, s in out]


def summarize(rows: Sequence[CensusRow]) -> CensusSummary:
    return CensusSummary(
        class_count=len(rows),
        klet_bound_count=sum(r.low_codim for r in rows),
        exotic_graph_count=sum(r.exotic for r in rows),
    )


def rows_to_csv(rows: Sequence[CensusRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(r.csv_values())
    return buf.getvalue()


def rows_from_csv(text: str) -> list[CensusRow]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(CensusRow(
            canonicalKey=rec["canonicalKey"],
            n=int(rec["n"]),
            edgeCount=int(rec["edgeCount"]),
            muC=rec["muC"],
            kletBound=int(rec["kletBound"]) if rec["kletBound"] else None,
            chordlessGe5=rec["chordlessGe5"] == "true",
            stableRecordCount=int(rec["stableRecordCount"]),
            exoticRecordCount=int(rec["exoticRecordCount"]),
            searchBudget=int(rec["searchBudget"]),
            seed=int(rec["seed"]),
        ))
    return rows


def graph_document(row: CensusRow, result: SearchResult) -> dict:
    return {"row": row.to_json(), "search": result.to_json()}


def write_census(out_dir: str, rows: Sequence[CensusRow], results: Sequence[SearchResult],
                 label: str) -> str:
    """Write ``census_V{label}.csv`` and one JSON file per graph; returns the CSV path."""
    os.makedirs(os.path.join(out_dir, "graphs"), exist_ok=True)
    path = os.path.join(out_dir, f"census_V{label}.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))
    for row, res in zip(rows, results):
        gpath = os.path.join(out_dir, "graphs", f"{row.key_hex()}.json")
        with open(gpath, "w", encoding="utf-8") as fh:
            json.dump(graph_document(row, res), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return path
