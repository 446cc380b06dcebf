"""Parsers for the three tabular dataset families.

All three formats are UTF-8 text with a mandatory header row and either tab
or comma field separators (detected from the header line; the same delimiter
applies to every row). Parsers are pure functions over the input text: they
either return an immutable dataset or raise exactly one typed
:class:`~genegraph.errors.ParseError` carrying a 1-based row/column location.

Rows and columns in error locations count from 1 and include the header row,
so the first data row is row 2.
"""

import csv
import io
from dataclasses import dataclass, field

from .errors import (
    BadHeader,
    BadNumber,
    DuplicateGene,
    EmptyDataset,
    EmptyField,
    MissingHeader,
    NoDelimiter,
    RaggedRow,
)

GENE_ID_COLUMN = "geneEntrezId"
GENE_NAME_COLUMN = "geneName"
INTERACTION_COLUMNS = ("SourceGeneId", "TargetGeneId", "score")
# Disease headers match case-insensitively after trimming; tabular exports
# disagree on the capitalization of "p-Value".
DISEASE_COLUMNS = ("genes", "disease/trait", "p-value")

HARD = "hard"
SOFT = "soft"


@dataclass(frozen=True)
class Gene:
    id: int  # Entrez identifier, > 0
    name: str


@dataclass(frozen=True)
class ClusterDataset:
    """Genes x clusters association matrix; zero cells are never stored."""

    genes: tuple[Gene, ...]
    clusters: tuple[str, ...]  # cluster id == index into this tuple
    memberships: dict[int, dict[int, float]]  # gene id -> {cluster id -> a_c}
    kind: str  # HARD or SOFT

    def gene_name(self, gene_id: int) -> str:
        for g in self.genes:
            if g.id == gene_id:
                return g.name
        raise KeyError(gene_id)

    def has_cluster(self, cluster_id: int) -> bool:
        return 0 <= cluster_id < len(self.clusters)

    def members(self, cluster_id: int, tau: float = 0.0) -> tuple[int, ...]:
        """Gene ids belonging to a cluster (association > tau), in file order."""
        return tuple(
            g.id
            for g in self.genes
            if self.memberships.get(g.id, {}).get(cluster_id, 0.0) > tau
        )

    def association(self, gene_id: int, cluster_id: int) -> float:
        return self.memberships.get(gene_id, {}).get(cluster_id, 0.0)


@dataclass(frozen=True)
class InteractionEdge:
    source: int
    target: int
    score: float


@dataclass(frozen=True)
class InteractionDataset:
    edges: tuple[InteractionEdge, ...]
    # (row number, gene id) of every self-loop kept in the edge list
    self_loops: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def gene_ids(self) -> set[int]:
        out = set()
        for e in self.edges:
            out.add(e.source)
            out.add(e.target)
        return out


@dataclass(frozen=True)
class DiseaseRecord:
    disease: str
    gene_name: str
    p_value: float


@dataclass(frozen=True)
class DiseaseDataset:
    records: tuple[DiseaseRecord, ...]


def detect_delimiter(first_line: str) -> str:
    """Return "\\t" when the line contains a tab, else "," when it contains a
    comma; single-column lines are invalid for all three formats."""
    if "\t" in first_line:
        return "\t"
    if "," in first_line:
        return ","
    raise NoDelimiter(
        "header row contains neither a tab nor a comma; "
        "single-column files are not a valid dataset",
        row=1,
    )


def _read_table(content: str) -> tuple[list[str], list[tuple[int, list[str]]], str]:
    """Tokenize into a stripped header plus (row_number, cells) data rows.

    Enforces one delimiter for the whole file and a uniform field count;
    fully empty lines are skipped. Quoted fields (RFC-4180 style) may contain
    the delimiter.
    """
    text = content.lstrip("﻿").replace("\r\n", "\n").replace("\r", "\n")
    first_line = text.split("\n", 1)[0]
    if not first_line.strip():
        raise MissingHeader("input is empty: a header row is required", row=1)
    delimiter = detect_delimiter(first_line)

    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    raw_rows: list[list[str]] = []
    record_no = 0
    try:
        for cells in reader:
            record_no += 1
            raw_rows.append(cells)
    except csv.Error as exc:
        raise RaggedRow(f"unparseable table: {exc}", row=record_no + 1) from exc

    header = [cell.strip() for cell in raw_rows[0]]
    rows: list[tuple[int, list[str]]] = []
    for i, cells in enumerate(raw_rows[1:], start=2):
        if not cells:  # blank line
            continue
        if len(cells) != len(header):
            raise RaggedRow(
                f"row has {len(cells)} fields, header has {len(header)}", row=i
            )
        rows.append((i, [cell.strip() for cell in cells]))
    return header, rows, delimiter


def _check_unique_header(header: list[str]) -> None:
    seen: dict[str, int] = {}
    for col, name in enumerate(header, start=1):
        if not name:
            raise BadHeader("empty column name in header", row=1, column=col)
        if name in seen:
            raise BadHeader(
                f"duplicate column {name!r} (also column {seen[name]})",
                row=1,
                column=col,
            )
        seen[name] = col


def _parse_gene_id(cell: str, row: int, column: int) -> int:
    # plain decimal digits only: no sign, no underscores, no floats
    value = int(cell) if cell.isdigit() else 0
    if value <= 0:
        raise BadNumber(
            f"expected a positive integer Entrez id, got {cell!r}",
            row=row,
            column=column,
        )
    return value


def _parse_unit_value(cell: str, row: int, column: int, what: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise BadNumber(f"{what} {cell!r} is not a number", row=row, column=column)
    if not 0.0 <= value <= 1.0:
        raise BadNumber(f"{what} {cell!r} outside [0, 1]", row=row, column=column)
    return value


def parse_cluster_table(content: str) -> ClusterDataset:
    """Parse the gene-cluster association table.

    The header must contain ``geneEntrezId`` and ``geneName`` (exact,
    case-sensitive); every other column names a cluster. Cell values are
    association scores in [0, 1]; empty and zero cells mean "not a member".
    The dataset is hard-clustered when every non-empty cell is exactly 0 or
    1, in which case each stored association becomes 1/N for the N clusters
    the gene belongs to; otherwise it is soft and values are kept as given.
    """
    header, rows, _ = _read_table(content)
    _check_unique_header(header)
    for required in (GENE_ID_COLUMN, GENE_NAME_COLUMN):
        if required not in header:
            raise MissingHeader(f"required column {required!r} is missing", row=1)
    id_col = header.index(GENE_ID_COLUMN)
    name_col = header.index(GENE_NAME_COLUMN)
    cluster_cols = [i for i in range(len(header)) if i not in (id_col, name_col)]
    if not cluster_cols:
        raise MissingHeader("no cluster columns in header", row=1)
    clusters = tuple(header[i] for i in cluster_cols)

    genes: list[Gene] = []
    seen_rows: dict[int, int] = {}
    # raw cell values per gene, zero cells included (they matter for the
    # hard/soft decision but never produce memberships)
    raw: dict[int, list[tuple[int, float]]] = {}
    all_zero_one = True
    for row_no, cells in rows:
        gene_id = _parse_gene_id(cells[id_col], row_no, id_col + 1)
        if gene_id in seen_rows:
            raise DuplicateGene(
                f"gene {gene_id} already defined at row {seen_rows[gene_id]}",
                row=row_no,
                column=id_col + 1,
            )
        seen_rows[gene_id] = row_no
        genes.append(Gene(gene_id, cells[name_col]))
        values: list[tuple[int, float]] = []
        for cluster_id, col in enumerate(cluster_cols):
            cell = cells[col]
            if cell == "":
                continue
            value = _parse_unit_value(cell, row_no, col + 1, "association")
            if value not in (0.0, 1.0):
                all_zero_one = False
            values.append((cluster_id, value))
        raw[gene_id] = values

    if not genes:
        raise EmptyDataset("cluster table has no data rows", row=2)

    kind = HARD if all_zero_one else SOFT
    memberships: dict[int, dict[int, float]] = {}
    for gene in genes:
        positive = [(c, v) for c, v in raw[gene.id] if v > 0.0]
        if kind == HARD and positive:
            share = 1.0 / len(positive)
            memberships[gene.id] = {c: share for c, _ in positive}
        else:
            memberships[gene.id] = {c: v for c, v in positive}
    return ClusterDataset(tuple(genes), clusters, memberships, kind)


def write_cluster_table(ds: ClusterDataset, delimiter: str = "\t") -> str:
    """Serialize a ClusterDataset back to its tabular format.

    Hard datasets are written as 0/1 indicator cells (the stored 1/N values
    are re-derived on parse); soft values are written with full float
    precision. Re-parsing the output reproduces the dataset field for field.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow([GENE_ID_COLUMN, GENE_NAME_COLUMN, *ds.clusters])
    for gene in ds.genes:
        row: list[str] = [str(gene.id), gene.name]
        stored = ds.memberships.get(gene.id, {})
        for cluster_id in range(len(ds.clusters)):
            if cluster_id not in stored:
                row.append("")
            elif ds.kind == HARD:
                row.append("1")
            else:
                row.append(repr(stored[cluster_id]))
        writer.writerow(row)
    return buf.getvalue()


def parse_interaction_table(content: str) -> InteractionDataset:
    """Parse the weighted gene-gene interaction edge list.

    Duplicate unordered pairs collapse onto the first occurrence, keeping the
    maximum score. Self-loops are kept but recorded for warning reports.
    """
    header, rows, _ = _read_table(content)
    for required in INTERACTION_COLUMNS:
        hits = header.count(required)
        if hits == 0:
            raise MissingHeader(f"required column {required!r} is missing", row=1)
        if hits > 1:
            raise BadHeader(f"column {required!r} appears more than once", row=1)
    src_col = header.index(INTERACTION_COLUMNS[0])
    tgt_col = header.index(INTERACTION_COLUMNS[1])
    score_col = header.index(INTERACTION_COLUMNS[2])

    order: list[tuple[int, int]] = []
    best: dict[tuple[int, int], InteractionEdge] = {}
    self_loops: list[tuple[int, int]] = []
    for row_no, cells in rows:
        source = _parse_gene_id(cells[src_col], row_no, src_col + 1)
        target = _parse_gene_id(cells[tgt_col], row_no, tgt_col + 1)
        score = _parse_unit_value(cells[score_col], row_no, score_col + 1, "score")
        pair = (min(source, target), max(source, target))
        if source == target:
            self_loops.append((row_no, source))
        if pair not in best:
            order.append(pair)
            best[pair] = InteractionEdge(source, target, score)
        elif score > best[pair].score:
            kept = best[pair]
            best[pair] = InteractionEdge(kept.source, kept.target, score)
    if not order:
        raise EmptyDataset("interaction table has no data rows", row=2)
    return InteractionDataset(tuple(best[p] for p in order), tuple(self_loops))


def parse_disease_table(content: str) -> DiseaseDataset:
    """Parse (disease, gene name, p-value) study records.

    Required columns ``Genes``, ``Disease/Trait`` and ``p-Value`` match
    case-insensitively after trimming; extra columns are ignored. Gene names
    are kept verbatim (post-trim) since diseases join on display names.
    """
    header, rows, _ = _read_table(content)
    folded = [name.lower() for name in header]
    cols: dict[str, int] = {}
    for wanted in DISEASE_COLUMNS:
        matches = [i for i, name in enumerate(folded) if name == wanted]
        if not matches:
            raise MissingHeader(f"required column {wanted!r} is missing", row=1)
        if len(matches) > 1:
            raise BadHeader(
                f"column {wanted!r} appears more than once",
                row=1,
                column=matches[1] + 1,
            )
        cols[wanted] = matches[0]

    records: list[DiseaseRecord] = []
    for row_no, cells in rows:
        disease = cells[cols["disease/trait"]]
        gene = cells[cols["genes"]]
        p_cell = cells[cols["p-value"]]
        if not disease:
            raise EmptyField("empty Disease/Trait cell", row=row_no,
                             column=cols["disease/trait"] + 1)
        if not gene:
            raise EmptyField("empty Genes cell", row=row_no,
                             column=cols["genes"] + 1)
        if not p_cell:
            raise BadNumber("missing p-value", row=row_no, column=cols["p-value"] + 1)
        try:
            p = float(p_cell)
        except ValueError:
            raise BadNumber(
                f"p-value {p_cell!r} is not a number",
                row=row_no,
                column=cols["p-value"] + 1,
            )
        if not 0.0 < p <= 1.0:
            raise BadNumber(
                f"p-value {p_cell!r} outside (0, 1]",
                row=row_no,
                column=cols["p-value"] + 1,
            )
        records.append(DiseaseRecord(disease, gene, p))
    if not records:
        raise EmptyDataset("disease table has no data rows", row=2)
    return DiseaseDataset(tuple(records))
