"""Report service - builds run reports, error factors and label files."""

import logging
from pathlib import Path

import numpy as np

from coreprobe.algorithms.params import within_interval
from coreprobe.core.exceptions import StorageError
from coreprobe.graph.csr import Graph
from coreprobe.models.report import GraphSummary, LabelSummary, RunParameters, RunReport
from coreprobe.models.results import LabeledDecomposition, LabelSource, RunStats

logger = logging.getLogger(__name__)


def error_factor(approx: float, exact: float) -> float | None:
    """approx / exact; 1.0 when both are 0, None when only exact is 0."""
    if exact == 0:
        return 1.0 if approx == 0 else None
    return float(approx) / float(exact)


def ids_sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".ids")


def _format_label(value: float, round_labels: bool) -> str:
    if round_labels or float(value).is_integer():
        return str(int(np.rint(value)))
    return repr(float(value))


def write_labels(
    path: str | Path,
    labels: np.ndarray,
    original_ids: np.ndarray | None = None,
    round_labels: bool = False,
) -> Path | None:
    """Write ``node_id<TAB>label`` lines in ascending compacted id.

    When ingestion remapped ids, ``<path>.ids`` maps each compacted id to
    its original id. Returns the sidecar path if one was written.

    Raises:
        StorageError: The file cannot be written.
    """
    path = Path(path)
    sidecar = None
    remapped = original_ids is not None and not np.array_equal(original_ids, np.arange(len(labels)))
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for v, value in enumerate(labels.tolist()):
                f.write(f"{v}\t{_format_label(value, round_labels)}\n")
        if remapped:
            sidecar = ids_sidecar_path(path)
            with open(sidecar, "w", encoding="utf-8", newline="\n") as f:
                for v, original in enumerate(original_ids.tolist()):
                    f.write(f"{v}\t{original}\n")
    except OSError as e:
        raise StorageError(f"Cannot write labels to {path}: {e}", {"path": str(path)}) from e

    logger.info(f"Wrote {len(labels)} labels to {path}")
    return sidecar


def containment_rate(labels: np.ndarray, exact: np.ndarray, epsilon: float) -> float:
    """Fraction of nodes whose label lies in the approximation interval of its core number."""
    if labels.size == 0:
        return 1.0
    hits = sum(within_interval(a, e, epsilon) for a, e in zip(labels.tolist(), exact.tolist()))
    return hits / labels.size


def max_label_error_factor(labels: np.ndarray, exact: np.ndarray) -> float | None:
    positive = exact > 0
    if not positive.any():
        return None
    return float(np.max(labels[positive] / exact[positive]))


class ReportService:
    """Assembles RunReport objects for the CLI."""

    def __init__(self, source: str, graph: Graph, parameters: RunParameters):
        self.graph_summary = GraphSummary(
            source=source,
            node_count=graph.node_count,
            edge_count=graph.edge_count,
            max_degree=graph.max_degree,
        )
        self.parameters = parameters

    def degeneracy_report(
        self,
        value: int | float,
        used_fallback: bool = False,
        stats: RunStats | None = None,
        exact: int | None = None,
    ) -> RunReport:
        """Report for a degeneracy run, with error factor when an exact baseline is given."""
        factor = None
        within = None
        if exact is not None:
            factor = error_factor(value, exact)
            if self.parameters.epsilon is None:
                within = value == exact
            else:
                within = within_interval(value, exact, self.parameters.epsilon)
        return RunReport(
            command="degeneracy",
            graph=self.graph_summary,
            parameters=self.parameters,
            value=value,
            used_fallback=used_fallback,
            exact=exact,
            error_factor=factor,
            within_bound=within,
            stats=stats or RunStats(),
        )

    def kcore_report(
        self,
        labels: np.ndarray,
        labels_path: str | None = None,
        decomposition: LabeledDecomposition | None = None,
        exact_labels: np.ndarray | None = None,
        exact_degeneracy: int | None = None,
    ) -> RunReport:
        """Report summarizing a label vector.

        ``decomposition`` is the approximate result when one was computed;
        ``exact_labels`` enables the max error factor, plus the containment
        rate when epsilon is set; ``exact_degeneracy`` enables the error factor.
        """
        n = labels.size
        summary = LabelSummary(
            labels_path=labels_path,
            min_label=float(labels.min()) if n else 0.0,
            max_label=float(labels.max()) if n else 0.0,
            mean_label=float(labels.mean()) if n else 0.0,
        )
        stats = RunStats()
        used_fallback = False
        if decomposition is not None:
            sources = decomposition.label_source
            summary.loop_labeled = sources.count(LabelSource.LOOP)
            summary.peel_labeled = sources.count(LabelSource.PEEL)
            summary.capped = sources.count(LabelSource.CAPPED)
            stats = decomposition.stats
            used_fallback = decomposition.used_fallback
        else:
            summary.peel_labeled = n

        factor = None
        within = None
        if exact_labels is not None:
            summary.max_error_factor = max_label_error_factor(labels, exact_labels)
            if self.parameters.epsilon is None:
                within = bool(np.array_equal(labels, exact_labels))
            else:
                summary.containment_rate = containment_rate(labels, exact_labels, self.parameters.epsilon)
                within = summary.containment_rate == 1.0
        if exact_degeneracy is not None:
            factor = error_factor(summary.max_label, exact_degeneracy)

        return RunReport(
            command="kcore",
            graph=self.graph_summary,
            parameters=self.parameters,
            value=summary.max_label,
            labels=summary,
            used_fallback=used_fallback,
            exact=exact_degeneracy,
            error_factor=factor,
            within_bound=within,
            stats=stats,
        )


def write_report(report: RunReport, path: str | Path, indent: int | None = 2) -> None:
    """Write the JSON report to a file.

    Raises:
        StorageError: The file cannot be written.
    """
    try:
        Path(path).write_text(report.to_json(indent=indent) + "\n", encoding="utf-8")
    except OSError as e:
        raise StorageError(f"Cannot write report to {path}: {e}", {"path": str(path)}) from e
