"""Tests for report models and the report service."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from coreprobe.algorithms.exact import core_decomposition
from coreprobe.algorithms.kcore import approximate_core_decomposition
from coreprobe.core.exceptions import StorageError
from coreprobe.graph import Graph, gen_complete
from coreprobe.models.report import GraphSummary, RunParameters, RunReport, ScalingRow, ScalingTable
from coreprobe.models.results import RunStats
from coreprobe.services.report_service import (
    ReportService,
    containment_rate,
    error_factor,
    ids_sidecar_path,
    max_label_error_factor,
    write_labels,
    write_report,
)


@pytest.fixture
def approx_params():
    return RunParameters(mode="approx", epsilon=0.5, c=1.0, seed=7)


@pytest.fixture
def summary():
    return GraphSummary(source="clique-union:100,80,50", node_count=4100, edge_count=162950, max_degree=99)


class TestErrorFactor:
    """Tests for error_factor."""

    def test_ratio(self):
        """Test approx / exact."""
        assert error_factor(110.0, 100) == pytest.approx(1.1)
        assert error_factor(99, 99) == 1.0

    def test_zero_exact(self):
        """Test 1.0 when both are zero, None otherwise."""
        assert error_factor(0, 0) == 1.0
        assert error_factor(3.5, 0) is None


class TestWriteLabels:
    """Tests for write_labels."""

    def test_integer_labels(self, tmp_path):
        """Test node_id<TAB>label lines with integer-valued labels."""
        path = tmp_path / "labels.tsv"

        sidecar = write_labels(path, np.array([4.0, 4.0, 0.0]))

        assert path.read_text() == "0\t4\n1\t4\n2\t0\n"
        assert sidecar is None

    def test_fractional_labels(self, tmp_path):
        """Test that thresholds keep their decimals unless rounded."""
        path = tmp_path / "labels.tsv"
        labels = np.array([562.5, 99.0])

        write_labels(path, labels)
        assert path.read_text() == "0\t562.5\n1\t99\n"

        write_labels(path, np.array([421.875, 99.0]), round_labels=True)
        assert path.read_text() == "0\t422\n1\t99\n"

    def test_sidecar_for_remapped_ids(self, tmp_path):
        """Test the .ids file when ingestion compacted the ids."""
        path = tmp_path / "labels.tsv"

        sidecar = write_labels(path, np.array([1.0, 1.0]), original_ids=np.array([10, 42]))

        assert sidecar == ids_sidecar_path(path)
        assert sidecar.read_text() == "0\t10\n1\t42\n"

    def test_no_sidecar_for_identity_ids(self, tmp_path):
        """Test that identity ids need no sidecar."""
        path = tmp_path / "labels.tsv"

        assert write_labels(path, np.array([1.0, 1.0]), original_ids=np.arange(2)) is None
        assert not ids_sidecar_path(path).exists()

    def test_unwritable_path(self, tmp_path):
        """Test StorageError for a missing directory."""
        with pytest.raises(StorageError):
            write_labels(tmp_path / "missing" / "labels.tsv", np.zeros(2))


class TestLabelMetrics:
    """Tests for containment_rate and max_label_error_factor."""

    def test_containment_rate(self):
        """Test the fraction of labels inside the interval (epsilon 0.5)."""
        exact = np.array([99, 99, 0, 10])
        labels = np.array([99.0, 130.0, 0.0, 12.0])

        assert containment_rate(labels, exact, 0.5) == pytest.approx(0.75)

    def test_containment_rate_empty(self):
        assert containment_rate(np.array([]), np.array([]), 0.5) == 1.0

    def test_max_error_factor(self):
        """Test the largest ratio over nodes with a positive core number."""
        exact = np.array([4, 2, 0])
        labels = np.array([5.0, 1.0, 3.0])

        assert max_label_error_factor(labels, exact) == pytest.approx(1.25)
        assert max_label_error_factor(np.zeros(2), np.zeros(2)) is None


class TestRunReport:
    """Tests for RunReport and the report service."""

    def test_json_round_trip(self, k5, approx_params):
        """Test parse(serialize(report)) == report."""
        service = ReportService("k5", k5, approx_params)
        built = service.degeneracy_report(4.5, stats=RunStats(trials=3, samples_drawn=120), exact=4)

        assert RunReport.model_validate_json(built.to_json()) == built

    def test_error_factor_requires_exact(self, summary, approx_params):
        """Test the validator rejecting an error factor without a baseline."""
        with pytest.raises(ValidationError):
            RunReport(command="degeneracy", graph=summary, parameters=approx_params, value=1.0, error_factor=1.0)

    def test_key_order(self, summary, approx_params):
        """Test the stable top-level key order."""
        report = RunReport(command="degeneracy", graph=summary, parameters=approx_params, value=99)

        assert list(json.loads(report.to_json())) == [
            "command", "graph", "parameters", "value", "labels", "used_fallback",
            "exact", "error_factor", "within_bound", "stats",
        ]

    def test_exclude_timing(self, summary, approx_params):
        """Test that wall_ms can be dropped for byte comparisons."""
        report = RunReport(
            command="degeneracy", graph=summary, parameters=approx_params, value=99, stats=RunStats(wall_ms=12.5)
        )

        assert "wall_ms" not in json.loads(report.to_json(exclude_timing=True))["stats"]
        assert json.loads(report.to_json())["stats"]["wall_ms"] == 12.5

    def test_degeneracy_report_fallback(self, k5):
        """Test that a fallback value has error factor exactly 1."""
        service = ReportService("k5", k5, RunParameters(mode="approx", epsilon=0.5, c=1.0, seed=0))

        report = service.degeneracy_report(4, used_fallback=True, exact=4)

        assert report.error_factor == 1.0
        assert report.within_bound
        assert report.graph.max_degree == 4

    def test_degeneracy_report_outside_interval(self, k5):
        """Test within_bound false for a value above delta*(1+1.5*eps1)."""
        service = ReportService("k5", k5, RunParameters(mode="approx", epsilon=0.5, c=1.0, seed=0))

        report = service.degeneracy_report(5.5, exact=4)

        assert report.error_factor == pytest.approx(1.375)
        assert report.within_bound is False

    def test_exact_mode_report(self, k5):
        """Test that exact mode compares by equality."""
        service = ReportService("k5", k5, RunParameters(mode="exact"))

        report = service.degeneracy_report(4, exact=4)

        assert report.within_bound
        assert report.parameters.epsilon is None

    def test_kcore_report_counts_sources(self, dense_clique_union):
        """Test label source counts and containment on a sampled decomposition."""
        decomposition = approximate_core_decomposition(dense_clique_union, 1.0, 0.5)
        exact = core_decomposition(dense_clique_union)
        service = ReportService("gen", dense_clique_union, RunParameters(mode="approx", epsilon=1.0, c=0.5, seed=0))

        report = service.kcore_report(
            decomposition.labels,
            labels_path="labels.tsv",
            decomposition=decomposition,
            exact_labels=exact.labels,
            exact_degeneracy=exact.degeneracy,
        )

        assert report.labels.loop_labeled == 600
        assert report.labels.peel_labeled == 400
        assert report.labels.containment_rate == 1.0
        assert report.value == pytest.approx(562.5)
        assert report.exact == 599
        assert report.within_bound

    def test_kcore_report_exact_labels(self):
        """Test the summary of an exact label vector."""
        graph = gen_complete(5)
        service = ReportService("k5", graph, RunParameters(mode="exact"))

        report = service.kcore_report(np.full(5, 4.0))

        assert report.labels.min_label == report.labels.max_label == 4.0
        assert report.labels.peel_labeled == 5
        assert report.error_factor is None

    def test_kcore_report_exact_baseline_without_epsilon(self):
        """Test that exact mode with a baseline reports an error factor but no containment rate."""
        graph = gen_complete(5)
        service = ReportService("k5", graph, RunParameters(mode="exact"))
        exact = core_decomposition(graph)

        report = service.kcore_report(exact.labels, exact_labels=exact.labels, exact_degeneracy=exact.degeneracy)

        assert report.exact == 4
        assert report.error_factor == 1.0
        assert report.within_bound is True
        assert report.labels.containment_rate is None
        assert report.labels.max_error_factor == 1.0

    def test_kcore_report_empty_graph(self):
        service = ReportService("empty", Graph.empty(0), RunParameters(mode="exact"))

        assert service.kcore_report(np.zeros(0)).labels.mean_label == 0.0

    def test_write_report(self, tmp_path, summary, approx_params):
        """Test writing the JSON report to a file and the error on failure."""
        report = RunReport(command="degeneracy", graph=summary, parameters=approx_params, value=99)
        path = tmp_path / "report.json"

        write_report(report, path)

        assert RunReport.model_validate_json(path.read_text()) == report
        with pytest.raises(StorageError):
            write_report(report, tmp_path / "missing" / "report.json")


class TestScalingTable:
    """Tests for the benchmark table rendering."""

    def test_render(self):
        """Test rows and the summary lines."""
        table = ScalingTable(
            family="er",
            epsilon=0.5,
            c=1.0,
            rows=[
                ScalingRow(n=1024, runs=2, mean_samples=5000.0, samples_per_nlogn=0.7, mean_trials=3.0, fallback_runs=0),
                ScalingRow(n=2048, runs=2, mean_samples=9000.0, samples_per_nlogn=0.6, mean_trials=3.5, fallback_runs=1),
            ],
            nlogn_ratio_spread=0.7 / 0.6,
            fitted_exponent=0.85,
        )

        text = table.render()

        assert text.splitlines()[0] == "# family=er epsilon=0.5 c=1.0"
        assert len(text.splitlines()) == 6
        assert "fitted exponent of samples vs n: 0.850" in text
