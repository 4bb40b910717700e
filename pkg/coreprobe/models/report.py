"""
Report model definitions for CLI output.

Field order is the serialization order, so JSON reports have a stable key
order.
"""

from pydantic import BaseModel, Field, model_validator

from coreprobe.models.results import RunStats


class GraphSummary(BaseModel):
    """Input graph description."""
    # Path or generator spec, recorded verbatim
    source: str
    node_count: int
    edge_count: int
    max_degree: int


class RunParameters(BaseModel):
    """Parameters a run was invoked with."""
    mode: str
    epsilon: float | None = None
    c: float | None = None
    seed: int | None = None
    use_lower_start: bool = False
    use_leaps: bool = False
    round_labels: bool = False


class LabelSummary(BaseModel):
    """Aggregate view of a per-node label file."""
    labels_path: str | None = None
    min_label: float
    max_label: float
    mean_label: float
    loop_labeled: int = 0
    peel_labeled: int = 0
    capped: int = 0
    # Fraction of nodes whose label lies in the approximation interval of the exact core number
    containment_rate: float | None = None
    # Largest label / c(v) over nodes with c(v) > 0
    max_error_factor: float | None = None


class RunReport(BaseModel):
    """Machine-readable result of one CLI invocation."""
    command: str
    graph: GraphSummary
    parameters: RunParameters
    value: int | float | None = None
    labels: LabelSummary | None = None
    used_fallback: bool = False
    exact: int | None = None
    error_factor: float | None = None
    within_bound: bool | None = None
    stats: RunStats = Field(default_factory=RunStats)

    @model_validator(mode="after")
    def _error_factor_needs_exact(self) -> "RunReport":
        if self.error_factor is not None and self.exact is None:
            raise ValueError("error_factor requires an exact baseline")
        return self

    def to_json(self, indent: int | None = 2, exclude_timing: bool = False) -> str:
        """Serialize; ``exclude_timing`` drops wall_ms for byte comparisons."""
        exclude = {"stats": {"wall_ms"}} if exclude_timing else None
        return self.model_dump_json(indent=indent, exclude=exclude)


class ScalingRow(BaseModel):
    """Mean cost at one graph size."""
    n: int
    runs: int
    mean_samples: float
    samples_per_nlogn: float
    # samples / (n^b ln n), clique-union family only
    samples_per_nblogn: float | None = None
    mean_trials: float
    fallback_runs: int


class ScalingTable(BaseModel):
    """Sample-count scaling benchmark output."""
    family: str
    epsilon: float
    c: float
    rows: list[ScalingRow] = Field(default_factory=list)
    # max/min of samples_per_nlogn over rows with samples, None with fewer than 2 such rows
    nlogn_ratio_spread: float | None = None
    # Least-squares slope of log(mean_samples) on log(n), None with fewer than 2 sizes with samples
    fitted_exponent: float | None = None

    def render(self) -> str:
        """Plain-text table."""
        header = f"{'n':>10} {'runs':>5} {'mean_samples':>14} {'/(n ln n)':>12} {'/(n^b ln n)':>12} {'trials':>8} {'fallback':>8}"
        lines = [f"# family={self.family} epsilon={self.epsilon} c={self.c}", header]
        for row in self.rows:
            nb = f"{row.samples_per_nblogn:12.4f}" if row.samples_per_nblogn is not None else f"{'-':>12}"
            lines.append(
                f"{row.n:>10} {row.runs:>5} {row.mean_samples:>14.1f} {row.samples_per_nlogn:>12.4f} "
                f"{nb} {row.mean_trials:>8.2f} {row.fallback_runs:>8}"
            )
        if self.nlogn_ratio_spread is not None:
            lines.append(f"# spread of samples/(n ln n): {self.nlogn_ratio_spread:.3f}")
        if self.fitted_exponent is not None:
            lines.append(f"# fitted exponent of samples vs n: {self.fitted_exponent:.3f}")
        return "\n".join(lines)


class EpsilonRow(BaseModel):
    """Approximate degeneracy at one epsilon, over all seeds."""
    epsilon: float
    runs: int
    mean_value: float
    min_value: float
    max_value: float
    # value / exact; None when the exact degeneracy is 0 and a value is not
    mean_error_factor: float | None = None
    max_error_factor: float | None = None
    # Fraction of runs inside (exact/(1+eps1)^2, exact*(1+1.5*eps1)]
    within_rate: float
    mean_samples: float
    mean_trials: float
    fallback_runs: int


class EpsilonTable(BaseModel):
    """Output of an epsilon sweep on one graph."""
    graph: GraphSummary
    c: float
    exact: int
    rows: list[EpsilonRow] = Field(default_factory=list)

    def render(self) -> str:
        """Plain-text table."""
        header = (
            f"{'epsilon':>8} {'runs':>5} {'mean_value':>12} {'min':>10} {'max':>10} "
            f"{'error':>8} {'max_error':>9} {'within':>7} {'samples':>12} {'trials':>7} {'fallback':>8}"
        )
        lines = [
            f"# graph={self.graph.source} n={self.graph.node_count} m={self.graph.edge_count} "
            f"c={self.c} exact={self.exact}",
            header,
        ]
        for row in self.rows:
            mean_err = f"{row.mean_error_factor:8.4f}" if row.mean_error_factor is not None else f"{'-':>8}"
            max_err = f"{row.max_error_factor:9.4f}" if row.max_error_factor is not None else f"{'-':>9}"
            lines.append(
                f"{row.epsilon:>8g} {row.runs:>5} {row.mean_value:>12.4f} {row.min_value:>10.4f} "
                f"{row.max_value:>10.4f} {mean_err} {max_err} {row.within_rate:>7.2f} "
                f"{row.mean_samples:>12.1f} {row.mean_trials:>7.2f} {row.fallback_runs:>8}"
            )
        return "\n".join(lines)
