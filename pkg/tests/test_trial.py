"""Tests for single threshold trials."""

import numpy as np
import pytest

from coreprobe.algorithms.params import init_params
from coreprobe.algorithms.sampling import RandomSource
from coreprobe.algorithms.trial import TrialEngine, is_peeled, run_trial, sample_count
from coreprobe.core.exceptions import ParameterError
from coreprobe.graph import (
    disjoint_union,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_erdos_renyi,
    gen_path,
    gen_star,
)


def engine_for(graph, seed: int = 0) -> TrialEngine:
    return TrialEngine(graph, RandomSource.create(seed, graph.max_degree))


class CounterRecorder:
    """Checks the survivor counter bounds at every peel.

    At v's peel, t(v) lies between k(v) minus the samples that hit L when
    drawn and k(v) minus the samples whose target is in L now.
    """

    def __init__(self, engine: TrialEngine):
        self.engine = engine
        self.samples: dict[int, list[tuple[int, bool]]] = {}
        self.peels: list[int] = []
        self.dequeued: list[int] = []

    def in_l(self, u: int) -> bool:
        return not self.engine.state.is_in_h(u)

    def on_sample(self, v: int, u: int) -> None:
        self.samples.setdefault(v, []).append((u, self.in_l(u)))

    def on_peel(self, v: int, t: int, k: int) -> None:
        drawn = self.samples.get(v, [])
        hit_when_drawn = sum(1 for _, was_l in drawn if was_l)
        hit_now = sum(1 for u, _ in drawn if self.in_l(u))
        assert k - hit_when_drawn >= t >= k - hit_now
        self.peels.append(v)

    def on_dequeue(self, u: int) -> None:
        self.dequeued.append(u)


class TestHelpers:
    """Tests for sample_count and is_peeled."""

    def test_sample_count(self):
        """Test k(v) = ceil(p * deg(v)) clamped to deg(v)."""
        assert sample_count(0.5, 5) == 3
        assert sample_count(0.01, 5) == 1
        assert sample_count(0.999, 3) == 3
        assert sample_count(1.0, 5) == 5
        assert sample_count(0.5, 0) == 0

    def test_is_peeled_strict(self):
        """Test t * deg < l * k, strict."""
        assert is_peeled(2, 10, 5.0, 5)
        assert not is_peeled(3, 10, 5.0, 5)
        assert not is_peeled(5, 10, 5.0, 10)


class TestTrialEngine:
    """Tests for TrialEngine.run."""

    def test_complete_graph_survives(self, k5):
        """Test K5 at l=4: every sample lands in H, nothing is peeled."""
        outcome = engine_for(k5).run(4.0, 0.5)

        assert outcome.survivors == [0, 1, 2, 3, 4]
        assert outcome.h_size == 5
        assert outcome.samples_drawn == 5 * 2
        assert outcome.peeled == 0

    def test_threshold_above_max_degree(self, k5):
        """Test that H is empty when l exceeds every degree."""
        outcome = engine_for(k5).run(5.0, 0.5)

        assert outcome.survivors == []
        assert outcome.h_size == 0
        assert outcome.samples_drawn == 0

    def test_star_center_peeled(self):
        """Test a star center whose samples all land on leaves in L."""
        outcome = engine_for(gen_star(5)).run(3.0, 0.5)

        assert outcome.h_size == 1
        assert outcome.survivors == []
        # k = 3; peel once t * 5 < 3 * 3, i.e. after the second sample
        assert outcome.samples_drawn == 2
        assert outcome.peeled == 1

    def test_bipartite_left_side_peeled(self):
        """Test K(50,600) at l=300: each left node peels after 151 samples."""
        graph = gen_complete_bipartite(50, 600)

        outcome = engine_for(graph, seed=4).run(300.0, 0.5)

        assert outcome.h_size == 50
        assert outcome.survivors == []
        assert outcome.samples_drawn == 50 * 151
        assert outcome.peeled == 50

    def test_dense_clique_survives(self, dense_clique_union):
        """Test that the K600 nodes survive at the second schedule step."""
        params = init_params(dense_clique_union.node_count, 1.0, 0.5).at_step(2)

        outcome = engine_for(dense_clique_union, seed=1).run(params.l, params.p)

        assert outcome.survivors == list(range(600))
        assert outcome.samples_drawn == 600 * sample_count(params.p, 599)

    def test_low_side_peeled_clique_survives(self):
        """Test that bipartite hubs peel while the clique survives."""
        graph = disjoint_union(gen_complete_bipartite(30, 200), gen_complete(80))

        outcome = engine_for(graph, seed=2).run(70.0, 0.4)

        assert outcome.h_size == 30 + 80
        assert set(outcome.survivors) == set(range(230, 310))

    @pytest.mark.parametrize("seed", range(10))
    def test_path_interior_peels_completely(self, seed):
        """Test that peels spread along a path from its degree-1 ends.

        Interior nodes sample either their lower or upper neighbor first;
        in both cases every interior node ends in L, through the queue when
        only upper neighbors are sampled.
        """
        outcome = engine_for(gen_path(10), seed=seed).run(2.0, 0.6)

        assert outcome.h_size == 8
        assert outcome.survivors == []
        assert outcome.peeled == 8

    def test_cycle_survives(self):
        """Test that a cycle has no L nodes to peel against."""
        outcome = engine_for(gen_cycle(12)).run(2.0, 0.6)

        assert outcome.survivors == list(range(12))

    def test_excluded_nodes_never_in_h(self, k5):
        """Test that excluded nodes are skipped and count as L."""
        engine = engine_for(k5)
        engine.exclude([0, 0])

        outcome = engine.run(4.0, 0.5)

        assert engine.excluded_count == 1
        assert engine.is_excluded(0)
        assert outcome.h_size == 4
        assert 0 not in outcome.survivors

    def test_high_degree_nodes_order(self):
        """Test that H is listed by descending degree, ties by id."""
        graph = disjoint_union(gen_star(3), gen_complete(4))

        assert engine_for(graph).high_degree_nodes(2.0) == [0, 4, 5, 6, 7]

    def test_reused_state_matches_fresh_engine(self):
        """Test that epoch stamping isolates consecutive trials."""
        graph = gen_erdos_renyi(300, 40, seed=8)
        engine = engine_for(graph, seed=3)

        first = engine.run(45.0, 0.3)
        engine.run(30.0, 0.5)
        again = engine.run(45.0, 0.3)
        fresh = engine_for(graph, seed=3).run(45.0, 0.3)

        assert first.survivors == again.survivors == fresh.survivors
        assert first.samples_drawn == again.samples_drawn == fresh.samples_drawn

    def test_run_trial_wrapper(self, k5):
        """Test the functional interface."""
        survivors, samples = run_trial(k5, 4.0, 0.5, RandomSource.create(0, 4))

        assert survivors == {0, 1, 2, 3, 4}
        assert samples == 10

    @pytest.mark.parametrize("l,p", [(4.0, 1.0), (4.0, 0.0), (4.0, 1.5), (0.0, 0.5), (-1.0, 0.5)])
    def test_invalid_arguments(self, k5, l, p):
        """Test the p in (0, 1) and l > 0 checks."""
        with pytest.raises(ParameterError):
            engine_for(k5).run(l, p)

    def test_random_source_too_short(self, k5):
        """Test that R must cover the maximum degree."""
        with pytest.raises(ParameterError):
            TrialEngine(k5, RandomSource.create(0, 3))


class TestCounterBounds:
    """Tests for the survivor counter against the samples drawn."""

    @pytest.mark.parametrize("seed", range(5))
    def test_bounds_at_every_peel(self, seed):
        """Test the counter bounds on a graph with heavy peeling."""
        graph = disjoint_union(gen_complete_bipartite(30, 200), gen_complete(80))
        engine = engine_for(graph, seed=seed)
        recorder = CounterRecorder(engine)

        outcome = engine.run(70.0, 0.4, observer=recorder)

        assert len(recorder.peels) == outcome.peeled > 0
        assert sorted(recorder.dequeued) == sorted(recorder.peels)

    @pytest.mark.parametrize("seed", range(5))
    def test_survivor_counters_exact(self, seed):
        """Test t(v) = k(v) - samples now in L for every survivor."""
        graph = gen_erdos_renyi(400, 60, seed=seed)
        engine = engine_for(graph, seed=seed)
        recorder = CounterRecorder(engine)

        outcome = engine.run(60.0, 0.3, observer=recorder)

        state = engine.state
        for v in outcome.survivors:
            drawn = recorder.samples[v]
            in_l = sum(1 for u, _ in drawn if not state.is_in_h(u))
            assert len(drawn) == state.k[v]
            assert state.t[v] == state.k[v] - in_l
            assert not state.t[v] * graph.degree(v) < 60.0 * state.k[v]

    def test_peeled_nodes_left_h(self):
        """Test that every recorded peel ends outside H."""
        graph = gen_erdos_renyi(400, 60, seed=11)
        engine = engine_for(graph, seed=11)
        recorder = CounterRecorder(engine)

        outcome = engine.run(62.0, 0.3, observer=recorder)

        assert all(not engine.state.is_in_h(v) for v in recorder.peels)
        assert set(outcome.survivors).isdisjoint(recorder.peels)
        assert np.unique(recorder.peels).size == len(recorder.peels)
