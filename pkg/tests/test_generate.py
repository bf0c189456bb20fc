import pytest

from quadrimm.canon import canon_embedded, canon_multigraph
from quadrimm.catalog import cube_map, two_crossing_map
from quadrimm.constructions import radial
from quadrimm.errors import BudgetError, PreconditionError
from quadrimm.generate import (
    Corpus,
    census_all_8,
    census_connected_cubic_multigraphs,
    census_disconnected_8,
    coverage_report,
    enumerate_cq,
    enumerate_cq_filtered,
    enumerate_cq_upto,
)
from quadrimm.multigraph import complete_graph
from quadrimm.walks import extract


class TestPrimaryEnumeration:
    def test_eight_vertices_is_only_the_cube(self):
        graphs = list(enumerate_cq(8))
        assert len(graphs) == 1
        assert canon_embedded(graphs[0]) == canon_embedded(cube_map())

    def test_nine_vertices_empty(self):
        assert list(enumerate_cq(9)) == []

    def test_ten_vertices_is_the_two_crossing_map(self):
        graphs = list(enumerate_cq(10))
        assert len(graphs) == 1
        assert canon_embedded(graphs[0]) == canon_embedded(two_crossing_map())

    def test_all_outputs_validate(self):
        from quadrimm.embedding import validate_cq
        buckets = enumerate_cq_upto(12)
        for n, graphs in buckets.items():
            for g in graphs:
                assert g.n_vertices == n
                assert validate_cq(g).passed

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            list(enumerate_cq(17))

    def test_too_small_rejected(self):
        with pytest.raises(PreconditionError):
            list(enumerate_cq(6))


class TestOracleAgreement:
    @pytest.mark.parametrize("n", [8, 9, 10, 11])
    def test_routes_agree(self, n):
        primary = {canon_embedded(g) for g in enumerate_cq(n)}
        oracle = {canon_embedded(g) for g in enumerate_cq_filtered(n)}
        assert primary == oracle

    def test_oracle_outputs_validate(self):
        from quadrimm.embedding import validate_cq
        for g in enumerate_cq_filtered(10):
            assert validate_cq(g).passed

    def test_oracle_budget(self):
        with pytest.raises(BudgetError):
            list(enumerate_cq_filtered(13))


class TestCensus:
    @pytest.mark.parametrize("n,count", [(2, 2), (4, 5), (6, 17)])
    def test_small_connected_counts(self, n, count):
        assert census_connected_cubic_multigraphs(n).connected_counts[n] == count

    def test_eight_connected(self):
        r = census_connected_cubic_multigraphs(8)
        assert r.connected_counts[8] == 71
        assert len(set(r.connected_codes[8])) == 71

    def test_disconnected_eight(self):
        r = census_disconnected_8()
        assert r.disconnected_8_count == 69
        assert r.disconnected_8_subtotals == {
            "2+2+2+2": 5, "2+2+4": 15, "2+6": 34, "4+4": 15}

    def test_odd_count_rejected(self):
        with pytest.raises(PreconditionError):
            census_connected_cubic_multigraphs(3)

    def test_counts_are_permutation_stable(self):
        # rerunning gives identical canonical-code sets
        a = census_connected_cubic_multigraphs(6).connected_codes[6]
        b = census_connected_cubic_multigraphs(6).connected_codes[6]
        assert a == b

    def test_targets_total_140(self):
        connected, disconnected = census_all_8()
        assert len(connected) == 71 and len(disconnected) == 69
        assert not set(connected) & set(disconnected)


class TestCoverage:
    def test_cube_alone_achieves_one_class(self):
        corpus = Corpus()
        corpus.add(cube_map(), "fixture")
        report = coverage_report(corpus)
        assert report.achieved_count == 1
        assert report.target_count == 140

    def test_radial_cube_adds_the_two_k4_class(self):
        corpus = Corpus()
        corpus.add(cube_map(), "fixture")
        corpus.add(radial(cube_map()), "radial")
        report = coverage_report(corpus)
        assert report.achieved_count == 2
        two_k4 = canon_multigraph(
            complete_graph(4).disjoint_union(complete_graph(4)))
        assert two_k4 in report.achieved

    def test_monotone_under_growth(self):
        corpus = Corpus()
        corpus.add(cube_map(), "fixture")
        before = coverage_report(corpus).achieved_count
        for g in enumerate_cq(12):
            corpus.add(g, "enum")
        after = coverage_report(corpus).achieved_count
        assert after >= before

    def test_rejects_invalid_entries(self):
        from quadrimm.catalog import triangle_map
        corpus = Corpus()
        with pytest.raises(PreconditionError):
            corpus.add(triangle_map(), "bad")

    def test_duplicate_entries_collapse(self):
        corpus = Corpus()
        assert corpus.add(cube_map(), "a") is not None
        assert corpus.add(cube_map(), "b") is None
        assert len(corpus) == 1


class TestClosure:
    def test_reduced_radials_reappear_in_the_enumeration(self):
        # radial closure spot-check: the reduced radial of every
        # enumerated quadrangulation with <= 10 vertices shows up again
        # at its own size when that size is within budget
        from quadrimm.walks import reduce_embedding
        buckets = enumerate_cq_upto(14)
        codes_by_n = {n: {canon_embedded(g) for g in gs}
                      for n, gs in buckets.items()}
        checked = 0
        for n in (8, 10):
            for g in buckets.get(n, []):
                red = reduce_embedding(radial(g))
                size = red.n_vertices
                if size <= 14:
                    checked += 1
                    assert canon_embedded(red) in codes_by_n.get(size, set())
        assert checked >= 1

    def test_extraction_needs_a_cubic_vertex(self):
        from quadrimm.embedding import dual
        from quadrimm.catalog import quadrangle_map
        pillow = dual(quadrangle_map())  # two vertices of degree 4
        with pytest.raises(PreconditionError):
            extract(pillow)
