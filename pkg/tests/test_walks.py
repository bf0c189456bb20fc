import pytest

from quadrimm.canon import canon_embedded, canon_multigraph
from quadrimm.catalog import (
    cube_map,
    cube_multigraph,
    two_crossing_extraction,
    two_crossing_map,
)
from quadrimm.constructions import radial
from quadrimm.errors import NotACrossingError, UnsupportedDegreeError
from quadrimm.multigraph import complete_graph
from quadrimm.walks import (
    extract,
    has_complete_transverse_cycle,
    maximal_transverse_walks,
    reduce_embedding,
    straight_exit,
)


class TestStraightExit:
    def test_definition_at_a_crossing(self):
        g = two_crossing_map()
        hub = next(v for v in range(g.n_vertices) if g.degree(v) == 4)
        # arrive at the hub from any neighbor; the exit must be the
        # rotation-opposite dart, two steps around
        incoming = g.vertex_darts[hub][0] ^ 1
        out = straight_exit(g, incoming)
        arrival = incoming ^ 1
        assert out == g.rotation[g.rotation[arrival]]
        # entering and leaving darts are non-consecutive in the rotation
        assert g.rotation[arrival] != out and g.rotation[out] != arrival

    def test_hub_connects_opposite_rim_vertices(self):
        g = two_crossing_map()
        # vertex 0 is the inner hub adjacent to rim 1,2,3,4 in order;
        # enter it from rim vertex 1 and come out at the antipode 3
        d_in = next(d for d in g.vertex_darts[1]
                    if g.vertex_of[d ^ 1] == 0)
        d_out = straight_exit(g, d_in)
        assert g.vertex_of[d_out] == 0
        assert g.vertex_of[d_out ^ 1] == 3

    def test_two_steps_stay_on_the_same_walk(self):
        g = radial(radial(cube_map()))
        walks = maximal_transverse_walks(g)
        by_edge = {}
        for i, w in enumerate(walks):
            for e in w.edges:
                by_edge[e] = i
        for w in walks:
            for d in w.dart_sequence:
                if g.degree(g.vertex_of[d ^ 1]) == 4:
                    nxt = straight_exit(g, d)
                    assert by_edge[nxt >> 1] == by_edge[d >> 1]

    def test_not_a_crossing(self):
        g = cube_map()
        with pytest.raises(NotACrossingError):
            straight_exit(g, 0)


class TestWalkDecomposition:
    def test_cube_walks_are_single_edges(self):
        walks = maximal_transverse_walks(cube_map())
        assert len(walks) == 12
        assert all(w.kind == "path" and len(w) == 1 for w in walks)

    def test_two_crossing_walks(self):
        walks = maximal_transverse_walks(two_crossing_map())
        paths = [w for w in walks if w.kind == "path"]
        assert len(paths) == 12
        assert sorted(len(p) for p in paths) == [1] * 8 + [2] * 4
        assert not [w for w in walks if w.kind == "closed"]

    def test_edge_partition(self):
        for g in (cube_map(), two_crossing_map(), radial(cube_map()),
                  radial(radial(cube_map()))):
            walks = maximal_transverse_walks(g)
            all_edges = sorted(e for w in walks for e in w.edges)
            assert all_edges == list(range(g.n_edges))

    def test_double_radial_contains_transversals(self):
        # the radial of the cube is irreducible, its radial is not
        r = radial(cube_map())
        assert not [w for w in maximal_transverse_walks(r) if w.kind == "closed"]
        rr = radial(r)
        assert [w for w in maximal_transverse_walks(rr) if w.kind == "closed"]

    def test_unsupported_degree(self):
        from quadrimm.catalog import single_edge_map
        with pytest.raises(UnsupportedDegreeError):
            maximal_transverse_walks(single_edge_map())


class TestExtraction:
    def test_cube_extracts_to_itself(self):
        assert canon_multigraph(extract(cube_map())) == \
            canon_multigraph(cube_multigraph())

    def test_radial_cube_extracts_to_two_k4(self):
        two_k4 = complete_graph(4).disjoint_union(complete_graph(4))
        assert canon_multigraph(extract(radial(cube_map()))) == \
            canon_multigraph(two_k4)

    def test_two_crossing_extraction(self):
        assert canon_multigraph(extract(two_crossing_map())) == \
            canon_multigraph(two_crossing_extraction())

    def test_extraction_is_cubic_on_eight_vertices(self):
        for g in (cube_map(), two_crossing_map(), radial(cube_map())):
            m = extract(g)
            assert m.vertex_count == 8
            assert m.is_cubic()


class TestReduction:
    def test_cube_unchanged(self):
        assert reduce_embedding(cube_map()) == cube_map()

    def test_double_radial_reduces_with_same_extraction(self):
        rr = radial(radial(cube_map()))
        red = reduce_embedding(rr)
        assert red.n_vertices < rr.n_vertices
        assert canon_multigraph(extract(red)) == canon_multigraph(extract(rr))
        assert canon_multigraph(extract(red)) == canon_multigraph(extract(cube_map()))

    def test_idempotent(self):
        for g in (cube_map(), radial(radial(cube_map()))):
            once = reduce_embedding(g)
            twice = reduce_embedding(once)
            assert canon_embedded(once) == canon_embedded(twice)

    def test_all_transversal_component_vanishes(self):
        from quadrimm.embedding import dual
        from quadrimm.catalog import quadrangle_map
        pillow = dual(quadrangle_map())  # all degree 4: two closed walks
        out = reduce_embedding(pillow)
        assert out.n_darts == 0


class TestCompleteTransverseCycle:
    def test_cube_has_a_face_cycle(self):
        cyc = has_complete_transverse_cycle(cube_map())
        assert cyc is not None and len(cyc) == 4

    def test_two_disks_output_has_cycle(self):
        from quadrimm.catalog import quad_disk
        from quadrimm.constructions import BoundaryBijection, two_disks
        from quadrimm.disks import buffer_disk
        g = two_disks(buffer_disk(quad_disk()), quad_disk(), BoundaryBijection(0))
        assert has_complete_transverse_cycle(g) is not None

    def test_lift_rejects_vertex_repeats(self):
        g = two_crossing_map()
        cyc = has_complete_transverse_cycle(g)
        assert cyc is not None
        assert len(set(cyc)) == len(cyc)

    def test_obstructed_quadrangulation_has_none(self):
        from quadrimm.catalog import no_cycle_quadrangulation
        from quadrimm.embedding import validate_cq
        g = no_cycle_quadrangulation()
        assert validate_cq(g).passed
        assert has_complete_transverse_cycle(g) is None
