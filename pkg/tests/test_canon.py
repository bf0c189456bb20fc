import random

import pytest

from quadrimm.canon import (
    canon_embedded,
    canon_embedded_rooted,
    canon_multigraph,
    embedded_isomorphic,
    multigraph_isomorphic,
)
from quadrimm.catalog import (
    cube_cabling_walk,
    cube_map,
    cube_multigraph,
    two_crossing_map,
)
from quadrimm.constructions import cable, radial
from quadrimm.embedding import mirror, relabel
from quadrimm.errors import BudgetError
from quadrimm.multigraph import Multigraph, complete_graph
from quadrimm.walks import extract


def random_relabel(g, rng):
    perm = list(range(g.n_edges))
    rng.shuffle(perm)
    flips = [rng.random() < 0.5 for _ in range(g.n_edges)]
    return relabel(g, perm, flips)


class TestEmbeddedCanon:
    def test_relabel_invariance(self):
        rng = random.Random(7)
        for g in (cube_map(), two_crossing_map(), radial(cube_map())):
            code = canon_embedded(g)
            for _ in range(8):
                assert canon_embedded(random_relabel(g, rng)) == code

    def test_mirror_equal_with_reflection(self):
        for g in (cube_map(), two_crossing_map()):
            assert canon_embedded(g) == canon_embedded(mirror(g))

    def test_chiral_example_differs_without_reflection(self):
        g = cable(cube_map(), cube_cabling_walk(), 2)
        assert canon_embedded(g) == canon_embedded(mirror(g))
        assert canon_embedded(g, include_reflection=False) != \
            canon_embedded(mirror(g), include_reflection=False)

    def test_achiral_example_equal_without_reflection(self):
        g = cube_map()
        assert canon_embedded(g, include_reflection=False) == \
            canon_embedded(mirror(g), include_reflection=False)

    def test_different_maps_differ(self):
        assert canon_embedded(cube_map()) != canon_embedded(two_crossing_map())

    def test_isomorphism_helper(self):
        rng = random.Random(3)
        g = two_crossing_map()
        assert embedded_isomorphic(g, random_relabel(g, rng))
        assert not embedded_isomorphic(g, cube_map())

    def test_disconnected_maps_get_component_codes(self):
        g = cube_map()
        shift = g.n_darts
        double = type(g)(tuple(g.rotation) +
                         tuple(d + shift for d in g.rotation))
        code = canon_embedded(double)
        assert code != canon_embedded(g)
        rng = random.Random(13)
        assert canon_embedded(random_relabel(double, rng)) == code

    def test_rooted_code_marks_the_face(self):
        from quadrimm.catalog import grid_disk
        d = grid_disk(2, 1)
        g = d.map
        outer = d.outer_face
        inner = next(f for f in range(g.n_faces) if f != outer)
        a = canon_embedded_rooted(g, g.face_darts[outer])
        b = canon_embedded_rooted(g, g.face_darts[inner])
        assert a != b  # outer 6-face vs a quadrangle


class TestMultigraphCanon:
    def test_k4_permutation_invariance(self):
        rng = random.Random(11)
        k4 = complete_graph(4)
        code = canon_multigraph(k4)
        for _ in range(10):
            perm = list(range(4))
            rng.shuffle(perm)
            m = Multigraph(4, [(perm[u], perm[v]) for u, v in k4.edges])
            assert canon_multigraph(m) == code

    def test_two_vertex_census_pair_distinct(self):
        triple_bond = Multigraph(2, [(0, 1)] * 3)
        loop_edge_loop = Multigraph(2, [(0, 0), (0, 1), (1, 1)])
        assert canon_multigraph(triple_bond) != canon_multigraph(loop_edge_loop)

    def test_radial_cube_extraction_is_two_k4(self):
        two_k4 = complete_graph(4).disjoint_union(complete_graph(4))
        assert multigraph_isomorphic(extract(radial(cube_map())), two_k4)

    def test_loops_and_multiplicities_matter(self):
        a = Multigraph(4, [(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)])
        b = Multigraph(4, [(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)])
        assert canon_multigraph(a) != canon_multigraph(b)

    def test_permutation_invariance_with_loops(self):
        rng = random.Random(5)
        m = Multigraph(4, [(0, 0), (0, 1), (1, 2), (1, 3), (2, 3), (2, 3)])
        code = canon_multigraph(m)
        for _ in range(10):
            perm = list(range(4))
            rng.shuffle(perm)
            pm = Multigraph(4, [(perm[u], perm[v]) for u, v in m.edges])
            assert canon_multigraph(pm) == code

    def test_bound_refusal(self):
        big = Multigraph(13, [(i, (i + 1) % 13) for i in range(13)])
        with pytest.raises(BudgetError):
            canon_multigraph(big)

    def test_extraction_commutes_with_relabeling(self):
        rng = random.Random(2)
        g = two_crossing_map()
        code = canon_multigraph(extract(g))
        for _ in range(5):
            assert canon_multigraph(extract(random_relabel(g, rng))) == code

    def test_cube_graph_fixed_point(self):
        assert multigraph_isomorphic(cube_multigraph(), extract(cube_map()))
