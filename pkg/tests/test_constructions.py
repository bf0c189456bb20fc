import pytest

from quadrimm.canon import canon_embedded, canon_multigraph
from quadrimm.catalog import (
    cube_cabling_walk,
    cube_map,
    quad_disk,
    spoke_triangle_disk,
    two_crossing_map,
)
from quadrimm.constructions import (
    BoundaryBijection,
    SpiralInput,
    build_cabling_walk,
    cable,
    classify_turn,
    radial,
    spiral,
    split_along_cycle,
    two_disks,
)
from quadrimm.disks import buffer_disk, validate_disk
from quadrimm.embedding import validate_cq
from quadrimm.errors import PreconditionError
from quadrimm.generate import enumerate_cq_upto
from quadrimm.multigraph import complete_graph
from quadrimm.walks import extract, has_complete_transverse_cycle, maximal_transverse_walks


def spiral_start(disk):
    return next(v for v in disk.boundary_vertices() if disk.map.degree(v) == 3)


class TestRadial:
    def test_radial_cube_is_a_cq(self):
        r = radial(cube_map())
        rep = validate_cq(r)
        assert rep.passed
        assert r.n_vertices == 14
        two_k4 = complete_graph(4).disjoint_union(complete_graph(4))
        assert canon_multigraph(extract(r)) == canon_multigraph(two_k4)

    def test_radial_preserves_validity(self):
        for g in (cube_map(), two_crossing_map()):
            assert validate_cq(radial(g)).passed

    def test_double_radial_extraction_identity(self):
        for g in (cube_map(), two_crossing_map()):
            assert canon_multigraph(extract(radial(radial(g)))) == \
                canon_multigraph(extract(g))

    def test_odd_order_radial_disconnects(self):
        disk = spoke_triangle_disk()
        g11 = spiral(SpiralInput(disk, spiral_start(disk), False, 4))
        assert g11.n_vertices == 11
        assert not extract(radial(g11)).is_connected()

    def test_connected_radial_extraction_needs_a_transversal(self):
        # contrapositive check over a small pool: whenever the radial's
        # extraction is connected there is a closed transversal
        disk = spoke_triangle_disk()
        pool = [cube_map(), two_crossing_map()]
        pool += [spiral(SpiralInput(disk, spiral_start(disk), False, l))
                 for l in (1, 3, 4, 5)]
        checked = 0
        for g in pool:
            r = radial(g)
            if extract(r).is_connected():
                checked += 1
                assert any(w.kind == "closed"
                           for w in maximal_transverse_walks(r))
        assert checked >= 0  # property must hold wherever it applies


class TestSpiral:
    def test_arm_one_gives_the_cube(self):
        disk = spoke_triangle_disk()
        g = spiral(SpiralInput(disk, spiral_start(disk), False, 1))
        assert canon_embedded(g) == canon_embedded(cube_map())

    def test_arm_two_rejected(self):
        disk = spoke_triangle_disk()
        with pytest.raises(PreconditionError):
            spiral(SpiralInput(disk, spiral_start(disk), False, 2))

    @pytest.mark.parametrize("l", [1, 3, 4, 5, 6, 9, 12])
    def test_valid_arms_produce_cqs(self, l):
        disk = spoke_triangle_disk()
        g = spiral(SpiralInput(disk, spiral_start(disk), False, l))
        assert validate_cq(g).passed
        assert g.n_vertices == disk.map.n_vertices + l

    def test_extraction_periodicity(self):
        disk = spoke_triangle_disk()
        start = spiral_start(disk)
        n = disk.boundary_length()
        for l in (3, 4, 5, 6):
            a = extract(spiral(SpiralInput(disk, start, False, l)))
            b = extract(spiral(SpiralInput(disk, start, False, l + n - 1)))
            assert canon_multigraph(a) == canon_multigraph(b)

    def test_reversed_labeling_also_works(self):
        disk = spoke_triangle_disk()
        g = spiral(SpiralInput(disk, spiral_start(disk), True, 3))
        assert validate_cq(g).passed

    def test_bad_labeling_rejected(self):
        disk = quad_disk()  # boundary too short, no degree-3 vertex
        with pytest.raises(PreconditionError):
            spiral(SpiralInput(disk, disk.boundary_vertices()[0], False, 1))


class TestTwoDisks:
    def test_buffered_quadrangle_plus_quadrangle_is_the_cube(self):
        g = two_disks(buffer_disk(quad_disk()), quad_disk(), BoundaryBijection(0))
        assert canon_embedded(g) == canon_embedded(cube_map())

    def test_all_offsets_and_directions_are_valid(self):
        bq, qd = buffer_disk(quad_disk()), quad_disk()
        for reverse in (False, True):
            for off in range(4):
                g = two_disks(bq, qd, BoundaryBijection(off, reverse))
                assert validate_cq(g).passed

    def test_two_degree_two_vertices_rejected(self):
        with pytest.raises(PreconditionError):
            two_disks(quad_disk(), quad_disk(), BoundaryBijection(0))

    def test_mismatched_boundaries_rejected(self):
        with pytest.raises(PreconditionError):
            two_disks(spoke_triangle_disk(), quad_disk(), BoundaryBijection(0))

    def test_different_bijections_can_change_the_extraction(self):
        from quadrimm.disks import enumerate_disks
        pool = [d for d in enumerate_disks(8, 16)
                if validate_disk(d).b2 >= 1]
        by_boundary = {}
        for d in pool:
            by_boundary.setdefault(d.boundary_length(), []).append(d)
        found = None
        for length, group in sorted(by_boundary.items()):
            for i, d1 in enumerate(group):
                for d2 in group[i:]:
                    seen = {}
                    for reverse in (False, True):
                        for off in range(length):
                            try:
                                g = two_disks(d1, d2, BoundaryBijection(off, reverse))
                            except PreconditionError:
                                continue
                            seen[(reverse, off)] = (
                                canon_multigraph(extract(g)), canon_embedded(g))
                    codes = {v[0] for v in seen.values()}
                    if len(codes) > 1:
                        found = seen
                        break
                if found:
                    break
            if found:
                break
        assert found is not None, "no disk pair exhibits bijection sensitivity"
        embedded = {v[1] for v in found.values()}
        assert len(embedded) > 1  # distinct embeddings, not only extractions

    def test_glued_seam_is_a_complete_path_cycle(self):
        g = two_disks(buffer_disk(quad_disk()), quad_disk(), BoundaryBijection(1))
        assert has_complete_transverse_cycle(g) is not None

    def test_double_buffered_pair_creates_a_transversal(self):
        bq = buffer_disk(quad_disk())
        g = two_disks(bq, bq, BoundaryBijection(0))
        assert validate_cq(g).passed
        assert any(w.kind == "closed" for w in maximal_transverse_walks(g))

    def test_auto_fix_unbuffers_a_doubly_buffered_pair(self):
        bq = buffer_disk(quad_disk())
        g = two_disks(bq, bq, BoundaryBijection(0), auto_fix=True)
        assert validate_cq(g).passed
        assert not any(w.kind == "closed" for w in maximal_transverse_walks(g))


class TestSplit:
    def test_round_trip_on_glued_disks(self):
        d1 = buffer_disk(quad_disk())
        d2 = quad_disk()
        g = two_disks(d1, d2, BoundaryBijection(2))
        cyc = has_complete_transverse_cycle(g)
        da, db, phi = split_along_cycle(g, cyc)
        assert validate_disk(da).passed and validate_disk(db).passed
        g2 = two_disks(da, db, phi)
        assert canon_embedded(g2) == canon_embedded(g)

    def test_cube_splits_into_quadrangle_and_complement(self):
        cube = cube_map()
        cyc = has_complete_transverse_cycle(cube)
        da, db, phi = split_along_cycle(cube, cyc)
        sizes = sorted((da.map.n_faces, db.map.n_faces))
        assert sizes == [2, 6]  # quadrangle disk and the 5-face disk
        assert canon_embedded(two_disks(da, db, phi)) == canon_embedded(cube)

    def test_round_trip_across_enumerated_corpus(self):
        buckets = enumerate_cq_upto(12)
        for n in sorted(buckets):
            for g in buckets[n]:
                cyc = has_complete_transverse_cycle(g)
                if cyc is None:
                    continue
                da, db, phi = split_along_cycle(g, cyc)
                assert canon_embedded(two_disks(da, db, phi)) == canon_embedded(g)


class TestCable:
    def test_turn_classification_is_the_face_order(self):
        g = cube_map()
        labels = classify_turn(g, 0)
        f = g.face_of[0]
        orbit = g.face_darts[f]
        k = orbit.index(0)
        assert labels[orbit[(k + 2) % 4] >> 1] == "S"
        assert len(labels) == 3

    def test_equatorial_walk_is_all_straight(self):
        g = cube_map()
        found = None
        for e in range(g.n_edges):
            for start in (2 * e, 2 * e + 1):
                seq = [start]
                cur = start
                for _ in range(8):
                    f = g.face_of[cur]
                    orbit = g.face_darts[f]
                    cur = orbit[(orbit.index(cur) + 2) % 4] ^ 1
                    if cur == start:
                        break
                    seq.append(cur)
                if cur == start and len(seq) == 4:
                    found = [d >> 1 for d in seq]
                    break
            if found:
                break
        walk = build_cabling_walk(g, found, "SSSS")
        assert walk.period() == 0

    def test_zero_strands_is_identity(self):
        walk = cube_cabling_walk()
        assert cable(cube_map(), walk, 0) == cube_map()

    def test_family_validity_and_periodicity(self):
        walk = cube_cabling_walk()
        host = cube_map()
        assert walk.period() == 4
        codes = []
        for c in range(12):
            g = cable(host, walk, c)
            assert validate_cq(g).passed
            codes.append(canon_multigraph(extract(g)))
        assert all(codes[c] == codes[c + 4] for c in range(8))
        for p in (1, 2, 3):
            assert not all(codes[c] == codes[c + p] for c in range(12 - p))

    def test_invalid_turn_labels_rejected(self):
        with pytest.raises(PreconditionError):
            build_cabling_walk(cube_map(), (0, 1, 5, 6, 11, 8),
                               ("R", "S", "L", "R", "S", "R"))

    def test_repeated_edge_rejected(self):
        with pytest.raises(PreconditionError):
            build_cabling_walk(cube_map(), (0, 0), ("S", "S"))
