import pytest

from quadrimm.catalog import grid_disk, quad_disk, spoke_triangle_disk, strip_disk
from quadrimm.disks import (
    DiskQuadrangulation,
    buffer_disk,
    classify_irreducible,
    enumerate_disks,
    is_irreducible,
    reduce_disk,
    unbuffer_disk,
    validate_disk,
)
from quadrimm.errors import BudgetError, PreconditionError


class TestValidate:
    def test_single_quadrangle_is_a_square(self):
        rep = validate_disk(quad_disk())
        assert rep.passed
        assert (rep.b2, rep.i3, rep.shape) == (4, 0, "square")

    def test_spoke_triangle(self):
        rep = validate_disk(spoke_triangle_disk())
        assert rep.passed
        assert (rep.b2, rep.i3, rep.shape) == (3, 1, "triangle")

    def test_two_by_two_grid(self):
        rep = validate_disk(grid_disk(2, 2))
        assert rep.passed
        assert (rep.b2, rep.i3, rep.i4) == (4, 0, 1)

    def test_curvature_identity_b2_plus_i3(self):
        for d in (quad_disk(), spoke_triangle_disk(), grid_disk(3, 2),
                  buffer_disk(quad_disk()), strip_disk(5)):
            rep = validate_disk(d)
            assert rep.passed
            assert rep.b2 + rep.i3 == 4

    def test_bad_outer_face_reported(self):
        g = spoke_triangle_disk().map
        inner = next(f for f in range(g.n_faces) if g.face_length(f) == 4)
        rep = validate_disk(DiskQuadrangulation(g, g.face_darts[inner][0]))
        assert not rep.passed


class TestBuffering:
    def test_buffer_of_quadrangle(self):
        b = buffer_disk(quad_disk())
        rep = validate_disk(b)
        assert rep.passed
        assert (rep.b2, rep.i3) == (0, 4)
        assert b.map.n_vertices == 8
        assert b.boundary_length() == 4

    def test_buffer_raises_old_boundary_degrees(self):
        d = spoke_triangle_disk()
        before = sorted(d.map.degree(v) for v in d.boundary_vertices())
        b = buffer_disk(d)
        rep = validate_disk(b)
        assert rep.passed and rep.b2 == 0
        inner = unbuffer_disk(b)
        after = sorted(inner.map.degree(v) for v in inner.boundary_vertices())
        assert after == before

    @pytest.mark.parametrize("disk_fn", [quad_disk, spoke_triangle_disk,
                                         lambda: grid_disk(2, 2)])
    def test_unbuffer_inverts_buffer(self, disk_fn):
        d = disk_fn()
        assert unbuffer_disk(buffer_disk(d)).canonical_code() == d.canonical_code()

    def test_unbuffer_rejects_non_buffering(self):
        with pytest.raises(PreconditionError):
            unbuffer_disk(quad_disk())  # boundary has degree-2 corners


class TestReduction:
    def test_irreducible_fixed(self):
        for d in (quad_disk(), spoke_triangle_disk(), buffer_disk(quad_disk())):
            assert is_irreducible(d)
            assert reduce_disk(d).canonical_code() == d.canonical_code()

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_strip_reduces_to_quadrangle(self, k):
        out = reduce_disk(strip_disk(k))
        assert out.canonical_code() == quad_disk().canonical_code()

    def test_grid_reduces_to_quadrangle(self):
        out = reduce_disk(grid_disk(3, 3))
        assert out.canonical_code() == quad_disk().canonical_code()

    def test_double_buffering_is_reducible(self):
        # the inner ring of a second buffering becomes a closed transversal
        bb = buffer_disk(buffer_disk(quad_disk()))
        assert not is_irreducible(bb)
        out = reduce_disk(bb)
        assert is_irreducible(out)

    def test_reduction_idempotent(self):
        for d in (strip_disk(4), grid_disk(2, 3),
                  buffer_disk(buffer_disk(quad_disk()))):
            once = reduce_disk(d)
            assert reduce_disk(once).canonical_code() == once.canonical_code()


class TestEnumeration:
    def test_includes_the_quadrangle(self):
        disks = list(enumerate_disks(4, 8))
        codes = {d.canonical_code() for d in disks}
        assert quad_disk().canonical_code() in codes
        assert buffer_disk(quad_disk()).canonical_code() in codes

    def test_small_boundary_four_census(self):
        # boundary 4 up to 12 vertices: quadrangle, its buffering, and the
        # (reducible) double buffering
        disks = list(enumerate_disks(4, 12))
        assert len(disks) == 3
        assert sum(is_irreducible(d) for d in disks) == 2

    def test_irreducible_only_filter(self):
        irr = list(enumerate_disks(6, 14, irreducible_only=True))
        assert all(is_irreducible(d) for d in irr)
        assert all(validate_disk(d).passed for d in irr)
        codes = {d.canonical_code() for d in irr}
        assert spoke_triangle_disk().canonical_code() in codes

    def test_outputs_are_deduplicated(self):
        disks = list(enumerate_disks(6, 12))
        codes = [d.canonical_code() for d in disks]
        assert len(codes) == len(set(codes))

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            list(enumerate_disks(40, 10))
        with pytest.raises(PreconditionError):
            list(enumerate_disks(5, 10))


class TestCrossRoute:
    def test_sphere_splits_land_inside_the_disk_enumeration(self):
        # independent completeness probe: cutting enumerated spheres along
        # every complete-transverse cycle must only produce disks the disk
        # enumeration already knows about
        from quadrimm.constructions import split_along_cycle
        from quadrimm.generate import enumerate_cq_upto
        from quadrimm.walks import all_complete_transverse_cycles

        known = {d.canonical_code()
                 for d in enumerate_disks(12, 22, budget=(12, 22))}
        checked = 0
        buckets = enumerate_cq_upto(12)
        for n in sorted(buckets):
            for g in buckets[n]:
                for cyc in all_complete_transverse_cycles(g):
                    da, db, _ = split_along_cycle(g, cyc)
                    for disk in (da, db):
                        if disk.boundary_length() <= 12 and \
                                disk.map.n_vertices <= 22:
                            checked += 1
                            assert disk.canonical_code() in known
        assert checked >= 20


class TestClassification:
    def test_triangle_is_in_the_base_set(self):
        res = classify_irreducible(16, max_boundary=8)
        assert res.passed
        assert spoke_triangle_disk().canonical_code() in res.base_codes

    def test_buffered_triangle_is_a_buffering(self):
        res = classify_irreducible(16, max_boundary=8)
        assert buffer_disk(spoke_triangle_disk()).canonical_code() in \
            res.buffering_codes
