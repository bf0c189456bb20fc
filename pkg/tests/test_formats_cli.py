import json
import os
import subprocess
import sys

import pytest

from quadrimm.canon import canon_embedded
from quadrimm.catalog import (
    cube_cabling_walk,
    cube_map,
    quad_disk,
    spoke_triangle_disk,
    two_crossing_map,
)
from quadrimm.cli import main
from quadrimm.disks import DiskQuadrangulation
from quadrimm.formats import (
    FormatError,
    export_dot,
    parse_emb,
    parse_emb_stream,
    parse_mgr,
    parse_walk_line,
    serialize_emb,
    serialize_mgr,
    serialize_walk,
)
from quadrimm.multigraph import Multigraph


class TestEmbFormat:
    def test_round_trip(self):
        for g in (cube_map(), two_crossing_map()):
            text = serialize_emb(g)
            assert serialize_emb(parse_emb(text)) == text
            assert parse_emb(text) == g

    def test_cube_fixture_counts(self):
        g = parse_emb(serialize_emb(cube_map()))
        assert g.n_darts == 24
        assert g.n_faces == 6

    def test_disk_round_trip(self):
        d = spoke_triangle_disk()
        text = serialize_emb(d)
        back = parse_emb(text)
        assert isinstance(back, DiskQuadrangulation)
        assert back.canonical_code() == d.canonical_code()
        assert serialize_emb(back) == text

    def test_non_permutation_rejected_with_location(self):
        with pytest.raises(FormatError) as exc:
            parse_emb("emb 4\nsigma: 1 1 3 2\n")
        assert exc.value.line == 2

    def test_out_of_range_dart(self):
        with pytest.raises(FormatError):
            parse_emb("emb 2\nsigma: 0 5\n")

    def test_stream_parsing(self):
        text = serialize_emb(cube_map()) + serialize_emb(two_crossing_map())
        objs = parse_emb_stream(text)
        assert [o.n_vertices for o in objs] == [8, 10]


class TestMgrFormat:
    def test_round_trip_with_loops(self):
        m = Multigraph(2, [(0, 0), (0, 1), (1, 1)])
        text = serialize_mgr(m)
        assert parse_mgr(text) == m
        assert serialize_mgr(parse_mgr(text)) == text

    def test_degree_semantics(self):
        m = parse_mgr("mgr 2\n0 0\n0 1\n1 1\n")
        assert m.degrees() == [3, 3]

    def test_bad_endpoint_reported(self):
        with pytest.raises(FormatError) as exc:
            parse_mgr("mgr 2\n0 7\n")
        assert exc.value.line == 2


class TestWalkFormat:
    def test_round_trip(self):
        walk = cube_cabling_walk()
        line = serialize_walk(walk.edge_sequence, walk.turns)
        edges, turns = parse_walk_line(line)
        assert edges == walk.edge_sequence and turns == walk.turns

    def test_bad_token(self):
        with pytest.raises(FormatError):
            parse_walk_line("e3R x9Q")


class TestDot:
    def test_cube_dot_is_stable(self):
        a = export_dot(cube_map())
        b = export_dot(cube_map())
        assert a == b
        assert a.count(" -- ") == 12
        assert a.count("[shape=circle]") == 8
        assert "// faces:" in a

    def test_multigraph_dot(self):
        from quadrimm.walks import extract
        text = export_dot(extract(two_crossing_map()))
        assert text.count(" -- ") == 12

    def test_two_component_multigraph_renders(self):
        from quadrimm.multigraph import complete_graph
        m = complete_graph(4).disjoint_union(complete_graph(4))
        assert export_dot(m).count(" -- ") == 12


@pytest.fixture()
def fixture_dir(tmp_path):
    cube = tmp_path / "cube.emb"
    cube.write_text(serialize_emb(cube_map()))
    disk = tmp_path / "quad.emb"
    disk.write_text(serialize_emb(quad_disk()))
    tri = tmp_path / "triangle.emb"
    tri.write_text(serialize_emb(spoke_triangle_disk()))
    return tmp_path


class TestCli:
    def test_validate_ok(self, fixture_dir, capsys):
        assert main(["validate", str(fixture_dir / "cube.emb")]) == 0
        assert "valid" in capsys.readouterr().out

    def test_validate_json(self, fixture_dir, capsys):
        assert main(["validate", str(fixture_dir / "cube.emb"), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True and payload["nu3"] == 8

    def test_validate_failure_exit_code(self, tmp_path, capsys):
        from quadrimm.catalog import triangle_map
        bad = tmp_path / "tri.emb"
        bad.write_text(serialize_emb(triangle_map()))
        assert main(["validate", str(bad)]) == 2

    def test_extract_and_manifest_replay(self, fixture_dir, capsys):
        out = fixture_dir / "cube.mgr"
        argv = ["extract", str(fixture_dir / "cube.emb"), "-o", str(out)]
        assert main(argv) == 0
        assert out.exists()
        manifest = out.with_suffix(".mgr.manifest.json")
        assert manifest.exists()
        assert main(["replay", str(manifest)]) == 0
        assert "byte-identical" in capsys.readouterr().out

    def test_iso_verdicts(self, fixture_dir, tmp_path, capsys):
        other = tmp_path / "tc.emb"
        other.write_text(serialize_emb(two_crossing_map()))
        assert main(["iso", str(fixture_dir / "cube.emb"),
                     str(fixture_dir / "cube.emb")]) == 0
        assert main(["iso", str(fixture_dir / "cube.emb"), str(other)]) == 2

    def test_canon_digest_matches_library(self, fixture_dir, capsys):
        assert main(["canon", str(fixture_dir / "cube.emb")]) == 0
        digest = capsys.readouterr().out.strip()
        assert digest == canon_embedded(cube_map()).digest()

    def test_enum_budget_exit_code(self, capsys):
        assert main(["enum", "--n", "18"]) == 4

    def test_spiral_cli(self, fixture_dir, tmp_path, capsys):
        disk = spoke_triangle_disk()
        start = next(v for v in disk.boundary_vertices()
                     if disk.map.degree(v) == 3)
        out = tmp_path / "s.emb"
        assert main(["spiral", str(fixture_dir / "triangle.emb"),
                     "--l", "3", "--label-start", str(start),
                     "-o", str(out)]) == 0
        assert main(["validate", str(out)]) == 0

    def test_cable_cli(self, fixture_dir, tmp_path, capsys):
        walk = cube_cabling_walk()
        wfile = tmp_path / "walk.txt"
        wfile.write_text(serialize_walk(walk.edge_sequence, walk.turns))
        out = tmp_path / "c2.emb"
        assert main(["cable", str(fixture_dir / "cube.emb"),
                     "--walk", str(wfile), "--c", "2", "-o", str(out)]) == 0
        assert main(["validate", str(out)]) == 0

    def test_two_disks_cli(self, fixture_dir, tmp_path, capsys):
        bq = tmp_path / "bq.emb"
        from quadrimm.disks import buffer_disk
        bq.write_text(serialize_emb(buffer_disk(quad_disk())))
        out = tmp_path / "glued.emb"
        assert main(["two-disks", str(bq), str(fixture_dir / "quad.emb"),
                     "--offset", "1", "-o", str(out)]) == 0
        assert main(["iso", str(out), str(fixture_dir / "cube.emb")]) == 0

    def test_census_tsv_and_figures(self, tmp_path, capsys):
        figs = tmp_path / "figs"
        assert main(["census", "--n", "2", "--figures", str(figs)]) == 0
        out = capsys.readouterr().out
        assert "connected\t2\t2" in out
        assert len(list(figs.glob("census2_*.png"))) == 2

    def test_census_disconnected_json(self, capsys):
        assert main(["census", "--disconnected-8", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["disconnected_8"] == 69

    def test_coverage_cli(self, tmp_path, capsys):
        corpus_dir = tmp_path / "corpus"
        os.makedirs(corpus_dir)
        (corpus_dir / "cube.emb").write_text(serialize_emb(cube_map()))
        figs = tmp_path / "cfigs"
        assert main(["coverage", "--corpus", str(corpus_dir),
                     "--figures", str(figs), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["targets"] == 140 and payload["achieved"] == 1
        assert (figs / "coverage.png").exists()

    def test_disks_cli_stream(self, tmp_path, capsys):
        out = tmp_path / "disks.emb"
        assert main(["disks", "--max-boundary", "4", "--max-vertices", "8",
                     "-o", str(out)]) == 0
        objs = parse_emb_stream(out.read_text())
        assert len(objs) == 2
        assert all(isinstance(o, DiskQuadrangulation) for o in objs)

    def test_classify_disks_cli(self, capsys):
        assert main(["classify-disks", "--bound", "16"]) == 0
        out = capsys.readouterr().out
        assert "counterexamples\t0" in out

    def test_export_dot_cli(self, fixture_dir, capsys):
        assert main(["export-dot", str(fixture_dir / "cube.emb")]) == 0
        assert "graph g {" in capsys.readouterr().out

    def test_console_script_entrypoint(self, fixture_dir):
        r = subprocess.run([sys.executable, "-m", "quadrimm.cli", "validate",
                            str(fixture_dir / "cube.emb")],
                           capture_output=True, text=True)
        assert r.returncode == 0


class TestConfig:
    def test_config_file_and_env(self, tmp_path, monkeypatch):
        from quadrimm.config import load_config
        cfg_file = tmp_path / "q.cfg"
        cfg_file.write_text("enum_max_n = 14\n# comment\nworkers = 2\n")
        cfg = load_config(str(cfg_file))
        assert cfg.enum_max_n == 14 and cfg.workers == 2
        monkeypatch.setenv("QUADRIMM_WORKERS", "5")
        assert load_config(str(cfg_file)).workers == 5

    def test_bad_key_rejected(self, tmp_path):
        from quadrimm.config import load_config
        from quadrimm.errors import StructureError
        bad = tmp_path / "bad.cfg"
        bad.write_text("nope = 3\n")
        with pytest.raises(StructureError):
            load_config(str(bad))

    def test_parallel_map_orders_results(self):
        from quadrimm.config import parallel_map
        assert parallel_map(_square, [3, 1, 2], workers=1) == [9, 1, 4]
        assert parallel_map(_square, [3, 1, 2], workers=2) == [9, 1, 4]


def _square(x):
    return x * x
