"""The quadrimm command-line interface.

Exit codes: 0 success, 2 validation failure (report printed), 3
precondition error, 4 budget refusal.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .canon import canon_embedded, canon_multigraph
from .config import load_config
from .constructions import (
    BoundaryBijection,
    SpiralInput,
    build_cabling_walk,
    cable,
    radial,
    spiral,
    two_disks,
)
from .disks import DiskQuadrangulation, classify_irreducible, enumerate_disks
from .embedding import EmbeddedGraph, validate_cq
from .errors import BudgetError, PreconditionError, QuadrimmError, StructureError
from .formats import (
    export_dot,
    parse_emb,
    parse_mgr,
    parse_walk_line,
    serialize_emb,
    serialize_mgr,
)
from .generate import (
    Corpus,
    census_connected_cubic_multigraphs,
    census_disconnected_8,
    coverage_report,
    enumerate_cq,
    enumerate_cq_filtered,
)
from .walks import extract, has_complete_transverse_cycle, maximal_transverse_walks, reduce_embedding

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class _Run:
    """Collects inputs/outputs so every -o write gets a replayable
    manifest sitting next to it."""

    def __init__(self, args):
        self.args = args
        self.t0 = time.time()
        self.inputs: dict[str, str] = {}
        self.codes: list[str] = []

    def read_input(self, path: str) -> str:
        text = _read(path)
        self.inputs[path] = _sha(text)
        return text

    def note_code(self, code) -> None:
        self.codes.append(code.digest())

    def write_output(self, path: str, text: str, argv) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        manifest = {
            "tool": "quadrimm",
            "version": __version__,
            "argv": list(argv),
            "inputs": self.inputs,
            "output": path,
            "output_sha256": _sha(text),
            "output_codes": self.codes,
            "elapsed_s": round(time.time() - self.t0, 3),
        }
        with open(path + ".manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _emit(run, args, text: str, argv) -> None:
    if getattr(args, "output", None):
        run.write_output(args.output, text, argv)
    else:
        sys.stdout.write(text)


def _load_embedded(run, path: str) -> EmbeddedGraph:
    obj = parse_emb(run.read_input(path))
    return obj.map if isinstance(obj, DiskQuadrangulation) else obj


def _load_disk(run, path: str) -> DiskQuadrangulation:
    obj = parse_emb(run.read_input(path))
    if not isinstance(obj, DiskQuadrangulation):
        raise PreconditionError("%s lacks an 'outer:' line; not a disk record" % path)
    return obj


# -- subcommand handlers -------------------------------------------------------


def cmd_validate(run, args, argv):
    g = _load_embedded(run, args.input)
    report = validate_cq(g)
    if args.json:
        payload = {
            "passed": report.passed,
            "violations": report.violations,
            "is_spherical": report.is_spherical,
            "is_simple": report.is_simple,
            "is_connected": report.is_connected,
            "degree_counts": {str(k): v for k, v in sorted(report.degree_counts.items())},
            "nu3": report.nu3,
            "nu4": report.nu4,
            "face_count": report.n_faces,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        if report.passed:
            print("valid cubic quadrangulation: nu=%d nu4=%d faces=%d"
                  % (report.n_vertices, report.nu4, report.n_faces))
        else:
            print("INVALID: " + ", ".join(report.violations))
    return EXIT_OK if report.passed else EXIT_VALIDATION


def cmd_extract(run, args, argv):
    g = _load_embedded(run, args.input)
    m = extract(g)
    run.note_code(canon_multigraph(m))
    _emit(run, args, serialize_mgr(m), argv)
    return EXIT_OK


def cmd_reduce(run, args, argv):
    g = _load_embedded(run, args.input)
    out = reduce_embedding(g)
    run.note_code(canon_embedded(out))
    _emit(run, args, serialize_emb(out), argv)
    return EXIT_OK


def cmd_walks(run, args, argv):
    g = _load_embedded(run, args.input)
    for w in maximal_transverse_walks(g):
        ends = " %d-%d" % w.endpoints if w.kind == "path" else ""
        print("%s%s edges: %s" % (w.kind, ends, " ".join(map(str, w.edges))))
    return EXIT_OK


def cmd_td_cycle(run, args, argv):
    g = _load_embedded(run, args.input)
    cyc = has_complete_transverse_cycle(g)
    if cyc is None:
        print("none")
    else:
        print(" ".join(map(str, cyc)))
    return EXIT_OK


def cmd_dual(run, args, argv):
    from .embedding import dual

    g = _load_embedded(run, args.input)
    _emit(run, args, serialize_emb(dual(g)), argv)
    return EXIT_OK


def cmd_disks(run, args, argv):
    cfg = load_config(args.config)
    budget = (args.max_boundary, args.max_vertices) if args.force else (
        cfg.disk_max_boundary, cfg.disk_max_vertices)
    chunks = []
    for disk in enumerate_disks(args.max_boundary, args.max_vertices,
                                irreducible_only=args.irreducible, budget=budget):
        run.note_code(disk.canonical_code())
        chunks.append(serialize_emb(disk))
    _emit(run, args, "".join(chunks), argv)
    return EXIT_OK


def cmd_classify_disks(run, args, argv):
    cfg = load_config(args.config)
    budget = None if not args.force else (cfg.disk_max_boundary, args.bound)
    result = classify_irreducible(args.bound, budget=budget)
    print("base\t%d" % len(result.base_codes))
    print("base-unmarked\t%d" % result.base_unmarked_count)
    print("bufferings\t%d" % len(result.buffering_codes))
    print("counterexamples\t%d" % len(result.counterexamples))
    if result.counterexamples:
        for d in result.counterexamples:
            sys.stderr.write(serialize_emb(d))
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_two_disks(run, args, argv):
    d1 = _load_disk(run, args.first)
    d2 = _load_disk(run, args.second)
    phi = BoundaryBijection(args.offset, args.reverse)
    g = two_disks(d1, d2, phi, auto_fix=args.auto_fix)
    run.note_code(canon_embedded(g))
    _emit(run, args, serialize_emb(g), argv)
    return EXIT_OK


def cmd_radial(run, args, argv):
    g = _load_embedded(run, args.input)
    out = radial(g)
    run.note_code(canon_embedded(out))
    _emit(run, args, serialize_emb(out), argv)
    return EXIT_OK


def cmd_spiral(run, args, argv):
    disk = _load_disk(run, args.input)
    inp = SpiralInput(disk, args.label_start, args.reverse_labels, args.l)
    g = spiral(inp)
    run.note_code(canon_embedded(g))
    _emit(run, args, serialize_emb(g), argv)
    return EXIT_OK


def cmd_cable(run, args, argv):
    g = _load_embedded(run, args.input)
    edge_ids, turns = parse_walk_line(run.read_input(args.walk))
    walk = build_cabling_walk(g, edge_ids, turns)
    out = cable(g, walk, args.c)
    run.note_code(canon_embedded(out))
    _emit(run, args, serialize_emb(out), argv)
    return EXIT_OK


def _load_any(run, path: str):
    text = run.read_input(path)
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if head == "emb":
        return parse_emb(text)
    if head == "mgr":
        return parse_mgr(text)
    raise StructureError("%s is neither an EMB nor an MGR record" % path)


def _code_of(obj):
    if isinstance(obj, DiskQuadrangulation):
        return obj.canonical_code()
    if isinstance(obj, EmbeddedGraph):
        return canon_embedded(obj)
    return canon_multigraph(obj)


def cmd_canon(run, args, argv):
    obj = _load_any(run, args.input)
    code = _code_of(obj)
    print(code.digest())
    return EXIT_OK


def cmd_iso(run, args, argv):
    a = _load_any(run, args.first)
    b = _load_any(run, args.second)
    if type(a) is not type(b):
        print("different kinds")
        return EXIT_VALIDATION
    same = _code_of(a) == _code_of(b)
    print("isomorphic" if same else "not isomorphic")
    return EXIT_OK if same else EXIT_VALIDATION


def cmd_enum(run, args, argv):
    cfg = load_config(args.config)
    if args.oracle:
        budget = args.n if args.force else cfg.oracle_max_n
        graphs = list(enumerate_cq_filtered(args.n, budget=budget))
    else:
        budget = args.n if args.force else cfg.enum_max_n
        graphs = list(enumerate_cq(args.n, budget=budget))
    chunks = []
    for g in graphs:
        run.note_code(canon_embedded(g))
        chunks.append(serialize_emb(g))
    sys.stderr.write("n=%d: %d quadrangulation(s)\n" % (args.n, len(graphs)))
    _emit(run, args, "".join(chunks), argv)
    return EXIT_OK


def cmd_census(run, args, argv):
    from .report import census_rows, render_census_gallery, write_tsv

    if args.disconnected_8:
        result = census_disconnected_8()
    else:
        result = census_connected_cubic_multigraphs(args.n)
    if args.json:
        payload = {
            "connected": {str(k): v for k, v in result.connected_counts.items()},
            "disconnected_8": result.disconnected_8_count,
            "disconnected_8_subtotals": result.disconnected_8_subtotals,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        write_tsv(census_rows(result), sys.stdout)
    if args.figures:
        from .generate import _connected_cubic_multigraphs

        if args.disconnected_8:
            sys.stderr.write("figure gallery covers connected censuses only\n")
        else:
            graphs = _connected_cubic_multigraphs(args.n)
            pairs = [(canon_multigraph(m), m) for m in graphs]
            written = render_census_gallery(pairs, args.figures, "census%d" % args.n)
            sys.stderr.write("wrote %d figure(s) to %s\n" % (len(written), args.figures))
    return EXIT_OK


def cmd_coverage(run, args, argv):
    from .report import coverage_rows, render_coverage_chart, write_tsv

    corpus = load_corpus(args.corpus)
    report = coverage_report(corpus)
    if args.json:
        payload = {
            "targets": report.target_count,
            "achieved": report.achieved_count,
            "missing": [c.digest() for c in report.missing],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        write_tsv(coverage_rows(report), sys.stdout)
    if args.figures:
        path = render_coverage_chart(report, args.figures)
        missing_graphs = []
        from .generate import _connected_cubic_multigraphs

        by_code = {canon_multigraph(m): m for m in _connected_cubic_multigraphs(8)}
        for mcode in report.missing:
            if mcode in by_code:
                missing_graphs.append((mcode, by_code[mcode]))
        from .report import render_census_gallery

        written = render_census_gallery(missing_graphs, args.figures, "missing")
        sys.stderr.write("wrote %s and %d missing-class figure(s)\n"
                         % (path, len(written)))
    return EXIT_OK


def cmd_corpus_build(run, args, argv):
    from .generate import build_default_corpus

    cfg = load_config(args.config)
    corpus = build_default_corpus(enum_max=min(args.max_n, cfg.enum_max_n),
                                  enum_budget=cfg.enum_max_n,
                                  workers=cfg.workers)
    save_corpus(corpus, args.out)
    sys.stderr.write("corpus: %d quadrangulations -> %s\n" % (len(corpus), args.out))
    return EXIT_OK


def cmd_export_dot(run, args, argv):
    obj = _load_any(run, args.input)
    _emit(run, args, export_dot(obj), argv)
    return EXIT_OK


def cmd_replay(run, args, argv):
    with open(args.manifest, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    for path, digest in manifest["inputs"].items():
        if _sha(_read(path)) != digest:
            print("input %s changed since the manifest was written" % path)
            return EXIT_VALIDATION
    argv_replay = list(manifest["argv"])
    out = manifest["output"]
    tmp = out + ".replay"
    argv_replay = [tmp if a == out else a for a in argv_replay]
    code = main(argv_replay)
    if code != EXIT_OK:
        return code
    same = _sha(_read(tmp)) == manifest["output_sha256"]
    os.remove(tmp)
    if os.path.exists(tmp + ".manifest.json"):
        os.remove(tmp + ".manifest.json")
    print("byte-identical" if same else "OUTPUT DIFFERS")
    return EXIT_OK if same else EXIT_VALIDATION


# -- corpus directory layout ---------------------------------------------------


def save_corpus(corpus: Corpus, directory: str) -> None:
    os.makedirs(directory, exist_ok=True)
    rows = []
    for code, g, provenance in corpus.graphs():
        name = code.digest() + ".emb"
        with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
            fh.write(serialize_emb(g))
        mcode = canon_multigraph(extract(g))
        rows.append((code.digest(), mcode.digest(), provenance))
    with open(os.path.join(directory, "index.tsv"), "w", encoding="utf-8") as fh:
        for row in sorted(rows):
            fh.write("\t".join(row) + "\n")


def load_corpus(directory: str) -> Corpus:
    if not os.path.isdir(directory):
        raise PreconditionError("corpus path %s is not a directory" % directory)
    corpus = Corpus()
    index = os.path.join(directory, "index.tsv")
    if os.path.exists(index):
        with open(index, "r", encoding="utf-8") as fh:
            for line in fh:
                parts = line.rstrip("\n").split("\t")
                if len(parts) != 3:
                    raise StructureError("bad index row: %r" % line)
                name, _, provenance = parts
                text = _read(os.path.join(directory, name + ".emb"))
                obj = parse_emb(text)
                g = obj.map if isinstance(obj, DiskQuadrangulation) else obj
                got = corpus.add(g, provenance)
                if got is not None and got.digest() != name:
                    raise StructureError(
                        "corpus entry %s has stale canonical code" % name)
    else:
        for name in sorted(os.listdir(directory)):
            if name.endswith(".emb"):
                obj = parse_emb(_read(os.path.join(directory, name)))
                g = obj.map if isinstance(obj, DiskQuadrangulation) else obj
                corpus.add(g, name)
    return corpus


# -- parser --------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quadrimm",
        description="Spherical quadrangulations with degree-3/4 vertices: "
                    "validate, transform, construct, enumerate, and report.")
    ap.add_argument("--version", action="version", version="quadrimm " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(handler=fn)
        p.add_argument("--config", default=None, help="key=value config file")
        return p

    p = add("validate", cmd_validate, help="check the cubic-quadrangulation conditions")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")

    p = add("extract", cmd_extract, help="extracted cubic multigraph")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = add("reduce", cmd_reduce, help="delete all closed transversals")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = add("walks", cmd_walks, help="maximal transverse walk decomposition")
    p.add_argument("input")

    p = add("td-cycle", cmd_td_cycle, help="cycle of complete transverse paths, if any")
    p.add_argument("input")

    p = add("dual", cmd_dual, help="combinatorial dual embedding")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = add("disks", cmd_disks, help="enumerate quadrangulated disks")
    p.add_argument("--max-boundary", type=int, required=True)
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--irreducible", action="store_true")
    p.add_argument("--force", action="store_true",
                   help="accept bounds beyond the configured budget")
    p.add_argument("-o", "--output")

    p = add("classify-disks", cmd_classify_disks,
            help="check the irreducible classification within a bound")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--force", action="store_true")

    p = add("two-disks", cmd_two_disks, help="glue two disks along their boundaries")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--auto-fix", action="store_true")
    p.add_argument("-o", "--output")

    p = add("radial", cmd_radial, help="radial graph with inherited embedding")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = add("spiral", cmd_spiral, help="spiral construction on a disk")
    p.add_argument("input")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--label-start", type=int, required=True,
                   help="boundary vertex labeled v_0 (must have degree 3)")
    p.add_argument("--reverse-labels", action="store_true")
    p.add_argument("-o", "--output")

    p = add("cable", cmd_cable, help="cable construction along a dual walk")
    p.add_argument("input")
    p.add_argument("--walk", required=True, help="walk file: eK[R|S|L] tokens")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("-o", "--output")

    p = add("canon", cmd_canon, help="canonical code digest of an EMB or MGR record")
    p.add_argument("input")

    p = add("iso", cmd_iso, help="isomorphism verdict for two records")
    p.add_argument("first")
    p.add_argument("second")

    p = add("enum", cmd_enum, help="enumerate cubic quadrangulations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="use the graph-first planarity-filter route")
    p.add_argument("--force", action="store_true")
    p.add_argument("-o", "--output")

    p = add("census", cmd_census, help="census of cubic multigraphs")
    p.add_argument("--n", type=int, default=8, choices=(2, 4, 6, 8))
    p.add_argument("--disconnected-8", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--figures", help="directory for the PNG gallery")

    p = add("coverage", cmd_coverage, help="coverage of the 140 target classes")
    p.add_argument("--corpus", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--figures", help="directory for the coverage chart")

    p = add("corpus-build", cmd_corpus_build, help="build the default corpus directory")
    p.add_argument("--out", required=True)
    p.add_argument("--max-n", type=int, default=12)

    p = add("export-dot", cmd_export_dot, help="DOT text for an EMB or MGR record")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = add("replay", cmd_replay, help="re-run a manifest and compare outputs")
    p.add_argument("manifest")
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = _build_parser()
    args = ap.parse_args(argv)
    run = _Run(args)
    try:
        return args.handler(run, args, argv)
    except BudgetError as exc:
        sys.stderr.write("budget refused: %s\n" % exc)
        if exc.suggestion:
            sys.stderr.write("suggestion: %s\n" % exc.suggestion)
        return EXIT_BUDGET
    except (PreconditionError, StructureError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_PRECONDITION
    except QuadrimmError as exc:
        sys.stderr.write("failed: %s\n" % exc)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
