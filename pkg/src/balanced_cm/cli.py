"""Command line front end.

Exit codes: 0 for a positive verdict or a pass, 1 for a negative verdict,
2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io
from .coloring import critical_vertices, is_balanced
from .complex import ComplexError, Face, RelativeComplex, SimplicialComplex, f_vector, h_vector, relative
from .constructions import build
from .homology import FieldSpec, betti, is_cohen_macaulay
from .partition import (
    INCONCLUSIVE,
    PARTITIONABLE,
    SHELLABLE,
    decide_partitionable,
    encode,
    partition_from_shelling,
    shelling_search,
)
from .report import verify_paper
from .transform import (
    VertexMap,
    barycentric_subdivision,
    fresh_vertex,
    glue_copies,
    is_automorphism,
    subdivide_edge,
)

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _budget(text: str | None) -> dict:
    """``30`` or ``30s`` is seconds, ``5000n`` is search nodes."""
    if not text:
        return {}
    t = text.strip().lower()
    try:
        if t.endswith("n") or t.endswith("nodes"):
            return {"max_nodes": int(t.rstrip("nodes") or 0)}
        return {"max_seconds": float(t.rstrip("s"))}
    except ValueError:
        raise UsageError(f"bad budget {text!r}") from None


def _load(args) -> SimplicialComplex | RelativeComplex:
    c = io.read(args.file)
    if getattr(args, "relative", None):
        if isinstance(c, RelativeComplex):
            raise UsageError("--relative given but the file already has a '---' part")
        removed = io.read(args.relative)
        if isinstance(removed, RelativeComplex):
            raise UsageError("--relative file must hold an absolute complex")
        c = relative(c, removed)
    return c


def _absolute(c) -> SimplicialComplex:
    if isinstance(c, RelativeComplex):
        raise UsageError("this command needs an absolute complex")
    return c


def _emit(text: str, path: str | None) -> None:
    if path and path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_vec(v) -> str:
    return " ".join(str(x) for x in v)


def cmd_build(args) -> int:
    c = build(args.name)
    _emit(io.format_complex(c, header=args.name), args.output)
    return EXIT_OK


def cmd_fvector(args) -> int:
    print(_fmt_vec(f_vector(_load(args))))
    return EXIT_OK


def cmd_hvector(args) -> int:
    print(_fmt_vec(h_vector(f_vector(_load(args)))))
    return EXIT_OK


def cmd_balance(args) -> int:
    c = _absolute(_load(args))
    res = is_balanced(c)
    if res.warning:
        print(f"# warning: {res.warning}", file=sys.stderr)
    if not res:
        print("not balanced")
        return EXIT_NO
    print("balanced")
    for v, col in res.coloring.items():
        print(f"{v} {col}")
    return EXIT_OK


def cmd_critical(args) -> int:
    crit = sorted(critical_vertices(_absolute(_load(args))))
    for v in crit:
        print(v)
    if not crit:
        print("no critical vertices")
    return EXIT_NO if crit else EXIT_OK


def cmd_homology(args) -> int:
    c = _absolute(_load(args))
    faces = [Face(f.split()) for f in args.face] if args.face else [Face()]
    for f in faces:
        lk = c.link(f)
        bs = betti(lk, FieldSpec(args.field))
        print(f"face={f} " + " ".join(f"b{i}={b}" for i, b in enumerate(bs, start=-1)))
    return EXIT_OK


def cmd_cm_check(args) -> int:
    res = is_cohen_macaulay(_absolute(_load(args)), FieldSpec(args.field))
    if res:
        print(f"PASS Cohen-Macaulay over GF({args.field}) ({len(res.table.records)} links)")
        return EXIT_OK
    print(f"FAIL not Cohen-Macaulay over GF({args.field})")
    print(f"refuting {res.refutation}")
    return EXIT_NO


def cmd_shelling(args) -> int:
    c = _absolute(_load(args))
    v = shelling_search(c, **_budget(args.budget))
    print(v.status.replace("_", " "))
    if v.status == SHELLABLE:
        part = partition_from_shelling(c, v.order)
        for r, f in part:
            print(f"{' '.join(map(str, f))}  # restriction {r}")
        return EXIT_OK
    return EXIT_USAGE if v.status == INCONCLUSIVE else EXIT_NO


def cmd_partition(args) -> int:
    x = _load(args)
    if args.emit == "exact-cover":
        enc = encode(x)
        if args.output and args.output != "-":
            with open(args.output, "w") as out:
                enc.write(out)
        else:
            enc.write(sys.stdout)
        return EXIT_OK
    v = decide_partitionable(x, **_budget(args.budget))
    print(v.status.replace("_", " "))
    if v.status == PARTITIONABLE:
        if args.certificate:
            _emit(v.certificate.to_text(), args.certificate)
        return EXIT_OK
    return EXIT_USAGE if v.status == INCONCLUSIVE else EXIT_NO


def cmd_glue(args) -> int:
    q = _absolute(io.read(args.file))
    a = _absolute(io.read(args.along))
    _emit(io.format_complex(glue_copies(q, a, args.copies)), args.output)
    return EXIT_OK


def cmd_subdivide(args) -> int:
    c = _absolute(_load(args))
    w = args.new_vertex if args.new_vertex is not None else fresh_vertex(c)
    _emit(io.format_complex(subdivide_edge(c, args.edge.split(), w)), args.output)
    return EXIT_OK


def cmd_sd(args) -> int:
    _emit(io.format_complex(barycentric_subdivision(_absolute(_load(args)))), args.output)
    return EXIT_OK


def cmd_automorphism(args) -> int:
    c = _absolute(_load(args))
    cycles = [cyc.split() for cyc in args.map.replace(")", "").split("(") if cyc.strip()]
    m = VertexMap.from_cycles(*cycles)
    ok = is_automorphism(c, m)
    print(f"{m} is {'an' if ok else 'not an'} automorphism")
    return EXIT_OK if ok else EXIT_NO


def cmd_verify_paper(args) -> int:
    c3 = _budget(args.budget).get("max_seconds")
    report = verify_paper(field=args.field, c3_budget=c3, echo=print)
    passed = sum(r.passed for r in report.results)
    print(f"SUMMARY {passed}/{len(report.results)} claims passed (field GF({args.field}))")
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n")
    return EXIT_OK if report.ok else EXIT_NO


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="balanced-cm",
        description="Balancedness, partitionability, shellability and Cohen-Macaulayness of simplicial complexes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help, file=True):
        p = sub.add_parser(name, help=help)
        if file:
            p.add_argument("file", help="facet list ('---' separates the removed part)")
            p.add_argument("--relative", metavar="PATH", help="facet list of a subcomplex to remove")
        p.set_defaults(fn=fn)
        return p

    p = add("build", cmd_build, "write a built-in construction (Q, A, Q-star, A-star, X, C<n>)", file=False)
    p.add_argument("name")
    p.add_argument("-o", "--output")

    add("fvector", cmd_fvector, "print the f-vector")
    add("hvector", cmd_hvector, "print the h-vector")
    add("balance", cmd_balance, "decide balancedness, print a coloring")
    add("critical", cmd_critical, "list vertices with unbalanced links")

    p = add("homology", cmd_homology, "reduced Betti numbers of links")
    p.add_argument("--face", action="append", help="face whose link to use (repeatable; default: empty face)")
    p.add_argument("--field", type=int, default=2)

    p = add("cm-check", cmd_cm_check, "Reisner's Cohen-Macaulay test")
    p.add_argument("--field", type=int, default=2)

    p = add("shelling", cmd_shelling, "search for a shelling order")
    p.add_argument("--budget")

    p = add("partition", cmd_partition, "decide partitionability")
    p.add_argument("--budget")
    p.add_argument("--certificate", metavar="PATH", help="write the intervals as 'R | F' lines")
    p.add_argument("--emit", choices=["exact-cover"], help="dump the exact cover matrix instead of solving")
    p.add_argument("-o", "--output")

    p = add("glue", cmd_glue, "identify copies of a complex along an induced subcomplex")
    p.add_argument("--along", required=True, metavar="PATH")
    p.add_argument("--copies", type=int, required=True)
    p.add_argument("-o", "--output")

    p = add("subdivide", cmd_subdivide, "subdivide an edge")
    p.add_argument("--edge", required=True, help="two vertex labels, e.g. '2 4'")
    p.add_argument("--new-vertex")
    p.add_argument("-o", "--output")

    p = add("sd", cmd_sd, "barycentric subdivision")
    p.add_argument("-o", "--output")

    p = add("automorphism", cmd_automorphism, "test a vertex permutation given in cycle notation")
    p.add_argument("--map", required=True, help="e.g. '(0 7)(2 4)(6 8)'")

    p = add("verify-paper", cmd_verify_paper, "rebuild the example end to end and check every claim", file=False)
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--budget", help="time budget for the C3 refutation")
    p.add_argument("--json", metavar="PATH", help="also write a machine-readable report")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (UsageError, ComplexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
