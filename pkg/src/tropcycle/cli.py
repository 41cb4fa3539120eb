"""Command-line front end.

Every command reads JSON documents given as ``--in name=path`` and prints a
result document ``{"status", "payload", "diagnostics"}``. Exit codes: 0 ok,
1 internal error, 2 bad input, 3 failed precondition.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from . import fixtures, svg
from .cycles import (
    TropicalCycle,
    balancing_check,
    connected_components,
    degree,
    intersect_supports,
    multi_stable_intersect,
    restrict_to_component,
)
from .divisors import tropical_hypersurface
from .errors import InputError, NotCompatible, ParseError, PointNotOnSupport, PreconditionError, TropError
from .fans import Fan, compactified_stable_intersect, fan_violations, is_complete, is_unimodular
from .serialize import (
    cycle_from_json,
    detect_kind,
    dumps,
    fan_from_json,
    loads,
    mw_from_json,
    parse_rat,
    polynomial_from_json,
    rat_str,
    to_json,
)
from .weights import (
    MinkowskiWeight,
    mw_balancing_violations,
    mw_class_by_pairing,
    mw_degree,
    mw_from_cycle,
    mw_product,
)

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class Job:
    """Parsed inputs plus the diagnostics collected while running a command."""

    def __init__(self, args):
        self.args = args
        self.diagnostics: list[str] = []
        self.docs: dict = {}
        for i, item in enumerate(args.inputs or []):
            name, sep, path = item.partition("=")
            if not sep:
                name, path = f"in{i}", item
            if name in self.docs:
                raise InputError(f"input name {name!r} given twice")
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {path}: {exc.strerror}") from exc
            try:
                self.docs[name] = loads(text)
            except ParseError as exc:
                raise ParseError(f"{path}: {exc}") from exc

    def doc(self, *names, required=True):
        for n in names:
            if n in self.docs:
                return self.docs[n]
        if required:
            raise InputError(f"missing input --in {names[0]}=<path>")
        return None

    def unnamed(self, exclude=()):
        return [d for n, d in self.docs.items() if n not in exclude]


def _seed(args):
    return args.seed


def _points(text: str) -> tuple:
    try:
        return tuple(parse_rat(x) for x in text.split(","))
    except ParseError as exc:
        raise InputError(f"bad point {text!r}") from exc


def _cycle(doc) -> TropicalCycle:
    if detect_kind(doc) != "cycle":
        raise InputError("expected a cycle document")
    return cycle_from_json(doc)


# ---------------------------------------------------------------- commands


def cmd_validate(job: Job):
    docs = list(job.docs.items())
    if len(docs) != 1:
        raise InputError("validate takes exactly one input")
    _, doc = docs[0]
    kind = detect_kind(doc)
    checks = []
    if kind == "cycle":
        S = cycle_from_json(doc)
        bad = balancing_check(S)
        checks.append({"name": "balancing", "pass": not bad,
                       "details": [f"ridge {sorted(map(str, R.vertices))}+rays{sorted(R.rays)}: sum {[rat_str(x) for x in s]}"
                                   for R, s in bad]})
    elif kind == "fan":
        D = fan_from_json(doc, check=False)
        bad = fan_violations(D)
        checks.append({"name": "fan", "pass": not bad, "details": bad})
        if not bad:
            checks.append({"name": "unimodular", "pass": is_unimodular(D), "details": []})
            checks.append({"name": "complete", "pass": is_complete(D), "details": []})
    elif kind == "weight":
        c = mw_from_json(doc)
        bad = mw_balancing_violations(c)
        checks.append({"name": "balancing", "pass": not bad,
                       "details": [f"cone {sorted(t)}: sum {list(s)}" for t, s in bad]})
    elif kind == "polynomial":
        polynomial_from_json(doc)
        checks.append({"name": "parse", "pass": True, "details": []})
    else:
        raise InputError(f"cannot validate a {kind} document")
    required = [c for c in checks if c["name"] in ("balancing", "fan")]
    for c in checks:
        job.diagnostics.append(f"{c['name']}: {'PASS' if c['pass'] else 'FAIL'}")
    report = {"kind": kind, "checks": checks}
    if not all(c["pass"] for c in required):
        return EXIT_PRECONDITION, report
    return EXIT_OK, report


def cmd_stable_intersect(job: Job):
    cycles = [_cycle(d) for d in job.unnamed()]
    if len(cycles) < 2:
        raise InputError("stable-intersect needs at least two cycles")
    res = multi_stable_intersect(cycles, _seed(job.args))
    if job.args.component is not None:
        u = _points(job.args.component)
        region = intersect_supports(cycles)
        comps = [c for c in connected_components(region) if any(P.contains(u) for P in c)]
        if not comps:
            raise PointNotOnSupport("the point is not on the intersection of the supports")
        res = restrict_to_component(res, comps[0])
    if job.args.degree:
        return EXIT_OK, {"degree": str(degree(res))}
    return EXIT_OK, to_json(res)


def cmd_compactified(job: Job):
    gamma = _cycle(job.doc("gamma"))
    S = _cycle(job.doc("cycle", "S"))
    D = fan_from_json(job.doc("fan"))
    tau = [int(i) for i in job.args.tau.split(",") if i.strip()] if job.args.tau else []
    t = D.find_cone(tau)
    res = compactified_stable_intersect(gamma, S, D, t, _seed(job.args))
    out = {"tau": [str(i) for i in sorted(t)],
           "frame": [[str(x) for x in row] for row in D.frame(t).Q]}
    if job.args.degree:
        out["degree"] = str(degree(res))
    else:
        out["cycle"] = to_json(res)
    return EXIT_OK, out


def cmd_hypersurface(job: Job):
    docs = job.unnamed()
    if len(docs) != 1:
        raise InputError("hypersurface takes exactly one polynomial")
    if detect_kind(docs[0]) != "polynomial":
        raise InputError("expected a polynomial document")
    return EXIT_OK, to_json(tropical_hypersurface(polynomial_from_json(docs[0])))


def _weight(job: Job, name: str, doc, D: Fan | None) -> MinkowskiWeight:
    kind = detect_kind(doc)
    if kind == "weight":
        return mw_from_json(doc)
    if kind != "cycle":
        raise InputError("mw inputs must be weights or cycles")
    if D is None:
        raise InputError("converting a cycle needs --in fan=<path>")
    S = cycle_from_json(doc)
    try:
        return mw_from_cycle(S, D)
    except NotCompatible:
        if job.args.op == "from-cycle" and not job.args.pairing:
            raise
        job.diagnostics.append(f"{name}: cycle not compatible with the fan; class computed by boundary pairing")
        return mw_class_by_pairing(S, D)


def cmd_mw(job: Job):
    fdoc = job.doc("fan", required=False)
    D = fan_from_json(fdoc) if fdoc is not None else None
    ws = [_weight(job, n, d, D) for n, d in job.docs.items() if n != "fan"]
    if not ws:
        raise InputError("mw needs at least one weight or cycle")
    op = job.args.op
    if op == "from-cycle":
        if len(ws) != 1:
            raise InputError("from-cycle takes exactly one cycle")
        return EXIT_OK, to_json(ws[0])
    out = ws[0]
    for w in ws[1:]:
        out = mw_product(out, w, _seed(job.args))
    if op == "degree" or job.args.degree:
        return EXIT_OK, {"degree": str(mw_degree(out))}
    return EXIT_OK, to_json(out)


def _write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_plot(job: Job):
    cycles = [_cycle(d) for d in job.unnamed()]
    bbox = None
    if job.args.bbox:
        bbox = _points(job.args.bbox)
        if len(bbox) != 4:
            raise InputError("--bbox takes xmin,ymin,xmax,ymax")
    text = svg.render(cycles, bbox)
    if job.args.svg_out:
        _write_atomic(job.args.svg_out, text)
        return EXIT_OK, {"svg": job.args.svg_out}
    return EXIT_OK, {"svg_text": text}


def cmd_examples(job: Job):
    fx = fixtures.load(job.args.name, job.args.n)
    written = []
    if job.args.out_dir:
        for fname, doc in sorted(fx.items()):
            path = os.path.join(job.args.out_dir, fname)
            _write_atomic(path, dumps(doc))
            written.append(path)
    return EXIT_OK, {"files": written, "documents": fx if not written else None,
                     "expected": fx["expected.json"]}


COMMANDS = {
    "validate": cmd_validate,
    "stable-intersect": cmd_stable_intersect,
    "compactified": cmd_compactified,
    "hypersurface": cmd_hypersurface,
    "mw": cmd_mw,
    "plot": cmd_plot,
    "examples": cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropcycle", description="Exact tropical intersection calculus.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--in", dest="inputs", action="append", default=[], metavar="NAME=PATH",
                       help="input JSON document (repeatable)")
        s.add_argument("--out", dest="out", help="write the result document here instead of stdout")
        s.add_argument("--seed", type=int, default=None,
                       help="displacement seed (default: $TROPCYCLE_SEED or 0)")
        return s

    add("validate", "check balancing of a cycle or weight, or the axioms of a fan")
    s = add("stable-intersect", "stable intersection of two or more cycles")
    s.add_argument("--component", metavar="X,Y,..", help="keep the component of the support meet through this point")
    s.add_argument("--degree", action="store_true", help="print the degree only")
    s = add("compactified", "intersect gamma with the boundary cycle of a cycle on the stratum of tau")
    s.add_argument("--tau", default="", metavar="I,J,..", help="ray indices of the cone tau (default: zero cone)")
    s.add_argument("--degree", action="store_true")
    add("hypersurface", "tropical hypersurface of a polynomial")
    s = add("mw", "Minkowski weight computations on a complete fan")
    s.add_argument("--op", choices=("product", "degree", "from-cycle"), required=True)
    s.add_argument("--degree", action="store_true", help="with --op product, print the degree")
    s.add_argument("--pairing", action="store_true",
                   help="with --op from-cycle, allow cycles not compatible with the fan")
    s = add("plot", "SVG picture of planar cycles (--out names the SVG file)")
    s.add_argument("--svg", dest="svg_out", metavar="FILE.svg", help="same as --out")
    s.add_argument("--bbox", metavar="X0,Y0,X1,Y1")
    s = add("examples", "emit a named example as JSON documents")
    s.add_argument("name", help=", ".join(fixtures.NAMES))
    s.add_argument("--n", type=int, default=3, help="parameter of selfintersection-n")
    s.add_argument("--out-dir", help="directory for the emitted documents")
    return p


def run(argv=None) -> tuple[int, dict, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    if args.command == "plot" and args.out and not args.svg_out:
        # for plot, --out names the picture; the result document goes to stdout
        args.svg_out, args.out = args.out, None
    diagnostics: list[str] = []
    try:
        job = Job(args)
        diagnostics = job.diagnostics
        code, payload = COMMANDS[args.command](job)
        status = "ok" if code == EXIT_OK else "error"
    except InputError as exc:
        code, payload, status = EXIT_INPUT, None, "error"
        diagnostics.append(f"{type(exc).__name__}: {exc}")
    except PreconditionError as exc:
        code, payload, status = EXIT_PRECONDITION, None, "error"
        diagnostics.append(f"{type(exc).__name__}: {exc}")
        if isinstance(exc, NotCompatible) and exc.cone is not None:
            diagnostics.append(f"violating cone: {sorted(exc.cone) if isinstance(exc.cone, frozenset) else exc.cone}")
            if exc.polyhedron is not None:
                diagnostics.append(f"violating cell: {dumps(to_json(exc.polyhedron)).strip()}")
    except TropError as exc:
        code, payload, status = EXIT_INTERNAL, None, "error"
        diagnostics.append(f"{type(exc).__name__}: {exc}")
    return code, {"status": status, "payload": payload, "diagnostics": diagnostics}, args


def main(argv=None) -> int:
    try:
        code, result, args = run(argv)
        text = dumps(result)
        if args.out:
            _write_atomic(args.out, text)
        else:
            sys.stdout.write(text)
    except SystemExit:
        raise
    except Exception as exc:  # anything unexpected is an internal error
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if result["status"] != "ok":
        for d in result["diagnostics"]:
            print(d, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
