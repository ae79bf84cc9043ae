"""The covcat command line: validate documents, run checks, build categories.

Exit codes: 0 positive verdict, 1 negative verdict, 2 input/parse error,
3 precondition NotConnected, 4 precondition NotCovering.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ConstructionError, CovcatError, DocumentError, \
    NotConnectedError, NotCoveringError
from .lincat import path_category, product_with_set, validate_category, \
    category_from_algebra
from .linfun import validate_functor
from .covering import CoveringFailure, check_covering
from .fibprod import fibre_product
from .galois import GaloisStatus, check_universal_against, deck_group, \
    is_galois, is_galois_both, is_trivial_covering, quotient_by_group
from . import documents as docs

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_NOT_CONNECTED = 3
EXIT_NOT_COVERING = 4


class Workspace:
    """Documents loaded by name: categories, functors, quivers, algebras."""

    def __init__(self):
        self.categories = {}
        self.functors = {}   # name -> (functor, source_name, target_name)
        self.quivers = {}    # name -> (quiver, relations, field)
        self.algebras = {}   # name -> (field, basis, mult, idempotents)

    def load_file(self, path: Path) -> str:
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise DocumentError(f"cannot parse: {exc}", str(path))
        fmt = doc.get("format")
        if fmt == docs.FORMAT_LINCAT:
            name, cat = docs.category_from_json(doc, str(path))
            self.categories[name] = cat
        elif fmt == docs.FORMAT_QUIVER:
            name, quiver, relations, field = docs.quiver_from_json(doc, str(path))
            self.quivers[name] = (quiver, relations, field)
        elif fmt == docs.FORMAT_ALGEBRA:
            name, field, basis, mult, idems = docs.algebra_from_json(doc, str(path))
            self.algebras[name] = (field, basis, mult, idems)
        elif fmt == docs.FORMAT_LINFUN:
            name = doc.get("name", path.stem)
            return name  # functors resolve in a second pass
        else:
            raise DocumentError(f"unknown document format {fmt!r}", str(path))
        return doc["name"]

    INPUT_FORMATS = (docs.FORMAT_LINCAT, docs.FORMAT_LINFUN,
                     docs.FORMAT_QUIVER, docs.FORMAT_ALGEBRA)

    def load_all(self, paths, strict=True):
        """Load documents; with strict=False, files in non-input formats
        (reports, certificates) are skipped instead of rejected."""
        funct_docs = []
        for path in paths:
            path = Path(path)
            try:
                doc = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise DocumentError(f"cannot parse: {exc}", str(path))
            fmt = doc.get("format")
            if not strict and fmt not in self.INPUT_FORMATS:
                continue
            if fmt == docs.FORMAT_LINFUN:
                funct_docs.append((path, doc))
            else:
                self.load_file(path)
        for path, doc in funct_docs:
            name, fun = docs.functor_from_json(doc, self.categories, str(path))
            self.functors[name] = (fun, doc["source"], doc["target"])


def _workspace_for(ref: str, directory) -> tuple[Workspace, str]:
    """Load every *.json next to ``ref`` (a path or a bare document name)."""
    path = Path(ref)
    if path.suffix == ".json" and path.exists():
        base = path.parent
        name = json.loads(path.read_text()).get("name", path.stem)
    else:
        base = Path(directory) if directory else Path(".")
        name = ref
    ws = Workspace()
    ws.load_all(sorted(base.glob("*.json")), strict=False)
    return ws, name


def _emit(report: dict, json_out) -> None:
    text = docs.dumps(report)
    sys.stdout.write(text)
    if json_out:
        Path(json_out).write_text(text)


# validate ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    ws = Workspace()
    try:
        ws.load_all(args.files)
    except DocumentError as exc:
        _emit({"command": "validate", "error": str(exc)}, args.json)
        return EXIT_INPUT
    results = []
    ok = True
    for name in sorted(ws.categories):
        report = validate_category(ws.categories[name])
        ok = ok and report.ok
        results.append({"name": name, "kind": "category", "ok": report.ok,
                        "violations": [{"kind": v.kind,
                                        "witness": list(v.witness),
                                        "message": v.message}
                                       for v in report.violations]})
    for name in sorted(ws.quivers):
        results.append({"name": name, "kind": "quiver", "ok": True,
                        "violations": []})
    for name in sorted(ws.functors):
        fun, _, _ = ws.functors[name]
        report = validate_functor(fun)
        ok = ok and report.ok
        results.append({"name": name, "kind": "functor", "ok": report.ok,
                        "violations": [{"kind": v.kind,
                                        "witness": list(v.witness),
                                        "message": v.message}
                                       for v in report.violations]})
    _emit({"command": "validate", "ok": ok, "results": results}, args.json)
    return EXIT_OK if ok else EXIT_NEGATIVE


# check ------------------------------------------------------------------------


def _verdict_report(args, functor_name: str, status: str, evidence: dict) -> dict:
    return {
        "format": docs.FORMAT_VERDICT,
        "check": args.kind,
        "functor": functor_name,
        "status": status,
        "evidence": evidence,
        "inputs": args.raw_argv,
    }


_GALOIS_EXITS = {
    GaloisStatus.GALOIS: EXIT_OK,
    GaloisStatus.NON_GALOIS: EXIT_NEGATIVE,
    GaloisStatus.NOT_CONNECTED: EXIT_NOT_CONNECTED,
    GaloisStatus.NOT_COVERING: EXIT_NOT_COVERING,
}


def cmd_check(args) -> int:
    try:
        ws, name = _workspace_for(args.functor, args.dir)
    except DocumentError as exc:
        _emit({"command": "check", "error": str(exc)}, args.json)
        return EXIT_INPUT
    if name not in ws.functors:
        _emit({"command": "check", "error": f"unknown functor {name!r}"}, args.json)
        return EXIT_INPUT
    fun, _, _ = ws.functors[name]
    for cat, which in ((fun.source, "source"), (fun.target, "target")):
        if not validate_category(cat).ok:
            _emit({"command": "check",
                   "error": f"{which} category of {name} is invalid"}, args.json)
            return EXIT_INPUT
    if not validate_functor(fun).ok:
        _emit({"command": "check", "error": f"functor {name} is invalid"},
              args.json)
        return EXIT_INPUT

    try:
        if args.kind == "covering":
            result = check_covering(fun)
            if isinstance(result, CoveringFailure):
                report = _verdict_report(args, name, "NotCovering",
                                         {"witness": docs.covering_failure_to_json(result)})
                _emit(report, args.json)
                return EXIT_NEGATIVE
            report = _verdict_report(args, name, "Covering",
                                     {"certificate": docs.certificate_to_json(result, name)})
            _emit(report, args.json)
            return EXIT_OK

        if args.kind == "trivial":
            result = is_trivial_covering(fun)
            status = "Trivial" if result.trivial else "NonTrivial"
            report = _verdict_report(args, name, status,
                                     {"triviality": docs.triviality_to_json(result)})
            _emit(report, args.json)
            return EXIT_OK if result.trivial else EXIT_NEGATIVE

        if args.kind == "galois":
            if args.method == "direct":
                verdict = is_galois(fun, "direct")
            elif args.method == "fibre":
                verdict = is_galois(fun, "fibre")
            else:
                verdict = is_galois_both(fun)
            report = _verdict_report(args, name, verdict.status.value,
                                     docs.galois_verdict_to_json(verdict)["evidence"])
            _emit(report, args.json)
            return _GALOIS_EXITS[verdict.status]

        if args.kind == "universal":
            if not args.family:
                _emit({"command": "check",
                       "error": "universal check requires --family"}, args.json)
                return EXIT_INPUT
            members = []
            for fname in args.family.split(","):
                fname = fname.strip()
                if fname not in ws.functors:
                    _emit({"command": "check",
                           "error": f"unknown family member {fname!r}"}, args.json)
                    return EXIT_INPUT
                members.append((fname, ws.functors[fname][0]))
            result = check_universal_against(fun, [m for _, m in members])
            checks = []
            for (fname, _), check in zip(members, result.checks):
                entry = {"member": fname, "passed": check.passed,
                         "reason": check.reason}
                if check.covering_failure is not None:
                    entry["witness"] = docs.covering_failure_to_json(
                        check.covering_failure)
                if check.failing_component is not None:
                    entry["failing_component"] = list(check.failing_component)
                checks.append(entry)
            status = ("UniversalRelativeToFamily"
                      if result.universal_relative_to_family else "NotUniversal")
            report = _verdict_report(args, name, status, {"family": checks})
            _emit(report, args.json)
            return EXIT_OK if result.universal_relative_to_family else EXIT_NEGATIVE
    except NotConnectedError as exc:
        _emit(_verdict_report(args, name, "NotConnected", {"error": str(exc)}),
              args.json)
        return EXIT_NOT_CONNECTED
    except NotCoveringError as exc:
        _emit(_verdict_report(args, name, "NotCovering", {"error": str(exc)}),
              args.json)
        return EXIT_NOT_COVERING
    except (ConstructionError, CovcatError) as exc:
        _emit({"command": "check", "error": str(exc)}, args.json)
        return EXIT_INPUT
    raise AssertionError(f"unhandled check kind {args.kind}")


# build ------------------------------------------------------------------------


def _write_docs(out_dir, payloads) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for payload in payloads:
        path = out / f"{payload['name']}.json"
        path.write_text(docs.dumps(payload))
        written.append(str(path))
    return {"command": "build", "written": written}


def cmd_build(args) -> int:
    ws = Workspace()
    try:
        load_dir = Path(args.dir) if args.dir else Path(".")
        candidates = sorted(load_dir.glob("*.json"))
        extra = [Path(a) for a in args.args if a.endswith(".json") and Path(a).exists()]
        ws.load_all(candidates + [p for p in extra if p not in candidates],
                    strict=False)
    except DocumentError as exc:
        _emit({"command": "build", "error": str(exc)}, None)
        return EXIT_INPUT

    def name_of(ref: str) -> str:
        path = Path(ref)
        if path.suffix == ".json" and path.exists():
            return json.loads(path.read_text()).get("name", path.stem)
        return ref

    try:
        if args.kind == "path-category":
            qname = name_of(args.args[0])
            if qname not in ws.quivers:
                raise DocumentError(f"unknown quiver {qname!r}")
            quiver, relations, field = ws.quivers[qname]
            cat = path_category(quiver, relations, field)
            report = _write_docs(args.out, [docs.category_to_json(cat, f"{qname}-cat")])
        elif args.kind == "from-algebra":
            aname = name_of(args.args[0])
            if aname not in ws.algebras:
                raise DocumentError(f"unknown algebra {aname!r}")
            field, basis, mult, idems = ws.algebras[aname]
            cat = category_from_algebra(field, basis, mult, idems)
            report = _write_docs(args.out, [docs.category_to_json(cat, f"{aname}-cat")])
        elif args.kind == "product-set":
            cname = name_of(args.args[0])
            if cname not in ws.categories:
                raise DocumentError(f"unknown category {cname!r}")
            rest = args.args[1:]
            if len(rest) == 1 and rest[0].isdigit():
                labels = [str(i) for i in range(int(rest[0]))]
            else:
                labels = list(rest)
            product, projection = product_with_set(ws.categories[cname], labels)
            stem = f"{cname}-x{len(labels)}"
            report = _write_docs(args.out, [
                docs.category_to_json(product, stem),
                docs.functor_to_json(projection, f"{stem}-pr", stem, cname),
            ])
        elif args.kind == "fibre-product":
            fname, gname = name_of(args.args[0]), name_of(args.args[1])
            for ref in (fname, gname):
                if ref not in ws.functors:
                    raise DocumentError(f"unknown functor {ref!r}")
            f, f_src, _ = ws.functors[fname]
            g, g_src, _ = ws.functors[gname]
            fp = fibre_product(f, g)
            stem = f"fp-{fname}-{gname}"
            report = _write_docs(args.out, [
                docs.category_to_json(fp.category, stem),
                docs.functor_to_json(fp.pr1, f"{stem}-pr1", stem, f_src),
                docs.functor_to_json(fp.pr2, f"{stem}-pr2", stem, g_src),
            ])
        elif args.kind == "quotient":
            cname = name_of(args.args[0])
            if cname not in ws.categories:
                raise DocumentError(f"unknown category {cname!r}")
            if not args.by_deck_of:
                raise DocumentError("quotient requires --by-deck-of")
            fname = name_of(args.by_deck_of)
            if fname not in ws.functors:
                raise DocumentError(f"unknown functor {fname!r}")
            fun, f_src, _ = ws.functors[fname]
            if fun.source != ws.categories[cname]:
                raise DocumentError(
                    f"{fname} is not a functor out of {cname}")
            group = deck_group(fun)
            quotient, projection = quotient_by_group(ws.categories[cname], group)
            stem = f"{cname}-mod-{fname}"
            report = _write_docs(args.out, [
                docs.category_to_json(quotient, stem),
                docs.functor_to_json(projection, f"{stem}-proj", cname, stem),
            ])
        else:
            raise DocumentError(f"unknown build kind {args.kind!r}")
    except NotConnectedError as exc:
        _emit({"command": "build", "error": str(exc)}, None)
        return EXIT_NOT_CONNECTED
    except NotCoveringError as exc:
        _emit({"command": "build", "error": str(exc)}, None)
        return EXIT_NOT_COVERING
    except (DocumentError, ConstructionError, CovcatError, IndexError) as exc:
        _emit({"command": "build", "error": str(exc)}, None)
        return EXIT_INPUT
    _emit(report, None)
    return EXIT_OK


# entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covcat",
        description="Exact decision procedures for coverings of k-linear categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser(
        "validate", help="validate category/functor/quiver documents")
    p_validate.add_argument("files", nargs="+")
    p_validate.add_argument("--json", default=None)
    p_validate.set_defaults(func=cmd_validate)

    p_check = sub.add_parser("check", help="run a decision procedure on a functor")
    p_check.add_argument("kind", choices=["covering", "trivial", "galois", "universal"])
    p_check.add_argument("functor")
    p_check.add_argument("--method", choices=["direct", "fibre"], default=None)
    p_check.add_argument("--family", default=None)
    p_check.add_argument("--json", default=None)
    p_check.add_argument("--dir", default=None)
    p_check.set_defaults(func=cmd_check)

    p_build = sub.add_parser("build", help="construct categories and functors")
    p_build.add_argument("kind", choices=["path-category", "from-algebra",
                                          "product-set", "fibre-product",
                                          "quotient"])
    p_build.add_argument("args", nargs="+")
    p_build.add_argument("--by-deck-of", default=None)
    p_build.add_argument("--out", default=".")
    p_build.add_argument("--dir", default=None)
    p_build.set_defaults(func=cmd_build)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.raw_argv = argv
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
