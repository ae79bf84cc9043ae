"""JSON document formats: lincat/v1, linfun/v1, quiver/v1, covcert/v1, verdict/v1.

All coefficients travel as exact strings ("3", "-1/2"); writers emit sorted
keys and sorted entry lists so that identical inputs always serialize to
identical bytes.
"""

from __future__ import annotations

import json
from typing import Mapping

from .errors import ConstructionError, DocumentError
from .exactalg import FieldSpec, Matrix
from .lincat import LinearCategory, Quiver
from .linfun import LinearFunctor
from .covering import CoveringCertificate, CoveringFailure
from .galois import DeckGroup, GaloisVerdict, TrivialityResult

FORMAT_LINCAT = "lincat/v1"
FORMAT_LINFUN = "linfun/v1"
FORMAT_QUIVER = "quiver/v1"
FORMAT_ALGEBRA = "algebra/v1"
FORMAT_COVCERT = "covcert/v1"
FORMAT_VERDICT = "verdict/v1"


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _need(doc: dict, key: str, path=None):
    if key not in doc:
        raise DocumentError(f"missing key {key!r}", path)
    return doc[key]


# fields ----------------------------------------------------------------------


def field_to_json(field: FieldSpec) -> dict:
    if field.kind == "Q":
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}


def field_from_json(obj, path=None) -> FieldSpec:
    kind = _need(obj, "kind", path)
    try:
        if kind == "Q":
            return FieldSpec("Q")
        if kind == "Fp":
            return FieldSpec("Fp", int(_need(obj, "p", path)))
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"bad field: {exc}", path)
    raise DocumentError(f"unknown field kind {kind!r}", path)


def _parse_coeff(field: FieldSpec, text, path=None):
    if not isinstance(text, str):
        raise DocumentError(f"coefficient {text!r} must be a string", path)
    try:
        return field.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad coefficient {text!r}: {exc}", path)


# categories ------------------------------------------------------------------


def category_to_json(cat: LinearCategory, name: str) -> dict:
    fmt = cat.field.format
    homs = [{"src": x, "dst": y, "basis": list(basis)}
            for (x, y), basis in sorted(cat.hom_basis.items())]
    identity = {x: [fmt(c) for c in coords] for x, coords in cat.identity.items()}
    composition = []
    for (f, g) in sorted(cat.composition):
        coords = cat.composition[(f, g)]
        xf, _, _ = cat.basis_location[f]
        _, yg, _ = cat.basis_location[g]
        names = cat.hom(xf, yg)
        result = [{"basis": names[i], "coeff": fmt(c)}
                  for i, c in enumerate(coords) if c != cat.field.zero]
        composition.append({"f": f, "g": g, "result": result})
    return {
        "format": FORMAT_LINCAT,
        "name": name,
        "field": field_to_json(cat.field),
        "objects": list(cat.objects),
        "homs": homs,
        "identity": identity,
        "composition": composition,
    }


def category_from_json(doc: dict, path=None) -> tuple[str, LinearCategory]:
    if _need(doc, "format", path) != FORMAT_LINCAT:
        raise DocumentError(f"not a {FORMAT_LINCAT} document", path)
    name = _need(doc, "name", path)
    field = field_from_json(_need(doc, "field", path), path)
    objects = tuple(_need(doc, "objects", path))
    hom_basis = {}
    for entry in _need(doc, "homs", path):
        key = (_need(entry, "src", path), _need(entry, "dst", path))
        if key in hom_basis:
            raise DocumentError(f"duplicate hom entry {key}", path)
        hom_basis[key] = tuple(_need(entry, "basis", path))
    identity = {}
    for x, coords in _need(doc, "identity", path).items():
        identity[x] = tuple(_parse_coeff(field, c, path) for c in coords)
    location = {}
    for (x, y), basis in hom_basis.items():
        for i, b in enumerate(basis):
            if b in location:
                raise DocumentError(f"basis name {b!r} is not unique", path)
            location[b] = (x, y, i)
    composition = {}
    for entry in _need(doc, "composition", path):
        f, g = _need(entry, "f", path), _need(entry, "g", path)
        if f not in location or g not in location:
            raise DocumentError(f"composition ({f},{g}) references unknown basis", path)
        xf = location[f][0]
        yg = location[g][1]
        names = hom_basis.get((xf, yg), ())
        coords = [field.zero] * len(names)
        index = {b: i for i, b in enumerate(names)}
        for term in _need(entry, "result", path):
            b = _need(term, "basis", path)
            if b not in index:
                raise DocumentError(
                    f"composition ({f},{g}) result uses foreign basis {b!r}", path)
            coords[index[b]] = field.add(
                coords[index[b]], _parse_coeff(field, _need(term, "coeff", path), path))
        composition[(f, g)] = tuple(coords)
    try:
        cat = LinearCategory(field, objects, hom_basis, identity, composition)
    except ConstructionError as exc:
        raise DocumentError(str(exc), path)
    return name, cat


# functors --------------------------------------------------------------------


def functor_to_json(fun: LinearFunctor, name: str, source: str, target: str) -> dict:
    fmt = fun.source.field.format
    matrices = []
    for (x, y) in sorted(fun.hom_matrices):
        m = fun.hom_matrices[(x, y)]
        flat = [fmt(c) for row in m.entries for c in row]
        matrices.append({"src": x, "dst": y, "matrix": flat})
    return {
        "format": FORMAT_LINFUN,
        "name": name,
        "source": source,
        "target": target,
        "object_map": dict(fun.object_map),
        "hom_matrices": matrices,
    }


def functor_from_json(doc: dict, categories: Mapping[str, LinearCategory],
                      path=None) -> tuple[str, LinearFunctor]:
    if _need(doc, "format", path) != FORMAT_LINFUN:
        raise DocumentError(f"not a {FORMAT_LINFUN} document", path)
    name = _need(doc, "name", path)
    src_name, dst_name = _need(doc, "source", path), _need(doc, "target", path)
    if src_name not in categories:
        raise DocumentError(f"unresolved source category {src_name!r}", path)
    if dst_name not in categories:
        raise DocumentError(f"unresolved target category {dst_name!r}", path)
    source, target = categories[src_name], categories[dst_name]
    object_map = dict(_need(doc, "object_map", path))
    field = source.field
    hom_matrices = {}
    for entry in _need(doc, "hom_matrices", path):
        x, y = _need(entry, "src", path), _need(entry, "dst", path)
        cols = source.dim(x, y)
        if cols == 0:
            raise DocumentError(f"matrix given for zero hom ({x},{y})", path)
        fx, fy = object_map.get(x), object_map.get(y)
        if fx is None or fy is None:
            raise DocumentError(f"object map misses {x} or {y}", path)
        rows = target.dim(fx, fy)
        flat = [_parse_coeff(field, c, path) for c in _need(entry, "matrix", path)]
        if len(flat) != rows * cols:
            raise DocumentError(
                f"matrix at ({x},{y}) has {len(flat)} entries, "
                f"expected {rows}x{cols}", path)
        data = tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))
        hom_matrices[(x, y)] = Matrix(field, rows, cols, data)
    try:
        fun = LinearFunctor(source, target, object_map, hom_matrices)
    except ConstructionError as exc:
        raise DocumentError(str(exc), path)
    return name, fun


# quivers ---------------------------------------------------------------------


def quiver_to_json(q: Quiver, name: str, field: FieldSpec,
                   relations: list) -> dict:
    fmt = field.format
    rels = [[{"path": list(path), "coeff": fmt(field.scalar(coeff))}
             for coeff, path in rel] for rel in relations]
    return {
        "format": FORMAT_QUIVER,
        "name": name,
        "field": field_to_json(field),
        "vertices": list(q.vertices),
        "arrows": [{"name": n, "src": s, "dst": d} for n, s, d in q.arrows],
        "relations": rels,
    }


def quiver_from_json(doc: dict, path=None):
    """Returns (name, quiver, relations, field); field defaults to Q."""
    if _need(doc, "format", path) != FORMAT_QUIVER:
        raise DocumentError(f"not a {FORMAT_QUIVER} document", path)
    name = _need(doc, "name", path)
    field = field_from_json(doc.get("field", {"kind": "Q"}), path)
    try:
        quiver = Quiver(tuple(_need(doc, "vertices", path)),
                        tuple((_need(a, "name", path), _need(a, "src", path),
                               _need(a, "dst", path))
                              for a in _need(doc, "arrows", path)))
    except ConstructionError as exc:
        raise DocumentError(str(exc), path)
    relations = []
    for rel in doc.get("relations", []):
        relations.append([(_parse_coeff(field, _need(t, "coeff", path), path),
                           list(_need(t, "path", path))) for t in rel])
    return name, quiver, relations, field


# algebras ----------------------------------------------------------------------


def algebra_from_json(doc: dict, path=None):
    """Parse an algebra/v1 document: basis names, a sparse multiplication
    table, and named idempotents.  Returns (name, field, basis, mult, idems)
    ready for ``category_from_algebra``."""
    if _need(doc, "format", path) != FORMAT_ALGEBRA:
        raise DocumentError(f"not a {FORMAT_ALGEBRA} document", path)
    name = _need(doc, "name", path)
    field = field_from_json(_need(doc, "field", path), path)
    basis = list(_need(doc, "basis", path))
    mult = {}
    for entry in _need(doc, "table", path):
        a, b = _need(entry, "a", path), _need(entry, "b", path)
        result = {}
        for term in _need(entry, "result", path):
            result[_need(term, "basis", path)] = _parse_coeff(
                field, _need(term, "coeff", path), path)
        mult[(a, b)] = result
    idems = []
    for entry in _need(doc, "idempotents", path):
        coords = [_parse_coeff(field, c, path)
                  for c in _need(entry, "coords", path)]
        idems.append((_need(entry, "name", path), coords))
    return name, field, basis, mult, idems


# certificates and verdicts ----------------------------------------------------


def certificate_to_json(cert: CoveringCertificate, functor_name: str) -> dict:
    fmt = cert.functor.source.field.format
    blocks = []
    for key in sorted(cert.blocks):
        block = cert.blocks[key]
        blocks.append({
            "base_src": block.base_src,
            "base_dst": block.base_dst,
            "lift": block.lift,
            "direction": block.direction,
            "columns": [{"object": o, "basis": b} for o, b in block.column_layout],
            "rows": block.matrix.nrows,
            "matrix": [fmt(c) for row in block.matrix.entries for c in row],
        })
    return {
        "format": FORMAT_COVCERT,
        "functor": functor_name,
        "fibres": {b: list(xs) for b, xs in sorted(cert.fibres.items())},
        "blocks": blocks,
    }


def covering_failure_to_json(failure: CoveringFailure) -> dict:
    out = {"kind": failure.kind, "message": failure.message()}
    for key in ("base_src", "base_dst", "lift", "direction",
                "expected_dim", "actual_dim", "missing_object"):
        value = getattr(failure, key)
        if value is not None:
            out[key] = value
    return out


def deck_group_to_json(deck: DeckGroup) -> dict:
    return {
        "order": deck.order,
        "action": [{"element": i,
                    "map": {x: deck.act(i, x)
                            for x in deck.covering.source.objects}}
                   for i in range(deck.order)],
    }


def triviality_to_json(result: TrivialityResult) -> dict:
    out = {"trivial": result.trivial}
    if result.witness is not None:
        out["labels"] = list(result.witness.labels)
        out["components"] = [list(c) for c in result.witness.components]
    if result.failing_component is not None:
        out["failing_component"] = list(result.failing_component)
    return out


def galois_verdict_to_json(verdict: GaloisVerdict) -> dict:
    evidence: dict = {}
    if verdict.components is not None:
        evidence["components"] = [list(c) for c in verdict.components]
    if verdict.covering_failure is not None:
        evidence["covering_failure"] = covering_failure_to_json(
            verdict.covering_failure)
    if verdict.deck is not None:
        evidence["deck_group"] = deck_group_to_json(verdict.deck)
    if verdict.fibre is not None:
        evidence["fibre"] = list(verdict.fibre)
    if verdict.unreachable:
        evidence["unreachable"] = list(verdict.unreachable)
    if verdict.triviality is not None:
        evidence["fibre_product_triviality"] = triviality_to_json(verdict.triviality)
    return {"status": verdict.status.value,
            "method": verdict.method,
            "evidence": evidence}
