"""JSON interchange formats for categories, modules, certificates, reports.

All scalar values are exchanged as text: rationals as "n" or "n/d" in
lowest terms with positive denominator, prime-field elements as the least
non-negative residue in decimal. Omitted hom pairs, composition entries,
module spaces, and certificate blocks are zero. Malformed documents raise
ValueError.
"""

from __future__ import annotations

from typing import Any

from .exactalg import Field, Matrix
from .lincat import FinLinCat, FiniteCatPresentation
from .cmod import Bimodule, BimoduleMap, LeftModule, ShortExactSeq
from .cohomology import CohomologyResult, LesReport
from .separability import SeparabilityFamily

__all__ = [
    "category_to_json",
    "category_from_json",
    "presentation_to_json",
    "presentation_from_json",
    "bimodule_to_json",
    "bimodule_from_json",
    "left_module_to_json",
    "left_module_from_json",
    "ses_to_json",
    "ses_from_json",
    "certificate_to_json",
    "certificate_from_json",
    "cohomology_report_to_json",
    "les_report_to_json",
]


def _require(doc: Any, key: str, context: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ValueError(f"{context}: missing member {key!r}")
    return doc[key]


def category_to_json(c: FinLinCat) -> dict:
    homs = []
    for x in c.objects:
        for y in c.objects:
            basis = c.hom(x, y)
            if basis:
                homs.append({"from": x, "to": y, "basis": list(basis)})
    identity = {}
    for x in c.objects:
        labels = c.hom(x, x)
        identity[x] = {
            labels[t]: c.field.format(v) for t, v in enumerate(c.identity[x]) if v
        }
    composition = []
    for (g, f) in sorted(c.comp_table):
        vec = c.comp_table[(g, f)]
        x, _, _ = c.label_info[f]
        _, z, _ = c.label_info[g]
        basis = c.hom(x, z)
        result = [
            {"basis": basis[k], "coeff": c.field.format(v)} for k, v in enumerate(vec) if v
        ]
        if result:
            composition.append({"g": g, "f": f, "result": result})
    return {
        "field": c.field.to_json(),
        "objects": list(c.objects),
        "homs": homs,
        "identity": identity,
        "composition": composition,
    }


def category_from_json(doc: dict) -> FinLinCat:
    field = Field.from_json(_require(doc, "field", "category"))
    objects = _require(doc, "objects", "category")
    hom_basis: dict[tuple[str, str], list[str]] = {}
    for entry in doc.get("homs", []):
        pair = (_require(entry, "from", "hom entry"), _require(entry, "to", "hom entry"))
        hom_basis[pair] = list(_require(entry, "basis", "hom entry"))
    label_pos: dict[str, tuple[str, str, int]] = {}
    for (x, y), labels in hom_basis.items():
        for i, lab in enumerate(labels):
            if lab in label_pos:
                raise ValueError(f"category: basis label {lab!r} is not globally unique")
            label_pos[lab] = (x, y, i)
    identity = {}
    for x, coeffs in _require(doc, "identity", "category").items():
        labels = hom_basis.get((x, x), [])
        vec = [field.zero] * len(labels)
        for lab, text in coeffs.items():
            if lab not in labels:
                raise ValueError(f"category: identity of {x} uses label {lab!r} outside hom({x},{x})")
            vec[labels.index(lab)] = field.parse(text)
        identity[x] = vec
    comp_table = {}
    for entry in doc.get("composition", []):
        g = _require(entry, "g", "composition entry")
        f = _require(entry, "f", "composition entry")
        if g not in label_pos or f not in label_pos:
            raise ValueError(f"category: composition entry ({g},{f}) names unknown labels")
        x, _, _ = label_pos[f]
        _, z, _ = label_pos[g]
        basis = hom_basis.get((x, z), [])
        vec = [field.zero] * len(basis)
        for term in _require(entry, "result", "composition entry"):
            lab = _require(term, "basis", "composition term")
            if lab not in basis:
                raise ValueError(f"category: composition ({g},{f}) names {lab!r} outside hom({x},{z})")
            idx = basis.index(lab)
            vec[idx] = field.add(vec[idx], field.parse(_require(term, "coeff", "composition term")))
        comp_table[(g, f)] = vec
    return FinLinCat(field, objects, hom_basis, comp_table, identity)


def presentation_to_json(p: FiniteCatPresentation) -> dict:
    doc = {
        "objects": list(p.objects),
        "morphisms": [
            {"name": name, "from": src, "to": tgt} for name, (src, tgt) in p.morphisms.items()
        ],
        "identity": dict(p.identity),
        "composition": [
            {"g": g, "f": f, "result": h} for (g, f), h in sorted(p.composition.items())
        ],
    }
    if p.inverse:
        doc["inverse"] = dict(p.inverse)
    return doc


def presentation_from_json(doc: dict) -> FiniteCatPresentation:
    objects = _require(doc, "objects", "presentation")
    morphisms = {}
    for entry in _require(doc, "morphisms", "presentation"):
        name = _require(entry, "name", "morphism entry")
        if name in morphisms:
            raise ValueError(f"presentation: duplicate morphism name {name!r}")
        morphisms[name] = (_require(entry, "from", "morphism entry"), _require(entry, "to", "morphism entry"))
    identity = _require(doc, "identity", "presentation")
    composition = {}
    for entry in doc.get("composition", []):
        g = _require(entry, "g", "composition entry")
        f = _require(entry, "f", "composition entry")
        composition[(g, f)] = _require(entry, "result", "composition entry")
    return FiniteCatPresentation(objects, morphisms, identity, composition, doc.get("inverse"))


def bimodule_to_json(m: Bimodule) -> dict:
    c = m.cat
    spaces = [
        {"x": x, "y": y, "dim": m.dims[(x, y)]}
        for x in c.objects
        for y in c.objects
        if m.dims[(x, y)]
    ]
    left = []
    for f in sorted(c.label_info):
        for y in c.objects:
            mat = m.left[(f, y)]
            if mat.rows * mat.cols:
                left.append({"f": f, "y": y, "matrix": mat.to_json()})
    right = []
    for g in sorted(c.label_info):
        for x in c.objects:
            mat = m.right[(g, x)]
            if mat.rows * mat.cols:
                right.append({"g": g, "x": x, "matrix": mat.to_json()})
    return {"spaces": spaces, "left_action": left, "right_action": right}


def bimodule_from_json(c: FinLinCat, doc: dict) -> Bimodule:
    dims = {(x, y): 0 for x in c.objects for y in c.objects}
    for entry in _require(doc, "spaces", "bimodule"):
        pair = (_require(entry, "x", "space entry"), _require(entry, "y", "space entry"))
        if pair not in dims:
            raise ValueError(f"bimodule: space entry names unknown objects {pair}")
        dims[pair] = int(_require(entry, "dim", "space entry"))
    left = {}
    for entry in doc.get("left_action", []):
        f = _require(entry, "f", "left action entry")
        y = _require(entry, "y", "left action entry")
        if f not in c.label_info:
            raise ValueError(f"bimodule: unknown morphism label {f!r}")
        x, x2, _ = c.label_info[f]
        left[(f, y)] = Matrix.from_json(
            c.field, dims[(x2, y)], dims[(x, y)], _require(entry, "matrix", "left action entry")
        )
    right = {}
    for entry in doc.get("right_action", []):
        g = _require(entry, "g", "right action entry")
        x = _require(entry, "x", "right action entry")
        if g not in c.label_info:
            raise ValueError(f"bimodule: unknown morphism label {g!r}")
        y2, y, _ = c.label_info[g]
        right[(g, x)] = Matrix.from_json(
            c.field, dims[(x, y2)], dims[(x, y)], _require(entry, "matrix", "right action entry")
        )
    for f, (x, x2, _) in c.label_info.items():
        for y in c.objects:
            if (f, y) not in left:
                if dims[(x2, y)] * dims[(x, y)]:
                    raise ValueError(f"bimodule: missing left action for ({f},{y})")
                left[(f, y)] = Matrix.zeros(c.field, dims[(x2, y)], dims[(x, y)])
    for g, (y2, y, _) in c.label_info.items():
        for x in c.objects:
            if (g, x) not in right:
                if dims[(x, y2)] * dims[(x, y)]:
                    raise ValueError(f"bimodule: missing right action for ({g},{x})")
                right[(g, x)] = Matrix.zeros(c.field, dims[(x, y2)], dims[(x, y)])
    return Bimodule(c, dims, left, right)


def left_module_to_json(m: LeftModule) -> dict:
    c = m.cat
    spaces = [{"x": x, "dim": m.dims[x]} for x in c.objects if m.dims[x]]
    action = []
    for f in sorted(c.label_info):
        mat = m.action[f]
        if mat.rows * mat.cols:
            action.append({"f": f, "matrix": mat.to_json()})
    return {"spaces": spaces, "action": action}


def left_module_from_json(c: FinLinCat, doc: dict) -> LeftModule:
    dims = {x: 0 for x in c.objects}
    for entry in _require(doc, "spaces", "left module"):
        x = _require(entry, "x", "space entry")
        if x not in dims:
            raise ValueError(f"left module: unknown object {x!r}")
        dims[x] = int(_require(entry, "dim", "space entry"))
    action = {}
    for entry in doc.get("action", []):
        f = _require(entry, "f", "action entry")
        if f not in c.label_info:
            raise ValueError(f"left module: unknown morphism label {f!r}")
        x, y, _ = c.label_info[f]
        action[f] = Matrix.from_json(c.field, dims[y], dims[x], _require(entry, "matrix", "action entry"))
    for f, (x, y, _) in c.label_info.items():
        if f not in action:
            if dims[x] * dims[y]:
                raise ValueError(f"left module: missing action for {f}")
            action[f] = Matrix.zeros(c.field, dims[y], dims[x])
    return LeftModule(c, dims, action)


def _map_blocks_to_json(m: BimoduleMap) -> list:
    c = m.source.cat
    out = []
    for x in c.objects:
        for y in c.objects:
            blk = m.blocks[(x, y)]
            if blk.rows * blk.cols:
                out.append({"x": x, "y": y, "matrix": blk.to_json()})
    return out


def _map_blocks_from_json(c: FinLinCat, src: Bimodule, tgt: Bimodule, entries: list) -> BimoduleMap:
    blocks = {
        (x, y): Matrix.zeros(c.field, tgt.dims[(x, y)], src.dims[(x, y)])
        for x in c.objects
        for y in c.objects
    }
    for entry in entries:
        pair = (_require(entry, "x", "map entry"), _require(entry, "y", "map entry"))
        blocks[pair] = Matrix.from_json(
            c.field, tgt.dims[pair], src.dims[pair], _require(entry, "matrix", "map entry")
        )
    return BimoduleMap(src, tgt, blocks)


def ses_to_json(s: ShortExactSeq) -> dict:
    return {
        "M": bimodule_to_json(s.m),
        "N": bimodule_to_json(s.n),
        "P": bimodule_to_json(s.p),
        "i": _map_blocks_to_json(s.i),
        "q": _map_blocks_to_json(s.q),
    }


def ses_from_json(c: FinLinCat, doc: dict) -> ShortExactSeq:
    m = bimodule_from_json(c, _require(doc, "M", "short exact sequence"))
    n = bimodule_from_json(c, _require(doc, "N", "short exact sequence"))
    p = bimodule_from_json(c, _require(doc, "P", "short exact sequence"))
    i = _map_blocks_from_json(c, m, n, _require(doc, "i", "short exact sequence"))
    q = _map_blocks_from_json(c, n, p, _require(doc, "q", "short exact sequence"))
    return ShortExactSeq(m, n, p, i, q)


def certificate_to_json(c: FinLinCat, fam: SeparabilityFamily) -> list:
    out = []
    for x in c.objects:
        for y in c.objects:
            blk = fam.blocks.get((x, y))
            if blk is None or blk.is_zero():
                continue
            us = c.hom(y, x)
            vs = c.hom(x, y)
            terms = []
            for i in range(blk.rows):
                for j in range(blk.cols):
                    v = blk.entries[i * blk.cols + j]
                    if v:
                        terms.append({"coeff": c.field.format(v), "u": us[i], "v": vs[j]})
            out.append({"x": x, "y": y, "terms": terms})
    return out


def certificate_from_json(c: FinLinCat, doc: list) -> SeparabilityFamily:
    if not isinstance(doc, list):
        raise ValueError("certificate: expected a JSON array of blocks")
    blocks: dict[tuple[str, str], Matrix] = {}
    for entry in doc:
        x = _require(entry, "x", "certificate block")
        y = _require(entry, "y", "certificate block")
        if x not in c.objects or y not in c.objects:
            raise ValueError(f"certificate: unknown objects ({x},{y})")
        us = c.hom(y, x)
        vs = c.hom(x, y)
        blk = blocks.get((x, y)) or Matrix.zeros(c.field, len(us), len(vs))
        for term in entry.get("terms", []):
            u = _require(term, "u", "certificate term")
            v = _require(term, "v", "certificate term")
            if u not in us:
                raise ValueError(f"certificate: label {u!r} is not in hom({y},{x})")
            if v not in vs:
                raise ValueError(f"certificate: label {v!r} is not in hom({x},{y})")
            i, j = us.index(u), vs.index(v)
            coeff = c.field.parse(_require(term, "coeff", "certificate term"))
            blk.entries[i * len(vs) + j] = c.field.add(blk.entries[i * len(vs) + j], coeff)
        blocks[(x, y)] = blk
    return SeparabilityFamily(blocks)


def cohomology_report_to_json(result: CohomologyResult, budget_exceeded: bool = False) -> dict:
    return {
        "degrees": [
            {"n": d.n, "dim_cochain": d.dim_cochain, "rank_d": d.rank_d, "dim_H": d.dim_h}
            for d in result.degrees
        ],
        "budget_exceeded": budget_exceeded,
    }


def les_report_to_json(report: LesReport) -> dict:
    return {
        "degrees": [
            {"n": d.n, "dim_H_M": d.dim_h_m, "dim_H_N": d.dim_h_n, "dim_H_P": d.dim_h_p}
            for d in report.degrees
        ],
        "connecting_ranks": list(report.connecting_ranks),
        "positions": [
            {
                "position": r.position,
                "incoming_rank": r.incoming_rank,
                "kernel_dim": r.kernel_dim,
                "exact": r.exact,
            }
            for r in report.positions
        ],
    }
