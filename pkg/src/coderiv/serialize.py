"""JSON descriptor round-trips for complexes, maps and structures.

Everything serializes with stable ordering so identical inputs produce
byte-identical JSON.
"""

import json

from .algebra import make_algebra
from .complexes import FreeBimoduleComplex, GradedBimoduleMap, TensorElement


def complex_from_descriptor(desc):
    if isinstance(desc, str):
        desc = json.loads(desc)
    A = make_algebra(desc["algebra"])
    gens = {int(h): list(labels) for h, labels in desc["generators"].items()}
    P = FreeBimoduleComplex(A, gens)
    for label, terms in desc.get("differential", {}).items():
        gid = P.gen_by_label(label)
        val = TensorElement(P, 1, gid[0] + 1)
        for coeff, a, target, b in terms:
            key = (A.basis.index(a), P.gen_by_label(target),
                   A.basis.index(b))
            val.add_term(key, A.field.parse(coeff))
        P.set_differential(gid, val)
    for label, elt in desc.get("augmentation", {}).items():
        gid = P.gen_by_label(label)
        P.set_augmentation(gid, {A.basis.index(bl): A.field.parse(c)
                                 for bl, c in elt.items()})
    internal = desc.get("internal_degrees")
    if internal:
        for label, d in internal.items():
            P._internal[P.gen_by_label(label)] = int(d)
    return P


def complex_descriptor(P):
    desc = P.descriptor()
    if P._internal:
        desc["internal_degrees"] = {P.gen_label(g): d
                                    for g, d in sorted(P._internal.items())}
    return desc


def map_descriptor(f):
    """{"power": n, "degree": d, "values": {generator: [terms]}}."""
    P = f.complex
    field = P.algebra.field
    values = {}
    for gid in sorted(f.values):
        v = f.values[gid]
        if v.is_zero():
            continue
        terms = []
        for key in sorted(v.terms):
            entry = [field.to_str(v.terms[key])]
            for pos, e in enumerate(key):
                entry.append(P.algebra.basis[e] if pos % 2 == 0
                             else P.gen_label(e))
            terms.append(entry)
        values[f.source_complex.gen_label(gid)] = terms
    return {"power": f.power, "degree": f.degree, "values": values}


def map_from_descriptor(P, desc, source=None):
    source = source or P
    f = GradedBimoduleMap(P, desc["power"], desc["degree"])
    f.source_complex = source
    A = P.algebra
    for label, terms in desc["values"].items():
        gid = source.gen_by_label(label)
        val = TensorElement(P, desc["power"], gid[0] + desc["degree"])
        for entry in terms:
            coeff = A.field.parse(entry[0])
            key = tuple(A.basis.index(e) if pos % 2 == 0
                        else P.gen_by_label(e)
                        for pos, e in enumerate(entry[1:]))
            val.add_term(key, coeff)
        if not val.is_zero():
            f.values[gid] = val
    return f


def to_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
