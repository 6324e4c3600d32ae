"""Catalog serialization: a diff-stable text format and its parser.

The machine format is line oriented, one block per curve: label, family,
defining field, parameter assignments, section, the sextic in canonical
graded-lexicographic form, and the verification summary.  The human format
renders the same data with aligned typography.  Machine blocks round-trip
through parse_catalog.
"""

from __future__ import annotations

from gmpy2 import mpq

from .numfield import (QQ, FieldElement, NumberField, _poly_text,
                       _parse_poly_text, format_element, parse_element)
from .poly import MultiPoly, poly_from_string

HEADER = "# maximizing sextics catalog, format 1"

XYZ = ("x1", "x2", "x3")


def _field_text(field):
    if getattr(field, "is_rational", False):
        return "QQ"
    return _poly_text(field.def_poly, field.name)


def _elem_text(x):
    if isinstance(x, FieldElement):
        return _poly_text(x.coeffs, x.field.name)
    return str(mpq(x))


def render_record(rec, machine=True):
    v = rec.verification
    lines = [f"record {rec.name}"]
    lbl = rec.label
    if lbl.table_line is not None:
        lines.append(f"  line {lbl.table_line}")
    lines.append(f"  family {lbl.family}")
    lines.append(f"  route {lbl.route}")
    lines.append(f"  field {_field_text(rec.field)}")
    r, c = lbl.rc
    lines.append(f"  rc {r} {c}")
    for k in sorted(rec.params):
        lines.append(f"  param {k} = {_elem_text(rec.params[k])}")
    d = rec.section.values()
    lines.append(f"  section {_elem_text(d[0])} ; {_elem_text(d[1])} ; "
                 f"{_elem_text(d[2])}")
    lines.append(f"  sextic {rec.sextic.to_string()}")
    for p in v.get("points", ()):
        lines.append(f"  point chart={p.chart} ade={p.ade} mu={p.milnor} "
                     f"orbit={p.orbit_size}")
    lines.append(f"  total_milnor {v['total_milnor']}")
    sig = v.get("signature")
    if sig:
        lines.append(f"  signature {sig[0]} {sig[1]}")
    if v.get("J") is not None:
        lines.append(f"  J {_elem_text(v['J'])}")
        mp = v.get("J_min_poly")
        if mp:
            lines.append(f"  J_minpoly {_poly_text(mp, 'z')}")
    if v.get("j0") is not None:
        lines.append(f"  j0 {_elem_text(v['j0'])}")
    scr = v.get("component_screen")
    if scr:
        lines.append(f"  screen lines={'clean' if scr['no_line_component'] else 'FOUND'}"
                     f" conics={'clean' if scr['no_conic_component'] else 'FOUND'}")
    lines.append("end")
    return "\n".join(lines)


def render_catalog(records, fmt="machine"):
    if fmt == "machine":
        return HEADER + "\n\n" + "\n\n".join(render_record(r) for r in records) + "\n"
    out = [HEADER.replace("# ", "").upper(), "=" * 64]
    for rec in records:
        v = rec.verification
        out.append("")
        out.append(f"{rec.name:.<28s} total Milnor {v['total_milnor']}")
        out.append(f"    family       {rec.label.family} (route {rec.label.route})")
        out.append(f"    field        {_field_text(rec.field)}")
        sig = v.get("signature", ("?", "?"))
        out.append(f"    embeddings   {sig[0]} real, {sig[1]} conjugate pairs")
        for k in sorted(rec.params):
            out.append(f"    {k:<12s} {_elem_text(rec.params[k])}")
        pts = ", ".join(f"{p.ade}(mu={p.milnor})x{p.orbit_size}"
                        for p in v.get("points", ()))
        out.append(f"    singular     {pts}")
        if v.get("J") is not None:
            out.append(f"    J            {_elem_text(v['J'])}")
        if v.get("j0") is not None:
            out.append(f"    j0           {_elem_text(v['j0'])}")
        scr = v.get("component_screen")
        if scr:
            out.append(f"    screen       lines "
                       f"{'clean' if scr['no_line_component'] else 'FOUND'}, "
                       f"conics {'clean' if scr['no_conic_component'] else 'FOUND'}")
        out.append(f"    equation     {rec.sextic.to_string()}")
    return "\n".join(out) + "\n"


class ParsedRecord:
    """Plain-data image of a catalog record, as read back from text."""

    def __init__(self):
        self.name = None
        self.line = None
        self.family = None
        self.route = None
        self.field = None
        self.rc = None
        self.params = {}
        self.section = None
        self.sextic = None
        self.points = []
        self.total_milnor = None
        self.signature = None
        self.J = None
        self.J_min_poly = None
        self.j0 = None
        self.screen = None

    def key_data(self):
        return {
            "name": self.name, "family": self.family, "route": self.route,
            "field": None if self.field is None else
            (None if getattr(self.field, "is_rational", False)
             else tuple(self.field.def_poly)),
            "rc": self.rc,
            "params": {k: (v.coeffs if isinstance(v, FieldElement) else mpq(v))
                       for k, v in sorted(self.params.items())},
            "section": tuple(x.coeffs if isinstance(x, FieldElement) else mpq(x)
                             for x in (self.section or ())),
            "sextic": None if self.sextic is None else
            tuple(sorted(self.sextic.terms.items())),
            "points": tuple(sorted(self.points)),
            "total_milnor": self.total_milnor,
            "J": self.J.coeffs if isinstance(self.J, FieldElement) else self.J,
        }


def record_key_data(rec):
    """The same plain-data projection for a synthesized CurveRecord."""
    p = ParsedRecord()
    p.name = rec.name
    p.family = rec.label.family
    p.route = rec.label.route
    p.field = rec.field
    p.rc = rec.label.rc
    p.params = dict(rec.params)
    p.section = rec.section.values()
    p.sextic = rec.sextic
    v = rec.verification
    p.points = [(pt.chart, pt.ade, pt.milnor, pt.orbit_size)
                for pt in v.get("points", ())]
    p.total_milnor = v.get("total_milnor")
    p.J = v.get("J")
    return p.key_data()


def parse_catalog(text):
    """Parse the machine format back into ParsedRecord objects."""
    records = []
    cur = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("record "):
            cur = ParsedRecord()
            cur.name = line[len("record "):].strip()
            continue
        if cur is None:
            continue
        if line == "end":
            records.append(cur)
            cur = None
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "line":
            cur.line = int(rest)
        elif key == "family":
            cur.family = rest
        elif key == "route":
            cur.route = rest
        elif key == "field":
            cur.field = QQ if rest == "QQ" else \
                NumberField(_parse_poly_text(rest, _detect(rest)),
                            name=_detect(rest), check_irreducible=False)
        elif key == "rc":
            a, b = rest.split()
            cur.rc = (int(a), int(b))
        elif key == "param":
            name, _, val = rest.partition("=")
            cur.params[name.strip()] = _parse_value(val.strip(), cur.field)
        elif key == "section":
            parts = [p.strip() for p in rest.split(";")]
            cur.section = tuple(_parse_value(p, cur.field) for p in parts)
        elif key == "sextic":
            cur.sextic = poly_from_string(rest, XYZ, cur.field)
        elif key == "point":
            fields = dict(kv.split("=") for kv in rest.split())
            cur.points.append((int(fields["chart"]), fields["ade"],
                               int(fields["mu"]), int(fields["orbit"])))
        elif key == "total_milnor":
            cur.total_milnor = int(rest)
        elif key == "signature":
            a, b = rest.split()
            cur.signature = (int(a), int(b))
        elif key == "J":
            cur.J = _parse_value(rest, cur.field)
        elif key == "J_minpoly":
            cur.J_min_poly = _parse_poly_rational(rest)
        elif key == "j0":
            cur.j0 = _parse_value(rest, cur.field)
        elif key == "screen":
            cur.screen = rest
    return records


def _detect(text):
    for ch in text:
        if ch.isalpha():
            return ch
    return "e"


def _parse_value(text, field):
    if field is None or getattr(field, "is_rational", False) \
            or not any(ch.isalpha() for ch in text):
        return mpq(text)
    vec = _parse_poly_text(text, field.name)
    return field.from_coeffs(vec)


def _parse_poly_rational(text):
    return [mpq(c) for c in _parse_poly_text(text, "z")]
