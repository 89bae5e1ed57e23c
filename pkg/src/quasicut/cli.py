"""Command line interface: ``quasicut <command> [--input FILE] [--svg FILE] [--example NAME]``.

Commands: ``analyze``, ``delzant``, ``cut``, ``blowup``, ``arbitrary-cut``,
``render`` and ``example``.  Reports are plain text and deterministic.
Exit status is 0 on success, 1 when the data fail validation and 2 when
the input cannot be parsed.
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources

from .polyhedra import PolyhedronError, analyze
from .quasilattice import QuasilatticeError
from .delzant import DelzantError, build_model, isotropy, presentation, vertex_chart
from .cutting import CutError, CutResult, arbitrary_cut, cut
from .blowup import BlowupError, BlowupSpec, blow_up
from .docformat import Document, ParseError, parse
from .render import render_svg

__all__ = ["EXAMPLES", "main", "run", "load_example", "ValidationFailure"]

# example name -> (file, command it demonstrates)
EXAMPLES = {
    "kite": ("kite.qc", "cut"),
    "quadrant-blowup": ("quadrant-blowup.qc", "blowup"),
    "square-diagonal": ("square-diagonal.qc", "cut"),
    "arbitrary-c2": ("arbitrary-c2.qc", "arbitrary-cut"),
}
COMMANDS = ("analyze", "delzant", "cut", "blowup", "arbitrary-cut", "render", "example")


class ValidationFailure(Exception):
    """Raised by :func:`run` when the input is well formed but fails validation."""

    def __init__(self, message: str, report: str):
        super().__init__(message)
        self.report = report


def load_example(name: str) -> str:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    return resources.files("quasicut").joinpath("data", EXAMPLES[name][0]).read_text()


# ---------------------------------------------------------------------------
# formatting

def _s(x) -> str:
    return str(x)


def _vec(v) -> str:
    return "(" + ", ".join(_s(c) for c in v) + ")"


def _yn(flag) -> str:
    return "yes" if flag else "no"


def _equation(row, var="z") -> str:
    """``sum c_j |z_j|^2 = c`` from a row ``[c_1..c_d | c]``."""
    terms = []
    for j, c in enumerate(row[:-1]):
        if c == 0:
            continue
        mono = f"|{var}{j + 1}|^2"
        if c == 1:
            terms.append(("+", mono))
        elif c == -1:
            terms.append(("-", mono))
        else:
            text = _s(c)
            wrapped = f"({text})" if (" " in text) else text.lstrip("-")
            neg = " " not in text and text.startswith("-")
            terms.append(("-" if neg else "+", f"{wrapped}*{mono}"))
    if not terms:
        lhs = "0"
    else:
        lhs = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sgn, t in terms[1:]:
            lhs += f" {sgn} {t}"
    return f"{lhs} = {_s(row[-1])}"


def _matrix(rows, indent="    "):
    return [indent + "[" + ", ".join(_s(c) for c in r) + "]" for r in rows]


class _Report:
    def __init__(self):
        self.lines = []

    def section(self, title):
        if self.lines:
            self.lines.append("")
        self.lines.append(f"== {title} ==")

    def add(self, *lines):
        self.lines.extend(lines)

    def text(self):
        return "\n".join(self.lines) + "\n"


def _analysis_section(r: _Report, doc: Document):
    p = doc.polyhedron()
    a = analyze(p)
    r.section("polyhedron")
    r.add(f"field: {doc.tower.ident}", f"ambient dimension: {p.ambient_dim}")
    r.add(f"inequalities: {len(p.facets)}")
    for j, f in enumerate(p.facets):
        r.add(f"  {j + 1}: <mu, {_vec(f.normal)}> >= {_s(f.offset)}")
    r.add("redundant: " + (", ".join(str(j + 1) for j in a.redundant) or "none"))
    r.add(f"dimension: {a.dimension}", f"pointed: {_yn(a.pointed)}", f"simple: {_yn(a.simple)}",
          f"polytope: {_yn(a.is_polytope)}")
    r.add(f"vertices: {len(a.vertices)}")
    for i, v in enumerate(a.vertices):
        facets = ", ".join(str(a.kept[j] + 1) for j in v.active_set)
        r.add(f"  v{i + 1} = {_vec(v.point)}  on facets {{{facets}}}")
    r.add(f"rays: {len(a.recession_generators)}")
    for ray in a.recession_generators:
        r.add(f"  {_vec(ray)}")
    return a


def _model_lines(r: _Report, m, label="z"):
    r.add(f"model: C^{m.d} // N, dimension {m.model_dim}, compact: {_yn(m.is_compact)}")
    r.add("normals:")
    for j, (x, w) in enumerate(zip(m.normals, m.presentation.witnesses)):
        r.add(f"  X{j + 1} = {_vec(x)}  witness {_vec(w.coefficients)}  offset {_s(m.lam[j])}")
    r.add("level set:")
    if not m.level_system:
        r.add("  (none: N is discrete)")
    for row in m.level_system:
        r.add("  " + _equation(row, label))
    r.add("Lie algebra of N (kernel of pi):")
    for v in m.kernel:
        r.add("  " + _vec(v))


def _delzant_section(r: _Report, doc: Document):
    q = doc.quasilattice()
    r.section("quasilattice")
    r.add(f"generators: {q.q}", f"rank over Z: {q.free_rank}", f"lattice: {_yn(q.is_lattice)}")
    for name, g in zip(doc.generator_names or [f"e{i + 1}" for i in range(q.q)], q.generators):
        r.add(f"  {name} = {_vec(g)}")
    r.add(f"relations: {len(q.relations)}")
    for rel in q.relations:
        r.add(f"  {_vec(rel)}")
    pres = presentation(doc.polyhedron(), q, doc.witnesses())
    m = build_model(pres)
    r.section("delzant model")
    _model_lines(r, m)
    iso = isotropy(m)
    r.section("vertex charts")
    for i, (v, g) in enumerate(zip(m.vertices, iso.groups)):
        ch = vertex_chart(m, v)
        r.add(f"v{i + 1} = {_vec(v.point)}: facet order {_vec([j + 1 for j in ch.permutation])}, "
              f"isotropy {g}")
        r.add("  A =")
        r.add(*_matrix(ch.A, "    "))
    r.add(f"smooth: {_yn(iso.smooth)}")
    return m


def _cut_section(r: _Report, res: CutResult):
    v = res.validation
    r.section("cut")
    r.add(f"hyperplane: <mu, {_vec(res.spec.direction)}> = {_s(res.spec.level)}")
    r.add(f"validation: plus {'ok' if v.plus.ok else 'failed'}, minus {'ok' if v.minus.ok else 'failed'}")
    r.add(f"vertices on the hyperplane: {len(v.vertices_on_hyperplane)}")
    for w in v.vertices_on_hyperplane:
        r.add(f"  {_vec(w.point)}")
    c = res.circle
    r.section("circle action")
    r.add(f"Lambda: {c.line.describe()}")
    r.add(f"Q1 generators: {', '.join(_s(g) for g in c.line.generators)}")
    r.add(f"chart vertex: {_vec(c.chart_vertex.point)}, basis facets "
          f"{_vec([j + 1 for j in c.chart_facets])}")
    r.add(f"b: {_vec(c.b)}")
    r.add(f"exponents of exp(tY) on z: {_vec(c.exponents)}")
    for name, nu in (("nu-", c.nu_minus), ("nu+", c.nu_plus)):
        terms = " + ".join(f"({_s(b)})|z{j + 1}|^2" for j, b in enumerate(nu.z_coefficients) if b != 0)
        sign = "-" if nu.w_coefficient < 0 else "+"
        r.add(f"{name} = {terms} {sign} |w|^2 + ({_s(nu.constant)})")
    for side in (res.plus, res.minus):
        label = "plus side <mu, Y> >= eps" if side.sign > 0 else "minus side <mu, Y> <= eps"
        r.section(label)
        a = side.halfspace.analysis
        r.add(f"surviving facets: {_vec([j + 1 for j in side.surviving])}, "
              f"dropped: {_vec([j + 1 for j in side.halfspace.dropped])}")
        r.add(f"facets: {len(side.polyhedron.facets)}, vertices: {len(a.vertices)}, "
              f"polytope: {_yn(a.is_polytope)}")
        for w in a.vertices:
            r.add(f"  {_vec(w.point)}")
        _model_lines(r, side.model, "u")
        r.add(f"isotropy smooth: {_yn(isotropy(side.model).smooth)}")
        if side.a_block is not None:
            r.add("(A^l, b) =")
            r.add(*_matrix(side.a_block))
            if side.a_block_consistent is not None:
                r.add(f"matches the chart of the cut model: {_yn(side.a_block_consistent)}")
    if res.group_data is not None:
        r.section("cut group data")
        r.add("C = (I, A, P) =")
        r.add(*_matrix(res.group_data.C))
        r.add("A+ =")
        r.add(*_matrix(res.group_data.a_plus))
    red = res.reduced
    r.section("reduced space")
    r.add(f"Delta cap H: dimension {red.dimension}, vertices "
          + (", ".join(_vec(p) for p in red.vertices) or "none"))
    if red.rays:
        r.add("rays: " + ", ".join(_vec(x) for x in red.rays))
    r.add(f"circle fixed points: {red.fixed_point_count}")
    r.section("notes")
    for n in res.notes:
        r.add("- " + n)


# ---------------------------------------------------------------------------
# dispatch

def _svg_for(doc: Document, res: CutResult | None) -> str:
    p = doc.polyhedron()
    if res is None:
        cutline = (doc.cut.direction, doc.cut.level) if doc.cut is not None else None
        return render_svg(p, cut=cutline)
    return render_svg(p, cut=(res.spec.direction, res.spec.level),
                      plus=res.plus_polyhedron, minus=res.minus_polyhedron)


def run(command: str, doc: Document):
    """Run ``command`` on ``doc``; returns ``(report, svg_or_None)``.

    Raises :class:`ValidationFailure` carrying the partial report.
    """
    r = _Report()
    svg = None
    try:
        if command == "render":
            if doc.dim != 2:
                raise ValidationFailure("render needs a planar polyhedron", "")
            svg = _svg_for(doc, None)
            return svg, svg
        _analysis_section(r, doc)
        if command == "analyze":
            return r.text(), (_svg_for(doc, None) if doc.dim == 2 else None)
        m = _delzant_section(r, doc)
        res = None
        if command == "cut":
            if doc.cut is None:
                raise ValidationFailure("the input has no 'cut' line", r.text())
            res = cut(m, doc.cut)
            _cut_section(r, res)
        elif command == "arbitrary-cut":
            if doc.cut is None:
                raise ValidationFailure("the input has no 'cut' line", r.text())
            ares = arbitrary_cut(m.presentation, doc.cut)
            r.section("arbitrary direction")
            r.add(f"direction in the quasilattice: {_yn(not ares.extended)}")
            r.add(f"extended quasilattice: {ares.quasilattice.q} generators, "
                  f"rank {ares.quasilattice.free_rank}")
            r.add(f"Gamma = Q/Q~: {ares.gamma}")
            res = ares.cut
            _cut_section(r, res)
        elif command == "blowup":
            if doc.blowup is None:
                raise ValidationFailure("the input has no 'blowup' line", r.text())
            b = doc.blowup
            bres = blow_up(m, BlowupSpec(b.vertex, b.direction, b.level))
            t = bres.threshold
            r.section("blow-up")
            r.add(f"fixed point over {_vec(bres.vertex.point)}, direction {_vec(b.direction)}, "
                  f"level {_s(b.level)}")
            r.add(f"<vertex, Y> = {_s(t.base_level)}")
            r.add("threshold: " + ("none (every level gives a simplex)" if t.infinite else _s(t.value)))
            for chk in t.checks:
                r.add(f"  level {_s(chk.level)} ({chk.role}): simplex {_yn(chk.simplex_type)}")
            r.add("blow-up: plus side; exceptional simplex: minus side")
            res = bres.cut
            _cut_section(r, res)
        elif command != "delzant":
            raise ValueError(f"unknown command {command!r}")
        if doc.dim == 2:
            svg = _svg_for(doc, res)
        return r.text(), svg
    except (PolyhedronError, QuasilatticeError, DelzantError, CutError, BlowupError) as e:
        if isinstance(e, CutError) and e.validation is not None:
            for reason in e.validation.reasons():
                r.add(f"  {reason}")
        raise ValidationFailure(str(e), r.text()) from e


def _parser():
    ap = argparse.ArgumentParser(prog="quasicut", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("name", nargs="?", help="example name (for the 'example' command)")
    ap.add_argument("--input", metavar="FILE", help="input document (.qc); '-' reads stdin")
    ap.add_argument("--svg", metavar="FILE", help="also write an SVG picture (n = 2)")
    ap.add_argument("--example", metavar="NAME", choices=sorted(EXAMPLES),
                    help="use a built-in example as input")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    command = args.command
    if command == "example":
        name = args.name or args.example
        if name is None:
            for key in EXAMPLES:
                print(f"{key}: {EXAMPLES[key][1]}")
            return 0
        if name not in EXAMPLES:
            print(f"error: unknown example {name!r}", file=sys.stderr)
            return 2
        text, command = load_example(name), EXAMPLES[name][1]
    elif args.example:
        text = load_example(args.example)
    elif args.input:
        try:
            if args.input == "-":
                text = sys.stdin.read()
            else:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    else:
        print("error: give --input FILE or --example NAME", file=sys.stderr)
        return 2
    try:
        doc = parse(text)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    try:
        report, svg = run(command, doc)
    except ValidationFailure as e:
        sys.stdout.write(e.report)
        print(f"validation failed: {e}", file=sys.stderr)
        return 1
    if command == "render" and not args.svg:
        sys.stdout.write(report)
    elif command != "render":
        sys.stdout.write(report)
    if args.svg:
        if svg is None:
            print("error: no SVG for this input (needs n = 2)", file=sys.stderr)
            return 1
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return 0


if __name__ == "__main__":
    sys.exit(main())
