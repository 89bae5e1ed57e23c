"""The ``.qc`` input format.

A document is a sequence of lines; ``#`` starts a comment::

    dim 2
    sqrt r5 = 5                      # adjoin sqrt(5), named r5
    let phi = (1 + r5)/2
    sqrt k = 2 + phi                 # radicands may use earlier names
    generator Y0 = (1, 0)
    generator Y1 = (1/(2*phi), k/2)
    facet -Y1 >= -1 witness (0, -1)
    facet (1, 1) <= 3
    cut Y0 at 0
    blowup (0, 0) direction (1, 1) at 1/2

Expressions use ``+ - * / ^`` (integer exponents), parentheses, and tuples
``(a, b, ...)`` for vectors (``(a,)`` in dimension one).  Names are square
roots, ``let`` bindings or generators.  Facets read ``<mu, X> >= lambda``;
``<=`` is accepted and stored negated.  Without ``generator`` lines the
quasilattice is ``Z^n``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exactfield import RATIONALS, FieldElement, FieldTower, TowerError, adjoin_sqrt, coerce
from .polyhedra import HPolyhedron
from .quasilattice import MembershipWitness, Quasilattice, standard_lattice
from .cutting import CutSpec

__all__ = ["ParseError", "Document", "FacetLine", "BlowupLine", "parse", "serialize"]


class ParseError(ValueError):
    """A diagnostic at ``line``:``column`` (both 1-based)."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class FacetLine:
    normal: tuple
    offset: FieldElement
    witness: tuple | None = None


@dataclass(frozen=True)
class BlowupLine:
    vertex: tuple
    direction: tuple
    level: FieldElement


@dataclass
class Document:
    tower: FieldTower
    dim: int
    generator_names: tuple = ()
    generators: tuple = ()
    facets: tuple = ()
    cut: CutSpec | None = None
    blowup: BlowupLine | None = None
    bindings: dict = field(default_factory=dict, compare=False, repr=False)

    def polyhedron(self) -> HPolyhedron:
        return HPolyhedron.from_inequalities([f.normal for f in self.facets],
                                             [f.offset for f in self.facets], self.tower)

    def quasilattice(self) -> Quasilattice:
        if self.generators:
            return Quasilattice(self.generators, self.tower)
        return standard_lattice(self.dim, self.tower)

    def witnesses(self):
        """Per-facet witnesses (``None`` where not given)."""
        return [MembershipWitness(f.witness) if f.witness is not None else None for f in self.facets]

    def equivalent(self, other: "Document") -> bool:
        """Field-exact equality of everything the format stores."""
        return (self.tower == other.tower and self.tower.names == other.tower.names
                and self.dim == other.dim
                and self.generator_names == other.generator_names
                and self.generators == other.generators and self.facets == other.facets
                and self.cut == other.cut and self.blowup == other.blowup)


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<op>>=|<=|[-+*/^(),=]))")
_KEYWORDS = {"dim", "sqrt", "let", "generator", "facet", "cut", "blowup", "at", "direction", "witness"}


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, lineno: int):
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return toks


class _Line:
    """Recursive-descent evaluator over the tokens of one line."""

    def __init__(self, toks, lineno: int, end_col: int, env: dict, tower: FieldTower):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.end_col = end_col
        self.env = env
        self.tower = tower

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.lineno, tok.col if tok else self.end_col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of line")
        self.i += 1
        return tok

    def accept(self, text):
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.i += 1
            return tok
        return None

    def expect(self, text):
        if not self.accept(text):
            tok = self.peek()
            self.error(f"expected {text!r}" + (f", found {tok.text!r}" if tok else ""))

    def name(self):
        tok = self.next()
        if tok.kind != "name" or tok.text in _KEYWORDS:
            self.error("expected a name", tok)
        return tok

    def done(self):
        if self.peek() is not None:
            self.error(f"unexpected {self.peek().text!r}")

    # expressions ---------------------------------------------------------
    def expr(self):
        left = self.term()
        while True:
            tok = self.peek()
            if tok is None or tok.text not in "+-" or tok.kind != "op":
                return left
            self.i += 1
            right = self.term()
            left = self._binary(tok, left, right)

    def term(self):
        left = self.unary()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in ("*", "/"):
                return left
            self.i += 1
            right = self.unary()
            left = self._binary(tok, left, right)

    def unary(self):
        tok = self.peek()
        if tok is not None and tok.text in ("-", "+") and tok.kind == "op":
            self.i += 1
            v = self.unary()
            return v if tok.text == "+" else _neg(v)
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.accept("^")
        if tok is None:
            return base
        sign = -1 if self.accept("-") else 1
        etok = self.next()
        if etok.kind != "num" or "." in etok.text:
            self.error("exponent must be an integer literal", etok)
        if isinstance(base, tuple):
            self.error("cannot raise a vector to a power", tok)
        try:
            return base ** (sign * int(etok.text))
        except ZeroDivisionError:
            self.error("zero raised to a negative power", tok)

    def atom(self):
        tok = self.next()
        if tok.kind == "num":
            return coerce(Fraction(tok.text), self.tower)
        if tok.kind == "name":
            if tok.text not in self.env:
                self.error(f"unknown name {tok.text!r}", tok)
            v = self.env[tok.text]
            return tuple(coerce(c, self.tower) for c in v) if isinstance(v, tuple) else coerce(v, self.tower)
        if tok.text == "(":
            first = self.expr()
            if self.accept(")"):
                return first
            items = [first]
            while self.accept(","):
                if self.peek() is not None and self.peek().text == ")":
                    break
                items.append(self.expr())
            self.expect(")")
            if any(isinstance(x, tuple) for x in items):
                self.error("vectors cannot be nested", tok)
            return tuple(items)
        self.error(f"unexpected {tok.text!r}", tok)

    def _binary(self, tok, a, b):
        va, vb = isinstance(a, tuple), isinstance(b, tuple)
        op = tok.text
        if op in "+-":
            if va != vb:
                self.error(f"cannot apply {op!r} to a vector and a scalar", tok)
            if va:
                if len(a) != len(b):
                    self.error("vector lengths differ", tok)
                return tuple(x + y if op == "+" else x - y for x, y in zip(a, b))
            return a + b if op == "+" else a - b
        if op == "*":
            if va and vb:
                self.error("cannot multiply two vectors", tok)
            if va:
                return tuple(x * b for x in a)
            if vb:
                return tuple(a * y for y in b)
            return a * b
        if vb:
            self.error("cannot divide by a vector", tok)
        if b == 0:
            self.error("division by zero", tok)
        return tuple(x / b for x in a) if va else a / b

    def scalar(self):
        tok = self.peek()
        v = self.expr()
        if isinstance(v, tuple):
            self.error("expected a scalar, found a vector", tok)
        return v

    def vector(self, dim):
        tok = self.peek()
        v = self.expr()
        if not isinstance(v, tuple):
            self.error("expected a vector, found a scalar", tok)
        if dim is not None and len(v) != dim:
            self.error(f"vector has {len(v)} entries, expected {dim}", tok)
        return v

    def int_tuple(self):
        self.expect("(")
        out = []
        while True:
            neg = bool(self.accept("-"))
            tok = self.next()
            if tok.kind != "num" or "." in tok.text:
                self.error("witness entries must be integers", tok)
            out.append(-int(tok.text) if neg else int(tok.text))
            if self.accept(")"):
                return tuple(out)
            self.expect(",")


def _neg(v):
    return tuple(-x for x in v) if isinstance(v, tuple) else -v


def parse(text: str) -> Document:
    """Parse a ``.qc`` document; raises :class:`ParseError` with a position."""
    tower = RATIONALS
    env: dict = {}
    dim = None
    gen_names, gens, facets = [], [], []
    cut = blowup = None
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        toks = _tokenize(body, lineno)
        if not toks:
            continue
        p = _Line(toks, lineno, len(body.rstrip()) + 1, env, tower)
        head = p.next()
        kw = head.text
        if kw == "dim":
            tok = p.next()
            if tok.kind != "num" or "." in tok.text or int(tok.text) < 1:
                p.error("dimension must be a positive integer", tok)
            if dim is not None and dim != int(tok.text):
                p.error(f"dimension {tok.text} conflicts with {dim}", tok)
            dim = int(tok.text)
        elif kw in ("sqrt", "let", "generator"):
            name = p.name()
            if name.text in env:
                p.error(f"name {name.text!r} is already defined", name)
            p.expect("=")
            if kw == "sqrt":
                r = p.scalar()
                try:
                    tower = adjoin_sqrt(tower, r, name.text)
                except TowerError as e:
                    p.error(str(e), name)
                env[name.text] = tower.gen(tower.depth - 1)
            elif kw == "let":
                env[name.text] = p.expr()
            else:
                v = p.vector(dim)
                dim = len(v)
                env[name.text] = v
                gen_names.append(name.text)
                gens.append(v)
        elif kw == "facet":
            x = p.vector(dim)
            dim = len(x)
            rel = p.next()
            if rel.text not in (">=", "<="):
                p.error("expected '>=' or '<='", rel)
            lam = p.scalar()
            w, wcol = None, head.col
            if p.peek() is not None and p.peek().text == "witness":
                wcol = p.peek().col
            if p.accept("witness"):
                w = p.int_tuple()
            if rel.text == "<=":
                x, lam = _neg(x), -lam
                w = tuple(-c for c in w) if w is not None else None
            facets.append((x, lam, w, (lineno, wcol)))
        elif kw == "cut":
            if cut is not None:
                p.error("only one cut line is allowed", head)
            y = p.vector(dim)
            dim = len(y)
            p.expect("at")
            eps = p.scalar()
            if all(c == 0 for c in y):
                p.error("cut direction must be nonzero", head)
            cut = (y, eps)
        elif kw == "blowup":
            if blowup is not None:
                p.error("only one blowup line is allowed", head)
            v = p.vector(dim)
            dim = len(v)
            p.expect("direction")
            y = p.vector(dim)
            p.expect("at")
            blowup = (v, y, p.scalar())
        else:
            p.error(f"unknown statement {kw!r}", head)
        p.done()

    last = len(lines) + 1
    if not facets:
        raise ParseError("document has no facets", last, 1)
    for x, lam, w, (lineno, col) in facets:
        if w is not None and len(w) != (len(gens) if gens else dim):
            raise ParseError("witness length does not match the number of generators", lineno, col)
    if gens and len(gens) < dim:
        raise ParseError(f"{len(gens)} generators cannot span dimension {dim}", last, 1)

    def fin(v):
        return tuple(coerce(c, tower) for c in v) if isinstance(v, tuple) else coerce(v, tower)

    doc = Document(
        tower=tower,
        dim=dim,
        generator_names=tuple(gen_names),
        generators=tuple(fin(g) for g in gens),
        facets=tuple(FacetLine(fin(x), fin(lam), w) for x, lam, w, _ in facets),
        cut=CutSpec(fin(cut[0]), fin(cut[1])) if cut else None,
        blowup=BlowupLine(fin(blowup[0]), fin(blowup[1]), fin(blowup[2])) if blowup else None,
        bindings=env,
    )
    return doc


def _vec_str(v) -> str:
    if len(v) == 1:
        return f"({v[0]},)"
    return "(" + ", ".join(str(c) for c in v) + ")"


def serialize(doc: Document) -> str:
    """Canonical text for ``doc``; ``parse(serialize(doc))`` is equivalent to ``doc``."""
    out = [f"dim {doc.dim}"]
    for name, r in zip(doc.tower.names, doc.tower.radicands):
        out.append(f"sqrt {name} = {r}")
    for name, g in zip(doc.generator_names, doc.generators):
        out.append(f"generator {name} = {_vec_str(g)}")
    for f in doc.facets:
        line = f"facet {_vec_str(f.normal)} >= {f.offset}"
        if f.witness is not None:
            line += " witness (" + ", ".join(str(c) for c in f.witness) + ")"
        out.append(line)
    if doc.cut is not None:
        out.append(f"cut {_vec_str(doc.cut.direction)} at {doc.cut.level}")
    if doc.blowup is not None:
        b = doc.blowup
        out.append(f"blowup {_vec_str(b.vertex)} direction {_vec_str(b.direction)} at {b.level}")
    return "\n".join(out) + "\n"
