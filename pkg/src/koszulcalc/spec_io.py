"""The algebra description file format: parsing, validation, emission.

A description is a small line-oriented tree: one directive per line,
``#`` starts a comment.  Two shapes are accepted:

    field Q              # or: field Fp 5
    weight 6
    preset symmetric 3   # symmetric n | exterior n | preprojective u-v ...

or an explicit presentation:

    field Q
    weight 4
    vertices u v
    arrow a u v
    arrow b v u
    relation 1 a.b - 2/3 b.a

Relation terms are an exact coefficient (decimal integer or fraction
``num/den``) followed by a length-2 path written in product order:
``a.b`` is the product a.b and needs source(a) = target(b).  Every term
of one relation must live in a single (target, source) vertex block.

`emit_spec(parse_spec(text))` is the canonical form; reports digest it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import BlockMismatch, QuadraticAlgebra, RelationSpace, build_algebra, \
    exterior_preset, preprojective_preset, symmetric_preset
from .fields import Field, field_from_name
from .quiver import PathBasis, Quiver

__all__ = ["SpecError", "AlgebraSpec", "parse_spec", "emit_spec"]


class SpecError(Exception):
    """A positioned parse or validation error in an algebra description."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass
class AlgebraSpec:
    field_desc: str = "Q"
    weight: int | None = None
    preset: tuple | None = None  # ("symmetric", n) | ("exterior", n) | ("preprojective", edges)
    vertices: list = dc_field(default_factory=list)
    arrows: list = dc_field(default_factory=list)  # (name, src, tgt)
    relations: list = dc_field(default_factory=list)  # list of [(coeff_str, (a, b))]

    def field(self) -> Field:
        return field_from_name(self.field_desc)

    def build(self) -> QuadraticAlgebra:
        """Construct the described algebra (loudly on any inconsistency)."""
        fld = self.field()
        if self.weight is None:
            raise SpecError("missing 'weight' directive", 0)
        if self.preset is not None:
            kind = self.preset[0]
            if kind == "symmetric":
                q, r = symmetric_preset(self.preset[1], fld)
            elif kind == "exterior":
                q, r = exterior_preset(self.preset[1], fld)
            elif kind == "preprojective":
                q, r = preprojective_preset(self.preset[1], fld)
            else:
                raise SpecError(f"unknown preset {kind!r}", 0)
            return build_algebra(q, r, self.weight, preset=self.preset)
        quiver = Quiver(self.vertices, self.arrows)
        paths2 = PathBasis(quiver, 2)
        vectors = []
        for terms in self.relations:
            vec: dict = {}
            for coeff_str, (a, b) in terms:
                ia = quiver.arrow_index[a]
                ib = quiver.arrow_index[b]
                k = paths2.index.get((ia, ib))
                if k is None:
                    raise SpecError(
                        f"path {a}.{b} is not composable "
                        f"(source({a}) != target({b}))", 0)
                c = fld.parse(coeff_str)
                if k in vec:
                    vec[k] = fld.add(vec[k], c)
                else:
                    vec[k] = c
            vectors.append({k: v for k, v in vec.items() if v})
        try:
            rel = RelationSpace(quiver, vectors, fld)
        except BlockMismatch as exc:
            raise SpecError(str(exc), 0) from exc
        return build_algebra(quiver, rel, self.weight, preset=None)


def parse_spec(text: str) -> AlgebraSpec:
    spec = AlgebraSpec()
    seen_arrows = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        col = line.index(tokens[0]) + 1
        head, args = tokens[0], tokens[1:]
        if head == "field":
            if args == ["Q"]:
                spec.field_desc = "Q"
            elif len(args) == 2 and args[0] == "Fp":
                try:
                    spec.field_desc = f"Fp:{int(args[1])}"
                    field_from_name(spec.field_desc)
                except ValueError as exc:
                    raise SpecError(str(exc), lineno, col) from exc
            else:
                raise SpecError("expected 'field Q' or 'field Fp <prime>'",
                                lineno, col)
        elif head == "weight":
            if len(args) != 1 or not args[0].isdigit():
                raise SpecError("expected 'weight <integer>'", lineno, col)
            spec.weight = int(args[0])
        elif head == "preset":
            spec.preset = _parse_preset(args, lineno, col)
        elif head == "vertices":
            if not args:
                raise SpecError("expected at least one vertex name", lineno, col)
            spec.vertices = list(args)
        elif head == "arrow":
            if len(args) != 3:
                raise SpecError("expected 'arrow <name> <src> <tgt>'", lineno, col)
            name, src, tgt = args
            if name in seen_arrows:
                raise SpecError(f"duplicate arrow {name!r}", lineno, col)
            if src not in spec.vertices or tgt not in spec.vertices:
                raise SpecError(f"arrow {name!r} references unknown vertex",
                                lineno, col)
            seen_arrows.add(name)
            spec.arrows.append((name, src, tgt))
        elif head == "relation":
            spec.relations.append(_parse_relation(args, seen_arrows, lineno, line))
        else:
            raise SpecError(f"unknown directive {head!r}", lineno, col)
    if spec.weight is None:
        raise SpecError("missing 'weight' directive", max(1, text.count("\n") + 1))
    if spec.preset is None and not spec.arrows:
        raise SpecError("description needs a preset or an explicit quiver",
                        max(1, text.count("\n") + 1))
    return spec


def _parse_preset(args, lineno, col):
    if not args:
        raise SpecError("expected a preset name", lineno, col)
    kind = args[0]
    if kind in ("symmetric", "exterior"):
        if len(args) != 2 or not args[1].isdigit() or int(args[1]) < 1:
            raise SpecError(f"expected 'preset {kind} <n>=1..'", lineno, col)
        return (kind, int(args[1]))
    if kind == "preprojective":
        if len(args) < 2:
            raise SpecError("expected 'preset preprojective <u-v> ...'",
                            lineno, col)
        edges = []
        for tok in args[1:]:
            if "-" not in tok:
                raise SpecError(f"edge {tok!r} is not of the form u-v",
                                lineno, col)
            u, _, v = tok.partition("-")
            if not u or not v or u == v:
                raise SpecError(f"bad edge {tok!r}", lineno, col)
            edges.append((u, v))
        return ("preprojective", tuple(edges))
    raise SpecError(f"unknown preset {kind!r}", lineno, col)


def _parse_relation(args, seen_arrows, lineno, line):
    """Terms: coeff path [(+|-) coeff path]...; paths have length exactly 2."""
    if not args:
        raise SpecError("empty relation", lineno, 1)
    terms = []
    sign = 1
    i = 0
    expect_term = True
    while i < len(args):
        tok = args[i]
        if tok in ("+", "-"):
            if expect_term and terms:
                raise SpecError("two consecutive operators", lineno,
                                line.index(tok) + 1)
            sign = 1 if tok == "+" else -1
            expect_term = True
            i += 1
            continue
        coeff = tok
        col = line.index(tok) + 1
        if not _is_coeff(coeff):
            raise SpecError(f"expected an exact coefficient, got {coeff!r}",
                            lineno, col)
        if i + 1 >= len(args):
            raise SpecError("coefficient without a path", lineno, col)
        path = args[i + 1]
        parts = path.split(".")
        if len(parts) != 2:
            raise SpecError(
                f"relation paths must have length exactly 2, got {path!r}",
                lineno, line.index(path) + 1)
        for part in parts:
            if part not in seen_arrows:
                raise SpecError(f"unknown arrow {part!r}", lineno,
                                line.index(path) + 1)
        text = coeff if sign > 0 else _negate_coeff(coeff)
        terms.append((text, (parts[0], parts[1])))
        sign = 1
        expect_term = False
        i += 2
    if expect_term:
        raise SpecError("relation ends with an operator", lineno, len(line))
    return terms


def _is_coeff(tok: str) -> bool:
    body = tok[1:] if tok[:1] in "+-" else tok
    if "/" in body:
        num, _, den = body.partition("/")
        return num.isdigit() and den.isdigit() and int(den) != 0
    return body.isdigit()


def _negate_coeff(tok: str) -> str:
    if tok.startswith("-"):
        return tok[1:]
    if tok.startswith("+"):
        return "-" + tok[1:]
    return "-" + tok


def emit_spec(spec: AlgebraSpec) -> str:
    """Canonical text form; parsing it back is semantically identical."""
    lines = []
    if spec.field_desc == "Q":
        lines.append("field Q")
    else:
        lines.append(f"field Fp {spec.field_desc.split(':')[1]}")
    lines.append(f"weight {spec.weight}")
    if spec.preset is not None:
        kind = spec.preset[0]
        if kind == "preprojective":
            edges = " ".join(f"{u}-{v}" for u, v in spec.preset[1])
            lines.append(f"preset preprojective {edges}")
        else:
            lines.append(f"preset {kind} {spec.preset[1]}")
    else:
        lines.append("vertices " + " ".join(spec.vertices))
        for name, src, tgt in spec.arrows:
            lines.append(f"arrow {name} {src} {tgt}")
        for terms in spec.relations:
            parts = []
            for k, (coeff, (a, b)) in enumerate(terms):
                if coeff.startswith("-"):
                    op = "-" if k else ""
                    body = coeff[1:] if k else coeff
                else:
                    op = "+" if k else ""
                    body = coeff
                if op:
                    parts.append(op)
                parts.append(f"{body} {a}.{b}")
            lines.append("relation " + " ".join(parts))
    return "\n".join(lines) + "\n"
