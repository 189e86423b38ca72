"""Polynomial encoding of layered drawings and its SMT-LIB emission.

A graph has an l-layer drawing iff the following system over positions
(x_v, y_v) and edge colors c_e is satisfiable:

* no three vertices are collinear (a 3x3 orientation determinant is nonzero),
* every color lies in 1..l,
* two vertex-disjoint edges with equal colors do not cross, i.e. one edge
  lies entirely on one side of the other's supporting line.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Union

from .drawing import Edge, Graph, LayeredDrawing
from .geometry import Point, collinear_triples_exist
from .poly import Poly


def xv(v: int) -> str:
    return f"x_{v}"


def yv(v: int) -> str:
    return f"y_{v}"


def ce(e: Edge) -> str:
    return f"c_{e[0]}_{e[1]}"


def det(i: int, j: int, k: int) -> Poly:
    """Orientation determinant of vertices i, j, k, fully expanded (degree 2)."""
    xi, yi, xj, yj, xk, yk = (Poly.var(n) for n in (xv(i), yv(i), xv(j), yv(j), xv(k), yv(k)))
    return xi * yj - xi * yk - xj * yi + xj * yk + xk * yi - xk * yj


# --- expression tree -------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class PolyAtom:
    """``prod(factors) op 0`` with op one of ``!=`` or ``>``."""

    factors: tuple[Poly, ...]
    op: str

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)


@dataclass(frozen=True)
class ColorEq:
    """Equality between a color variable and another color variable or an integer."""

    left: str
    right: Union[str, int]


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Implies:
    guard: object
    body: object


Expr = Union[Const, PolyAtom, ColorEq, Or, Implies]


@dataclass(frozen=True)
class Conjunct:
    kind: str  # "F1", "F2" or "F3"
    expr: Expr
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]


@dataclass
class Formula:
    graph: Graph
    layers: int
    variables: list[str]
    conjuncts: list[Conjunct]
    trivially_true: bool = False
    fixed: dict[str, Fraction] = field(default_factory=dict)
    real_colors: bool = False

    @property
    def color_variables(self) -> list[str]:
        return [v for v in self.variables if v.startswith("c_")]

    def atoms(self):
        for c in self.conjuncts:
            yield from _atoms(c.expr)

    def max_degree(self) -> int:
        return max((a.degree for a in self.atoms() if isinstance(a, PolyAtom)), default=0)

    def count(self, kind: str) -> int:
        return sum(1 for c in self.conjuncts if c.kind == kind)

    def decode_drawing(self, model: Mapping[str, Fraction], layers: int | None = None) -> LayeredDrawing:
        vals = dict(self.fixed)
        vals.update(model)
        g = self.graph
        gamma = {v: Point(vals.get(xv(v), Fraction(0)), vals.get(yv(v), Fraction(0))) for v in g.vertices}
        if self.trivially_true:
            chi = {e: i + 1 for i, e in enumerate(g.sorted_edges())}
        else:
            chi = {e: int(vals.get(ce(e), 1)) for e in g.edges}
        ell = layers or self.layers
        return LayeredDrawing(g, gamma, chi, max(ell, max(chi.values(), default=1)))


def _atoms(expr):
    if isinstance(expr, (PolyAtom, ColorEq)):
        yield expr
    elif isinstance(expr, Or):
        for a in expr.args:
            yield from _atoms(a)
    elif isinstance(expr, Implies):
        yield from _atoms(expr.guard)
        yield from _atoms(expr.body)


def formula_variables(g: Graph) -> list[str]:
    names = []
    for v in g.sorted_vertices():
        names += [xv(v), yv(v)]
    names += [ce(e) for e in g.sorted_edges()]
    return names


def build_formula(g: Graph, layers: int, real_colors: bool = False) -> Formula:
    """The encoding for ``layers`` layers; trivially true when layers exceed the edge count."""
    if layers < 1:
        raise ValueError("layers must be positive")
    variables = formula_variables(g)
    if layers > g.m:
        return Formula(g, layers, variables, [], trivially_true=True, real_colors=real_colors)
    conj: list[Conjunct] = []
    for i, j, k in combinations(g.sorted_vertices(), 3):
        conj.append(Conjunct("F1", PolyAtom((det(i, j, k),), "!="), (i, j, k), ()))
    es = g.sorted_edges()
    for e in es:
        conj.append(Conjunct("F2", Or(tuple(ColorEq(ce(e), c) for c in range(1, layers + 1))), (), (e,)))
    for e, f in combinations(es, 2):
        if set(e) & set(f):
            continue
        (a, b), (c, d) = e, f
        body = Or(
            (
                PolyAtom((det(a, b, c), det(a, b, d)), ">"),
                PolyAtom((det(c, d, a), det(c, d, b)), ">"),
            )
        )
        conj.append(Conjunct("F3", Implies(ColorEq(ce(e), ce(f)), body), (a, b, c, d), (e, f)))
    return Formula(g, layers, variables, conj, real_colors=real_colors)


# --- evaluation and simplification ----------------------------------------


def _eval(expr, vals: Mapping[str, Fraction]) -> bool:
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, PolyAtom):
        v = Fraction(1)
        for f in expr.factors:
            v *= f.evaluate(vals)
        return v != 0 if expr.op == "!=" else v > 0
    if isinstance(expr, ColorEq):
        r = vals[expr.right] if isinstance(expr.right, str) else expr.right
        return vals[expr.left] == r
    if isinstance(expr, Or):
        return any(_eval(a, vals) for a in expr.args)
    if isinstance(expr, Implies):
        return (not _eval(expr.guard, vals)) or _eval(expr.body, vals)
    raise TypeError(expr)


def drawing_assignment(d: LayeredDrawing) -> dict[str, Fraction]:
    vals: dict[str, Fraction] = {}
    for v, p in d.gamma.items():
        vals[xv(v)] = p.x
        vals[yv(v)] = p.y
    for e, c in d.chi.items():
        vals[ce(e)] = Fraction(c)
    return vals


def evaluate(f: Formula, assignment: Mapping[str, Fraction]) -> bool:
    """Exact truth value of the formula under a total assignment of its free variables."""
    if f.trivially_true:
        return True
    vals = dict(f.fixed)
    vals.update(assignment)
    missing = [v for v in f.variables if v not in vals]
    if missing:
        raise ValueError(f"assignment misses variables {missing[:5]}")
    if f.real_colors is False:
        for v in f.color_variables:
            if vals[v].denominator != 1 or not 1 <= vals[v] <= f.layers:
                return False
    return all(_eval(c.expr, vals) for c in f.conjuncts)


def _subst(expr, vals: Mapping[str, Fraction]):
    if isinstance(expr, Const):
        return expr
    if isinstance(expr, PolyAtom):
        factors = tuple(p.substitute(vals) for p in expr.factors)
        if all(p.is_constant() for p in factors):
            v = Fraction(1)
            for p in factors:
                v *= p.constant_value()
            return Const(v != 0 if expr.op == "!=" else v > 0)
        return PolyAtom(factors, expr.op)
    if isinstance(expr, ColorEq):
        left = vals.get(expr.left, expr.left)
        right = vals.get(expr.right, expr.right) if isinstance(expr.right, str) else expr.right
        if not isinstance(left, str) and not isinstance(right, str):
            return Const(Fraction(left) == Fraction(right))
        if not isinstance(left, str):
            left, right = right, left
        return ColorEq(left, int(right) if not isinstance(right, str) else right)
    if isinstance(expr, Or):
        args = []
        for a in expr.args:
            s = _subst(a, vals)
            if s == TRUE:
                return TRUE
            if s != FALSE:
                args.append(s)
        if not args:
            return FALSE
        return args[0] if len(args) == 1 else Or(tuple(args))
    if isinstance(expr, Implies):
        g = _subst(expr.guard, vals)
        if g == FALSE:
            return TRUE
        b = _subst(expr.body, vals)
        if b == TRUE:
            return TRUE
        if g == TRUE:
            return b
        return Implies(g, b)
    raise TypeError(expr)


def specialize_for_extension(f: Formula, inst) -> Formula:
    """Fix the predrawn positions and colors and drop conjuncts they already decide.

    Dropped: conjuncts that become variable-free, and non-crossing conjuncts
    with a single undrawn vertex whose three drawn partners are collinear.
    Remaining conjuncts are simplified with the known values substituted.
    """
    h = inst.predrawn
    known = drawing_assignment(h)
    drawn = set(h.graph.vertices)
    free_vars = [v for v in f.variables if v not in known]
    if f.trivially_true:
        return replace(f, variables=free_vars, fixed=known, conjuncts=[])
    out: list[Conjunct] = []
    for c in f.conjuncts:
        free_vertices = [v for v in c.vertices if v not in drawn]
        free_colors = [e for e in c.edges if ce(e) not in known]
        if not free_vertices and not free_colors:
            continue
        if c.kind == "F3" and len(free_vertices) == 1:
            others = [h.gamma[v] for v in c.vertices if v in drawn]
            if collinear_triples_exist(others):
                continue
        expr = _subst(c.expr, known)
        if expr == TRUE:
            continue
        out.append(Conjunct(c.kind, expr, c.vertices, c.edges))
    return replace(f, variables=free_vars, conjuncts=out, fixed=known)


# --- SMT-LIB ----------------------------------------------------------------


def _real_lit(q: Fraction):
    q = Fraction(q)
    if q.denominator == 1:
        s = f"{abs(q.numerator)}.0"
    else:
        s = ["/", f"{abs(q.numerator)}.0", f"{q.denominator}.0"]
    return ["-", s] if q < 0 else s


def _int_lit(n: int):
    return ["-", str(-n)] if n < 0 else str(n)


def poly_sexpr(p: Poly):
    if not p.terms:
        return "0.0"
    terms = []
    for mono in sorted(p.terms):
        coef = p.terms[mono]
        factors = []
        for v, k in mono:
            factors += [v] * k
        if not factors:
            terms.append(_real_lit(coef))
        elif coef == 1:
            terms.append(factors[0] if len(factors) == 1 else ["*"] + factors)
        else:
            terms.append(["*", _real_lit(coef)] + factors)
    return terms[0] if len(terms) == 1 else ["+"] + terms


def expr_sexpr(expr, real_colors: bool):
    if isinstance(expr, Const):
        return "true" if expr.value else "false"
    if isinstance(expr, PolyAtom):
        body = poly_sexpr(expr.factors[0]) if len(expr.factors) == 1 else ["*"] + [poly_sexpr(p) for p in expr.factors]
        if expr.op == "!=":
            return ["not", ["=", body, "0.0"]]
        return [">", body, "0.0"]
    if isinstance(expr, ColorEq):
        r = expr.right
        if not isinstance(r, str):
            r = _real_lit(Fraction(r)) if real_colors else _int_lit(r)
        return ["=", expr.left, r]
    if isinstance(expr, Or):
        return ["or"] + [expr_sexpr(a, real_colors) for a in expr.args]
    if isinstance(expr, Implies):
        return ["=>", expr_sexpr(expr.guard, real_colors), expr_sexpr(expr.body, real_colors)]
    raise TypeError(expr)


def formula_sexprs(f: Formula) -> list:
    logic = "QF_NRA" if f.real_colors else "QF_NIRA"
    cmds: list = [["set-logic", logic], ["set-option", ":produce-models", "true"]]
    for v in f.variables:
        sort = "Int" if v.startswith("c_") and not f.real_colors else "Real"
        cmds.append(["declare-const", v, sort])
    if f.trivially_true:
        cmds.append(["assert", "true"])
    else:
        if not f.real_colors:
            for v in f.color_variables:
                cmds.append(["assert", ["and", ["<=", "1", v], ["<=", v, str(f.layers)]]])
        for c in f.conjuncts:
            cmds.append(["assert", expr_sexpr(c.expr, f.real_colors)])
        if not f.conjuncts and not f.color_variables:
            cmds.append(["assert", "true"])
    cmds += [["check-sat"], ["get-model"], ["exit"]]
    return cmds


def sexpr_text(s) -> str:
    if isinstance(s, str):
        return s
    return "(" + " ".join(sexpr_text(x) for x in s) + ")"


def emit_smtlib(f: Formula) -> str:
    """SMT-LIB v2 script; identical formulas give identical bytes."""
    return "".join(sexpr_text(c) + "\n" for c in formula_sexprs(f))
