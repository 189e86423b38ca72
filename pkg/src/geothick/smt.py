"""External SMT solver client and a small s-expression reader."""

from __future__ import annotations

import os
import subprocess
import tempfile
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from .errors import MalformedInput, ModelRejected, SolverUnavailable


def parse_sexprs(text: str) -> list:
    """Parse SMT-LIB text into nested lists of atom strings (comments stripped)."""
    tokens: list[tuple[str, int]] = []
    i, n, line = 0, len(text), 1
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
        elif ch.isspace():
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append((ch, line))
            i += 1
        elif ch == '"':
            j = text.index('"', i + 1)
            tokens.append((text[i : j + 1], line))
            i = j + 1
        elif ch == "|":
            j = text.index("|", i + 1)
            tokens.append((text[i + 1 : j], line))
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '();"':
                j += 1
            tokens.append((text[i:j], line))
            i = j
    out: list = []
    stack: list[list] = []
    for tok, ln in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if not stack:
                raise MalformedInput("unbalanced ')'", ln)
            done = stack.pop()
            (stack[-1] if stack else out).append(done)
        else:
            (stack[-1] if stack else out).append(tok)
    if stack:
        raise MalformedInput("unbalanced '('")
    return out


def value_to_fraction(v) -> tuple[Fraction, bool]:
    """Numeric model value as (Fraction, exact).  Decimal values ending in '?' are inexact."""
    if isinstance(v, str):
        exact = not v.endswith("?")
        return Fraction(Decimal(v.rstrip("?"))), exact
    head = v[0]
    if head == "-" and len(v) == 2:
        q, ex = value_to_fraction(v[1])
        return -q, ex
    if head == "/" and len(v) == 3:
        a, e1 = value_to_fraction(v[1])
        b, e2 = value_to_fraction(v[2])
        return a / b, e1 and e2
    if head == "root-obj":
        raise ValueError("algebraic root objects need decimal model output")
    raise ValueError(f"unsupported model value {v!r}")


def parse_model(sexprs: list) -> dict[str, tuple[Fraction, bool]]:
    model: dict[str, tuple[Fraction, bool]] = {}
    for item in sexprs:
        if not isinstance(item, list):
            continue
        entries = item[1:] if item and item[0] == "model" else item
        for ent in entries:
            if isinstance(ent, list) and len(ent) == 5 and ent[0] == "define-fun" and ent[2] == []:
                model[ent[1]] = value_to_fraction(ent[4])
    return model


@dataclass
class SolverResult:
    status: str  # "sat", "unsat" or "unknown"
    model: dict[str, Fraction] = field(default_factory=dict)
    raw: str = ""


def _command(solver: str, path: str, timeout: float) -> list[str]:
    base = os.path.basename(solver)
    if base.startswith("z3"):
        ms = max(1, int(timeout * 1000))
        return [solver, "-smt2", f"-t:{ms}", "pp.decimal=true", "pp.decimal_precision=40", path]
    return [solver, path]


def _rationalize(model, formula) -> dict[str, Fraction]:
    from .etr import evaluate

    exact = {k: q for k, (q, ex) in model.items()}
    if formula is None or formula.trivially_true:
        return exact
    full = {v: exact.get(v, Fraction(0)) for v in formula.variables}
    if all(ex for _, ex in model.values()) and evaluate(formula, full):
        return full
    for bound in (10**3, 10**6, 10**9, 10**12, 10**18, 10**30):
        cand = {k: q.limit_denominator(bound) for k, q in full.items()}
        if evaluate(formula, cand):
            return cand
    raise ModelRejected("solver model fails exact re-evaluation")


def solve_external(script: str, formula=None, solver: str | None = None, timeout: float = 60.0) -> SolverResult:
    """Run an SMT solver on ``script``.

    A satisfying model is rationalized and, when ``formula`` is given, re-checked
    exactly; a model that fails the check raises ModelRejected.
    """
    if not solver:
        raise SolverUnavailable("no solver configured")
    if timeout <= 0:
        return SolverResult("unknown")
    with tempfile.NamedTemporaryFile("w", suffix=".smt2", delete=False) as fh:
        fh.write(script)
        path = fh.name
    try:
        proc = subprocess.run(
            _command(solver, path, timeout),
            capture_output=True,
            text=True,
            timeout=timeout + 5,
        )
    except FileNotFoundError as exc:
        raise SolverUnavailable(f"cannot run solver {solver!r}") from exc
    except subprocess.TimeoutExpired:
        return SolverResult("unknown")
    finally:
        os.unlink(path)
    out = proc.stdout
    first = out.strip().split("\n", 1)[0].strip() if out.strip() else ""
    if first == "unsat":
        return SolverResult("unsat", raw=out)
    if first != "sat":
        return SolverResult("unknown", raw=out)
    rest = out.strip().split("\n", 1)[1] if "\n" in out.strip() else ""
    model = parse_model(parse_sexprs(rest))
    return SolverResult("sat", _rationalize(model, formula), out)
