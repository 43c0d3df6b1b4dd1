"""Text form of scalar fields.

Grammar: rationals, coordinates (``x y z`` or ``x1 .. xn``), ``sin(...)`` and
``cos(...)`` of a linear combination of coordinates with half-integer
coefficients, ``+ - * /`` (division only by constants) and ``^`` (or ``**``)
with a nonnegative integer exponent.  Coordinates appear bare only on R^n;
trig functions only on T^n.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction

from dirac.symcalc.ring import Domain, ScalarField


class ExpressionError(ValueError):
    pass


def _variable_index(name: str, domain: Domain) -> int:
    if domain.n <= 3 and name in ("x", "y", "z")[: domain.n]:
        return ("x", "y", "z").index(name)
    m = re.fullmatch(r"x([1-9][0-9]*)", name)
    if m and int(m.group(1)) <= domain.n:
        return int(m.group(1)) - 1
    raise ExpressionError(f"unknown symbol {name!r} on {domain}")


def _linear_argument(node: ast.AST, domain: Domain) -> tuple[Fraction, ...]:
    # parse the argument as a polynomial on R^n and insist it is k.x
    aff = Domain("affine", domain.n)
    f = _build(node, aff)
    freq = [Fraction(0)] * domain.n
    for key, c in f.terms.items():
        if sum(key) != 1:
            raise ExpressionError("trigonometric arguments must be linear in the coordinates with no constant term")
        freq[key.index(1)] = c
    for k in freq:
        if (2 * k).denominator != 1:
            raise ExpressionError(f"frequency {k} is not a half-integer")
    return tuple(freq)


def _build(node: ast.AST, domain: Domain) -> ScalarField:
    if isinstance(node, ast.Expression):
        return _build(node.body, domain)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ExpressionError(f"only integer literals are allowed, got {node.value!r}")
        return ScalarField.constant(domain, node.value)
    if isinstance(node, ast.Name):
        i = _variable_index(node.id, domain)
        if domain.is_torus:
            raise ExpressionError(f"bare coordinate {node.id!r} is not periodic; use sin/cos on the torus")
        return ScalarField.coordinate(domain, i)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _build(node.operand, domain)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _build(node.left, domain)
        right = _build(node.right, domain)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant or right.is_zero:
                raise ExpressionError("division only by nonzero constants")
            return left * (1 / right.constant_value())
        if isinstance(node.op, ast.Pow):
            if not right.is_constant:
                raise ExpressionError("exponents must be constant")
            e = right.constant_value()
            if e.denominator != 1 or e < 0:
                raise ExpressionError("exponents must be nonnegative integers")
            return left ** int(e)
        raise ExpressionError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in ("sin", "cos"):
        if not domain.is_torus:
            raise ExpressionError(f"{node.func.id} is only available on the torus")
        if len(node.args) != 1 or node.keywords:
            raise ExpressionError(f"{node.func.id} takes one argument")
        freq = _linear_argument(node.args[0], domain)
        return getattr(ScalarField, node.func.id)(domain, freq)
    raise ExpressionError(f"unsupported expression element {ast.dump(node)[:40]}")


def parse_scalar(text: str, domain: Domain) -> ScalarField:
    if not isinstance(text, str):
        raise ExpressionError(f"expected an expression string, got {type(text).__name__}")
    src = text.replace("^", "**").replace("−", "-").strip()
    if not src:
        raise ExpressionError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"syntax error in {text!r}") from exc
    return _build(tree, domain)


def _fmt_rat(c: Fraction) -> str:
    return str(c)


def _join(terms: list[tuple[Fraction, str]]) -> str:
    """Join (coefficient, monomial) pairs, monomial '' meaning 1."""
    out = []
    for c, mono in terms:
        mag = abs(c)
        if mono == "":
            body = _fmt_rat(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_rat(mag)}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out) if out else "0"


def _fmt_monomial(key: tuple[int, ...], labels) -> str:
    parts = []
    for name, e in zip(labels, key):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _fmt_argument(key2: tuple[int, ...], labels) -> str:
    terms = []
    for name, k2 in zip(labels, key2):
        if not k2:
            continue
        k = Fraction(k2, 2)
        mag = abs(k)
        if mag == 1:
            body = name
        elif mag.denominator == 1:
            body = f"{mag.numerator}*{name}"
        elif mag.numerator == 1:
            body = f"{name}/{mag.denominator}"
        else:
            body = f"{mag.numerator}*{name}/{mag.denominator}"
        terms.append((k < 0, body))
    out = ""
    for i, (neg, body) in enumerate(terms):
        if i == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def format_scalar(f: ScalarField) -> str:
    labels = f.domain.labels
    if not f.domain.is_torus:
        # highest total degree first, then lexicographic
        keys = sorted(f.terms, key=lambda k: (-sum(k), tuple(-e for e in k)))
        return _join([(f.terms[k], _fmt_monomial(k, labels)) for k in keys])
    terms: list[tuple[Fraction, str]] = []
    const = f.terms.get((0,) * f.domain.n)
    if const is not None and const.re:
        terms.append((const.re, ""))
    # c e^{ikx} + conj(c) e^{-ikx} = 2 Re c cos(kx) - 2 Im c sin(kx); k with first nonzero entry > 0
    reps = [k for k in f.terms if any(k) and next(e for e in k if e) > 0]
    reps.sort(key=lambda k: (max(abs(e) for e in k), tuple(-abs(e) for e in k), tuple(-e for e in k)))
    for k in reps:
        c = f.terms[k]
        arg = _fmt_argument(k, labels)
        if c.re:
            terms.append((2 * c.re, f"cos({arg})"))
        if c.im:
            terms.append((-2 * c.im, f"sin({arg})"))
    return _join(terms)


def format_vector_field(comps, labels) -> str:
    return _format_combination(comps, [f"∂{s}" for s in labels])


def format_one_form(comps, labels) -> str:
    return _format_combination(comps, [f"d{s}" for s in labels])


def _format_combination(comps, names) -> str:
    out = []
    for f, name in zip(comps, names):
        if f.is_zero:
            continue
        text = format_scalar(f)
        single = len(f.terms) == 1 and (not f.domain.is_torus or f.is_constant) or (
            f.domain.is_torus and len(f.terms) == 2 and not f.is_constant and _single_trig(f)
        )
        if text == "1":
            body, neg = name, False
        elif text == "-1":
            body, neg = name, True
        elif single:
            neg = text.startswith("-")
            body = f"{text.lstrip('-')}*{name}"
        else:
            neg = False
            body = f"({text})*{name}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def _single_trig(f: ScalarField) -> bool:
    (k, c), _ = f.terms.items()
    return not (c.re and c.im)


def format_gsection(vec_comps, form_comps, labels) -> str:
    v = format_vector_field(vec_comps, labels)
    w = format_one_form(form_comps, labels)
    if v == "0":
        return w
    if w == "0":
        return v
    return f"{v} + {w}" if not w.startswith("-") else f"{v} - {w[1:]}"


__all__ = [
    "ExpressionError",
    "parse_scalar",
    "format_scalar",
    "format_vector_field",
    "format_one_form",
    "format_gsection",
]
