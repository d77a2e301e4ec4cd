"""One-variable math expressions: parse, print, and evaluate with derivatives.

Grammar (whitespace insignificant, identifiers case-sensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?          # right-associative
    atom   := NUMBER | 'x' | 'pi' | 'e' | NAME '(' expr ')' | '(' expr ')'

NUMBER accepts decimal and scientific notation.  The builtin function set is
closed: sin cos tan asin acos atan exp ln lg sqrt cbrt abs sinh cosh tanh
asinh acosh atanh Phi.  `lg` is log base 10, `ln` natural; a bare `log` is
rejected so callers must pick one.

Evaluation returns the value and the first derivative together, propagated
by forward-mode dual arithmetic through the tree.  Domain problems (lg of a
non-positive, asin outside [-1,1], overflow, ...) are reported on the result,
never raised.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import ParseError

__all__ = [
    "Expression",
    "EvalResult",
    "parse",
    "evaluate",
    "eval_value",
    "print_expr",
    "negated",
    "reflected_arg",
    "shifted",
    "BUILTINS",
    "CONSTANTS",
]

CONSTANTS = {"pi": math.pi, "e": math.e}


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"


Node = Union[Num, Var, Const, Neg, Bin, Call]


@dataclass(frozen=True)
class Expression:
    """A parsed one-variable function f(x)."""

    root: Node
    source_text: str = field(compare=False, default="")

    def eval(self, x: float) -> "EvalResult":
        return evaluate(self, x)

    def value(self, x: float) -> float:
        return eval_value(self, x)

    def __str__(self) -> str:
        return print_expr(self)


@dataclass(frozen=True)
class EvalResult:
    """f(x) and f'(x) at one point; `error` explains any domain problem."""

    value: float
    derivative: float
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def has_value(self) -> bool:
        """True when the value part is usable even if the slope blew up."""
        return math.isfinite(self.value)


# ---------------------------------------------------------------------------
# Tokenizer / parser

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            # skip leading whitespace before reporting
            stripped = pos
            while stripped < n and text[stripped].isspace():
                stripped += 1
            if stripped >= n:
                break
            raise ParseError(f"unexpected character {text[stripped]!r}", stripped)
        kind = m.lastgroup
        value = m.group(kind)
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, offset = self.peek()
        if kind == "op" and value == op:
            return self.advance()
        raise ParseError(f"expected {op!r}", offset)

    def parse(self) -> Node:
        node = self.expr()
        kind, value, offset = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", offset)
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                node = Bin(value, node, self.term())
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.advance()
                node = Bin(value, node, self.factor())
            else:
                return node

    def factor(self) -> Node:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            return Bin("^", base, self.factor())
        return base

    def atom(self) -> Node:
        kind, value, offset = self.advance()
        if kind == "num":
            return Num(float(value))
        if kind == "name":
            if value == "x":
                return Var()
            if value in CONSTANTS:
                nkind, nvalue, noffset = self.peek()
                if nkind == "op" and nvalue == "(":
                    raise ParseError(f"{value!r} is a constant, not a function", noffset)
                return Const(value)
            if value in BUILTINS:
                self.expect_op("(")
                arg = self.expr()
                akind, avalue, aoffset = self.peek()
                if akind == "op" and avalue == ")":
                    self.advance()
                    return Call(value, arg)
                raise ParseError(
                    f"{value} takes exactly one argument; expected ')'", aoffset
                )
            if value == "log":
                raise ParseError(
                    "unknown identifier 'log'; use lg (base 10) or ln (natural)", offset
                )
            raise ParseError(f"unknown identifier {value!r}", offset)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "end":
            raise ParseError("unexpected end of input; expected a value", offset)
        raise ParseError(f"unexpected {value!r}", offset)


def parse(text: str) -> Expression:
    """Parse expression text into an Expression, or raise ParseError."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return Expression(_Parser(text).parse(), text)


# ---------------------------------------------------------------------------
# Printer

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node: Node) -> int:
    if isinstance(node, Bin):
        return _PREC_POW if node.op == "^" else (_PREC_MUL if node.op in "*/" else _PREC_ADD)
    if isinstance(node, Neg):
        return _PREC_NEG
    return _PREC_ATOM


def _fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _unparse(node: Node) -> str:
    if isinstance(node, Num):
        return _fmt_number(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Call):
        return f"{node.name}({_unparse(node.arg)})"
    if isinstance(node, Neg):
        inner = _unparse(node.operand)
        if _prec(node.operand) < _PREC_NEG or isinstance(node.operand, Neg):
            inner = f"({inner})"
        return f"-{inner}"
    assert isinstance(node, Bin)
    left, right = _unparse(node.left), _unparse(node.right)
    if node.op == "^":
        if _prec(node.left) < _PREC_ATOM:
            left = f"({left})"
        if _prec(node.right) < _PREC_NEG:
            right = f"({right})"
    else:
        own = _prec(node)
        if _prec(node.left) < own:
            left = f"({left})"
        if _prec(node.right) <= own:
            right = f"({right})"
    return f"{left}{node.op}{right}"


def print_expr(e: Expression) -> str:
    """Canonical text form; parse(print_expr(e)) is structurally equal to e."""
    return _unparse(e.root)


# ---------------------------------------------------------------------------
# Construction helpers used by the scale transforms


def _collapse_neg(node: Node) -> Node:
    if isinstance(node, Neg):
        return node.operand
    return Neg(node)


def negated(e: Expression) -> Expression:
    """The expression -f(x); a leading negation cancels instead of stacking."""
    root = _collapse_neg(e.root)
    return Expression(root, _unparse(root))


def _subst_neg_x(node: Node) -> Node:
    if isinstance(node, Var):
        return Neg(Var())
    if isinstance(node, Neg):
        inner = _subst_neg_x(node.operand)
        if isinstance(inner, Neg):
            return inner.operand
        return Neg(inner)
    if isinstance(node, Bin):
        return Bin(node.op, _subst_neg_x(node.left), _subst_neg_x(node.right))
    if isinstance(node, Call):
        return Call(node.name, _subst_neg_x(node.arg))
    return node


def reflected_arg(e: Expression) -> Expression:
    """The expression f(-x)."""
    root = _subst_neg_x(e.root)
    return Expression(root, _unparse(root))


def shifted(e: Expression, v: float) -> Expression:
    """The expression f(x) + v."""
    if v == 0:
        return e
    root = Bin("-", e.root, Num(-v)) if v < 0 else Bin("+", e.root, Num(v))
    return Expression(root, _unparse(root))


# ---------------------------------------------------------------------------
# Dual-number evaluation


class _Domain(Exception):
    pass


_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _cbrt(u: float) -> float:
    if u == 0.0 or math.isinf(u):
        return u
    y = abs(u) ** (1.0 / 3.0)
    # one Newton step tightens pow() to machine accuracy
    y -= (y * y * y - abs(u)) / (3.0 * y * y)
    return math.copysign(y, u)


def _safe_div(num: float, den: float) -> float:
    if den == 0.0:
        if num == 0.0:
            return math.nan
        return math.copysign(math.inf, num)
    return num / den


def _dual_sin(v, d):
    return math.sin(v), math.cos(v) * d


def _dual_cos(v, d):
    return math.cos(v), -math.sin(v) * d


def _dual_tan(v, d):
    t = math.tan(v)
    return t, (1.0 + t * t) * d


def _dual_asin(v, d):
    if v < -1.0 or v > 1.0:
        raise _Domain("asin of a value outside [-1, 1]")
    return math.asin(v), _safe_div(d, math.sqrt(1.0 - v * v))


def _dual_acos(v, d):
    if v < -1.0 or v > 1.0:
        raise _Domain("acos of a value outside [-1, 1]")
    return math.acos(v), _safe_div(-d, math.sqrt(1.0 - v * v))


def _dual_atan(v, d):
    return math.atan(v), d / (1.0 + v * v)


def _dual_exp(v, d):
    y = math.exp(v)
    return y, y * d


def _dual_ln(v, d):
    if v <= 0.0:
        raise _Domain("ln of a non-positive value")
    return math.log(v), d / v


_LN10 = math.log(10.0)


def _dual_lg(v, d):
    if v <= 0.0:
        raise _Domain("lg of a non-positive value")
    return math.log10(v), d / (v * _LN10)


def _dual_sqrt(v, d):
    if v < 0.0:
        raise _Domain("sqrt of a negative value")
    r = math.sqrt(v)
    return r, _safe_div(d, 2.0 * r)


def _dual_cbrt(v, d):
    r = _cbrt(v)
    return r, _safe_div(d, 3.0 * r * r)


def _dual_abs(v, d):
    if v > 0.0:
        return v, d
    if v < 0.0:
        return -v, -d
    return 0.0, math.nan


def _dual_sinh(v, d):
    return math.sinh(v), math.cosh(v) * d


def _dual_cosh(v, d):
    return math.cosh(v), math.sinh(v) * d


def _dual_tanh(v, d):
    t = math.tanh(v)
    return t, (1.0 - t * t) * d


def _dual_asinh(v, d):
    return math.asinh(v), d / math.sqrt(v * v + 1.0)


def _dual_acosh(v, d):
    if v < 1.0:
        raise _Domain("acosh of a value below 1")
    return math.acosh(v), _safe_div(d, math.sqrt(v * v - 1.0))


def _dual_atanh(v, d):
    if v <= -1.0 or v >= 1.0:
        raise _Domain("atanh of a value outside (-1, 1)")
    return math.atanh(v), d / (1.0 - v * v)


def _dual_phi(v, d):
    # Phi(-x) = 1 - Phi(x) holds to rounding because erf is odd
    y = 0.5 * (1.0 + math.erf(v / _SQRT2))
    return y, math.exp(-0.5 * v * v) * _INV_SQRT_2PI * d


BUILTINS = {
    "sin": _dual_sin,
    "cos": _dual_cos,
    "tan": _dual_tan,
    "asin": _dual_asin,
    "acos": _dual_acos,
    "atan": _dual_atan,
    "exp": _dual_exp,
    "ln": _dual_ln,
    "lg": _dual_lg,
    "sqrt": _dual_sqrt,
    "cbrt": _dual_cbrt,
    "abs": _dual_abs,
    "sinh": _dual_sinh,
    "cosh": _dual_cosh,
    "tanh": _dual_tanh,
    "asinh": _dual_asinh,
    "acosh": _dual_acosh,
    "atanh": _dual_atanh,
    "Phi": _dual_phi,
}


def _dual_pow(bv, bd, ev, ed):
    if ed == 0.0 and ev == int(ev) and abs(ev) < 2**53:
        n = ev
        if bv == 0.0:
            if n > 0.0:
                val = 0.0
                if n == 1.0:
                    return val, bd
                return val, 0.0 if n > 1.0 else math.copysign(math.inf, bd)
            if n == 0.0:
                return 1.0, 0.0
            raise _Domain("0 raised to a negative power")
        val = bv**n
        return val, n * bv ** (n - 1.0) * bd
    if bv > 0.0:
        lnb = math.log(bv)
        val = math.exp(ev * lnb)
        return val, val * (ed * lnb + ev * bd / bv)
    if bv == 0.0:
        if ev > 0.0:
            return 0.0, _safe_div(bd * ev, bv ** (1.0 - ev)) if ev < 1.0 else 0.0
        raise _Domain("0 raised to a non-positive power")
    raise _Domain("negative base with a non-integer exponent")


def _eval_dual(node: Node, x: float):
    if isinstance(node, Var):
        return x, 1.0
    if isinstance(node, Num):
        return node.value, 0.0
    if isinstance(node, Const):
        return CONSTANTS[node.name], 0.0
    if isinstance(node, Bin):
        lv, ld = _eval_dual(node.left, x)
        op = node.op
        if op == "+":
            rv, rd = _eval_dual(node.right, x)
            return lv + rv, ld + rd
        if op == "-":
            rv, rd = _eval_dual(node.right, x)
            return lv - rv, ld - rd
        if op == "*":
            rv, rd = _eval_dual(node.right, x)
            return lv * rv, ld * rv + lv * rd
        if op == "/":
            rv, rd = _eval_dual(node.right, x)
            if rv == 0.0:
                raise _Domain("division by zero")
            return lv / rv, (ld * rv - lv * rd) / (rv * rv)
        rv, rd = _eval_dual(node.right, x)
        return _dual_pow(lv, ld, rv, rd)
    if isinstance(node, Call):
        av, ad = _eval_dual(node.arg, x)
        return BUILTINS[node.name](av, ad)
    assert isinstance(node, Neg)
    v, d = _eval_dual(node.operand, x)
    return -v, -d


def evaluate(e: Expression, x: float) -> EvalResult:
    """f(x) and f'(x) together; domain trouble lands in `error`, not a raise."""
    try:
        v, d = _eval_dual(e.root, x)
    except _Domain as exc:
        return EvalResult(math.nan, math.nan, str(exc))
    except (OverflowError, ValueError):
        return EvalResult(math.nan, math.nan, "overflow to non-finite")
    if not math.isfinite(v):
        return EvalResult(v, d, "non-finite value")
    if not math.isfinite(d):
        return EvalResult(v, d, "non-finite derivative")
    return EvalResult(v, d, None)


_VALUE_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "atan": math.atan,
    "exp": math.exp,
    "cbrt": _cbrt,
    "abs": abs,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "asinh": math.asinh,
}


def _eval_val(node: Node, x: float) -> float:
    if isinstance(node, Var):
        return x
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Bin):
        lv = _eval_val(node.left, x)
        op = node.op
        rv = _eval_val(node.right, x)
        if op == "+":
            return lv + rv
        if op == "-":
            return lv - rv
        if op == "*":
            return lv * rv
        if op == "/":
            if rv == 0.0:
                raise _Domain("division by zero")
            return lv / rv
        v, _ = _dual_pow(lv, 0.0, rv, 0.0)
        return v
    if isinstance(node, Call):
        av = _eval_val(node.arg, x)
        fn = _VALUE_FUNCS.get(node.name)
        if fn is not None:
            return fn(av)
        v, _ = BUILTINS[node.name](av, 0.0)
        return v
    assert isinstance(node, Neg)
    return -_eval_val(node.operand, x)


def eval_value(e: Expression, x: float) -> float:
    """Value-only fast path; NaN marks any domain problem or overflow."""
    try:
        v = _eval_val(e.root, x)
    except (_Domain, OverflowError, ValueError):
        return math.nan
    return v if math.isfinite(v) else math.nan
