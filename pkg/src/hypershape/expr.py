"""Expression parser and evaluator for coordinate functions.

Grammar (EBNF, whitespace between tokens ignored)::

    expr     = term { ("+" | "-") term } ;
    term     = unary { ("*" | "/") unary } ;
    unary    = "-" unary | power ;
    power    = primary [ "^" exponent ] ;
    exponent = "-" exponent | power ;          (* must be constant *)
    primary  = number | "pi" | variable
             | func "(" expr ")" | "(" expr ")" ;
    func     = "sin" | "cos" | "tan" | "exp" | "log" | "sqrt" ;
    variable = "u" | "v" | "w"                 (* parametric mode *)
             | "x" | "y" | "z" | "t" ;         (* implicit mode *)
    number   = digits [ "." [ digits ] ] [ exponent-part ]
             | "." digits [ exponent-part ] ;

``^`` binds tighter than unary minus, so ``-u^2`` is ``-(u^2)``; it is
right-associative.  Exponents are folded to a number at parse time.
Multiplication is never implicit.
"""
import math
import re
from dataclasses import dataclass

import numpy as np

from . import jet as J
from .errors import DomainError, NonConstantExponent, ParseError, UnknownIdentifier, WrongModeVariable

PARAMETRIC = "parametric"
IMPLICIT = "implicit"
MODE_VARIABLES = {
    PARAMETRIC: ("u", "v", "w"),
    IMPLICIT: ("x", "y", "z", "t"),
}
FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt")
# integer exponents up to this size are expanded into repeated products
MAX_INT_POWER = 64


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    child: object


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    child: object


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def tokenize(text):
    """Return a list of (kind, text, byte_offset) ending with an 'end' token."""
    tokens = []
    pos = 0
    raw = text.encode("utf-8")
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            offset = len(text[:pos].encode("utf-8"))
            raise ParseError(f"unexpected character {text[pos]!r}", offset)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), len(text[:pos].encode("utf-8"))))
        pos = m.end()
    tokens.append(("end", "", len(raw)))
    return tokens


class _Parser:
    def __init__(self, text, mode):
        if mode not in MODE_VARIABLES:
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        kind, tok, offset = self.advance()
        if kind != "op" or tok != text:
            what = "end of input" if kind == "end" else repr(tok)
            raise ParseError(f"expected {text!r}, found {what}", offset)

    def parse(self):
        node = self.expr()
        kind, tok, offset = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {tok!r}", offset)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = Binary(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = Binary(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Unary("-", self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            offset = self.peek()[2]
            exponent = self.exponent()
            if free_variables(exponent):
                raise NonConstantExponent("exponent must be a constant", offset)
            return Binary("^", base, Const(float(eval_scalar(exponent, {}))))
        return base

    def exponent(self):
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Unary("-", self.exponent())
        return self.power()

    def primary(self):
        kind, tok, offset = self.advance()
        if kind == "number":
            value = float(tok)
            if not math.isfinite(value):
                raise ParseError(f"number {tok!r} is out of range", offset)
            return Const(value)
        if kind == "name":
            if tok == "pi":
                return Const(math.pi)
            if tok in FUNCTIONS:
                self.expect("(")
                child = self.expr()
                self.expect(")")
                return Call(tok, child)
            if tok in MODE_VARIABLES[self.mode]:
                return Var(tok)
            for other, names in MODE_VARIABLES.items():
                if tok in names:
                    raise WrongModeVariable(f"variable {tok!r} belongs to {other} mode, not {self.mode}", offset)
            raise UnknownIdentifier(f"unknown identifier {tok!r}", offset)
        if (kind, tok) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(tok)
        raise ParseError(f"unexpected {what}", offset)


def parse(text, mode=PARAMETRIC):
    """Parse ``text`` into an expression tree.

    Raises :class:`ParseError` (or a subclass) carrying the byte offset of
    the offending token.
    """
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text, mode).parse()


def free_variables(e):
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Const):
        return set()
    if isinstance(e, (Unary, Call)):
        return free_variables(e.child)
    return free_variables(e.left) | free_variables(e.right)


def to_text(e):
    """Fully parenthesised text that parses back to an identical tree."""
    if isinstance(e, Const):
        if e.value < 0:
            return f"-{-e.value!r}"
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        return f"(-{to_text(e.child)})"
    if isinstance(e, Call):
        return f"{e.func}({to_text(e.child)})"
    return f"({to_text(e.left)} {e.op} {to_text(e.right)})"


# ---------------------------------------------------------------- evaluation
#
# eval_scalar and eval_jet perform the same floating-point operations on the
# value channel, so eval_jet(e).val == eval_scalar(e) bit for bit.


def _int_power(x, n, one, mul, recip):
    if n == 0:
        return one
    result = x
    for _ in range(abs(n) - 1):
        result = mul(result, x)
    return recip(result) if n < 0 else result


def _scalar_call(func, x):
    if func == "sin":
        return np.sin(x)
    if func == "cos":
        return np.cos(x)
    if func == "tan":
        c = np.cos(x)
        J.reciprocal(c * c)
        return np.tan(x)
    if func == "exp":
        return np.exp(x)
    if func == "log":
        if np.any(x <= 0):
            raise DomainError("log of a non-positive number")
        return np.log(x)
    if func == "sqrt":
        if np.any(x < 0):
            raise DomainError("sqrt of a negative number")
        return np.sqrt(x)
    raise ValueError(func)


def _is_small_int(p):
    return p == int(p) and abs(p) <= MAX_INT_POWER


def _scalar_pow(base, p):
    if _is_small_int(p):
        return _int_power(base, int(p), 1.0, lambda a, b: a * b, lambda a: J.reciprocal(a))
    if np.any(base <= 0):
        raise DomainError("non-integer power of a non-positive number")
    return np.exp(p * np.log(base))


def eval_scalar(e, env):
    """Evaluate over plain floats (or numpy arrays)."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Unary):
        return -eval_scalar(e.child, env)
    if isinstance(e, Call):
        return _scalar_call(e.func, eval_scalar(e.child, env))
    if e.op == "^":
        return _scalar_pow(eval_scalar(e.left, env), e.right.value)
    a = eval_scalar(e.left, env)
    b = eval_scalar(e.right, env)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    return a * J.reciprocal(b)


_JET_CALLS = {
    "sin": J.jet_sin,
    "cos": J.jet_cos,
    "tan": J.jet_tan,
    "exp": J.jet_exp,
    "log": J.jet_log,
    "sqrt": J.jet_sqrt,
}


def _jet_pow(base, p):
    if _is_small_int(p):
        return _int_power(base, int(p), J.jet_const(1.0, base.nvars), J.jet_mul, J.jet_reciprocal)
    if np.any(base.val <= 0):
        raise DomainError("non-integer power of a non-positive number")
    scaled = J.jet_mul(J.jet_const(p, base.nvars), J.jet_log(base))
    return J.jet_exp(scaled)


def eval_jet(e, env, nvars=None):
    """Evaluate over jets.  ``env`` maps every free variable to a Jet."""
    if nvars is None:
        nvars = next(iter(env.values())).nvars if env else 3
    if isinstance(e, Const):
        return J.jet_const(e.value, nvars)
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Unary):
        return J.jet_neg(eval_jet(e.child, env, nvars))
    if isinstance(e, Call):
        return _JET_CALLS[e.func](eval_jet(e.child, env, nvars))
    if e.op == "^":
        return _jet_pow(eval_jet(e.left, env, nvars), e.right.value)
    a = eval_jet(e.left, env, nvars)
    b = eval_jet(e.right, env, nvars)
    if e.op == "+":
        return J.jet_add(a, b)
    if e.op == "-":
        return J.jet_sub(a, b)
    if e.op == "*":
        return J.jet_mul(a, b)
    return J.jet_div(a, b)
