"""A small predicate language over the naturals for describing subsets.

Grammar (whitespace-insensitive; integers are decimal, at most 2**63 - 1)::

    pred    := or ;  or := and { "or" and } ;  and := neg { "and" neg } ;
    neg     := "not" neg | cmp ;
    cmp     := sum (("=" | "!=" | "<" | "<=" | ">" | ">=") sum
                    | "divides" sum)?
             | "true" | "false" | builtin ;
    builtin := ("prime" | "coprime") "(" sum ")" ;
    sum     := prod { ("+" | "-") prod } ;
    prod    := atom { ("*" | "mod") atom } ;
    atom    := integer | "x" | "(" pred-or-sum ")" .

There is a single bound variable ``x`` and no quantifiers.  Arithmetic is
totalized: subtraction truncates at zero, and ``mod 0`` evaluates to 0
(flagged by :func:`lint`).  ``prime(s)`` holds when the value exceeds 1
and has no proper divisor; ``coprime(s)`` holds when the value exceeds 1
and has one (the positive opposite of prime on that range).  ``divides``
is also available as the sugar ``divides(k, s)`` for ``k divides s``.
Every predicate is extensional by construction: evaluation depends only
on the value of ``x``.

:func:`to_text` prints the canonical form, adding parentheses only where
the grammar requires them; ``parse(to_text(e))`` is structurally ``e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from .arithmetic import Composite, Prime, classify
from .complemented import ComplementedSubset, ExtensionalSubset

MAX_LITERAL = 2**63 - 1


@dataclass(frozen=True)
class ParseDiagnostic:
    offset: int
    expected: Tuple[str, ...]
    message: str


class ParseError(Exception):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(f"{diagnostic.message} at offset {diagnostic.offset}")
        self.diagnostic = diagnostic


# Abstract syntax.  Arithmetic and boolean nodes are disjoint; the parser
# guarantees booleans never appear under arithmetic operators.


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Arith:
    op: str  # "+", "-", "*", "mod"
    left: "ArithExpr"
    right: "ArithExpr"


ArithExpr = Union[Lit, Var, Arith]


@dataclass(frozen=True)
class Cmp:
    op: str  # "=", "!=", "<", "<=", ">", ">="
    left: ArithExpr
    right: ArithExpr


@dataclass(frozen=True)
class Divides:
    left: ArithExpr
    right: ArithExpr


@dataclass(frozen=True)
class BuiltinPred:
    name: str  # "prime" | "coprime"
    arg: ArithExpr


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: "PredicateExpr"


@dataclass(frozen=True)
class And:
    left: "PredicateExpr"
    right: "PredicateExpr"


@dataclass(frozen=True)
class Or:
    left: "PredicateExpr"
    right: "PredicateExpr"


PredicateExpr = Union[Cmp, Divides, BuiltinPred, BoolConst, Not, And, Or]
Expr = Union[PredicateExpr, ArithExpr]

_BOOL_NODES = (Cmp, Divides, BuiltinPred, BoolConst, Not, And, Or)

_TOKEN_RE = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z0-9_]*|!=|<=|>=|[=<>+\-*(),])")
_KEYWORDS = {"x", "or", "and", "not", "divides", "mod", "prime", "coprime", "true", "false"}
_REL_OPS = ("=", "!=", "<", "<=", ">", ">=")
_EXPR_EXPECTED = ("integer", '"x"', '"("', '"true"', '"false"', '"prime"', '"coprime"', '"not"')


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | keyword or operator text | "eof"
    text: str
    offset: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            offset = len(text) - len(stripped)
            raise ParseError(
                ParseDiagnostic(offset, _EXPR_EXPECTED, f"unexpected character {stripped[0]!r}")
            )
        lexeme = match.group(1)
        offset = match.end(1) - len(lexeme)
        if lexeme.isdigit():
            if int(lexeme) > MAX_LITERAL:
                raise ParseError(
                    ParseDiagnostic(offset, ("integer <= 2**63 - 1",), "integer literal too large")
                )
            tokens.append(_Token("int", lexeme, offset))
        elif lexeme[0].isalpha() or lexeme[0] == "_":
            if lexeme not in _KEYWORDS:
                raise ParseError(
                    ParseDiagnostic(offset, tuple(sorted(_KEYWORDS)), f"unknown name {lexeme!r}")
                )
            tokens.append(_Token(lexeme, lexeme, offset))
        else:
            tokens.append(_Token(lexeme, lexeme, offset))
        pos = match.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def fail(self, expected: Tuple[str, ...], message: str):
        raise ParseError(ParseDiagnostic(self.peek().offset, expected, message))

    def expect(self, kind: str) -> _Token:
        if self.peek().kind != kind:
            self.fail((f'"{kind}"',), f"expected {kind!r}")
        return self.take()

    def require_bool(self, node: Expr, offset: int) -> PredicateExpr:
        if isinstance(node, _BOOL_NODES):
            return node
        raise ParseError(
            ParseDiagnostic(offset, _REL_OPS + ('"divides"',), "expected a relation")
        )

    def require_arith(self, node: Expr) -> ArithExpr:
        if isinstance(node, _BOOL_NODES):
            self.fail(("arithmetic expression",), "boolean expression where arithmetic expected")
        return node

    def parse_or(self) -> Expr:
        offset = self.peek().offset
        node = self.parse_and()
        while self.peek().kind == "or":
            node = self.require_bool(node, offset)
            self.take()
            rhs_off = self.peek().offset
            node = Or(node, self.require_bool(self.parse_and(), rhs_off))
        return node

    def parse_and(self) -> Expr:
        offset = self.peek().offset
        node = self.parse_neg()
        while self.peek().kind == "and":
            node = self.require_bool(node, offset)
            self.take()
            rhs_off = self.peek().offset
            node = And(node, self.require_bool(self.parse_neg(), rhs_off))
        return node

    def parse_neg(self) -> Expr:
        if self.peek().kind == "not":
            self.take()
            offset = self.peek().offset
            return Not(self.require_bool(self.parse_neg(), offset))
        return self.parse_cmp()

    def parse_cmp(self) -> Expr:
        kind = self.peek().kind
        if kind == "true":
            self.take()
            return BoolConst(True)
        if kind == "false":
            self.take()
            return BoolConst(False)
        if kind in ("prime", "coprime"):
            name = self.take().text
            self.expect("(")
            arg = self.require_arith(self.parse_sum())
            self.expect(")")
            return BuiltinPred(name, arg)
        if kind == "divides":  # function-call sugar: divides(k, s)
            self.take()
            self.expect("(")
            left = self.require_arith(self.parse_sum())
            self.expect(",")
            right = self.require_arith(self.parse_sum())
            self.expect(")")
            return Divides(left, right)
        left = self.parse_sum()
        nxt = self.peek().kind
        if nxt in _REL_OPS:
            op = self.take().text
            return Cmp(op, self.require_arith(left), self.require_arith(self.parse_sum()))
        if nxt == "divides":
            self.take()
            return Divides(self.require_arith(left), self.require_arith(self.parse_sum()))
        return left

    def parse_sum(self) -> Expr:
        node = self.parse_prod()
        while self.peek().kind in ("+", "-"):
            op = self.take().text
            node = Arith(op, self.require_arith(node), self.require_arith(self.parse_prod()))
        return node

    def parse_prod(self) -> Expr:
        node = self.parse_atom()
        while self.peek().kind in ("*", "mod"):
            op = self.take().text
            node = Arith(op, self.require_arith(node), self.require_arith(self.parse_atom()))
        return node

    def parse_atom(self) -> Expr:
        token = self.peek()
        if token.kind == "int":
            self.take()
            return Lit(int(token.text))
        if token.kind == "x":
            self.take()
            return Var()
        if token.kind == "(":
            self.take()
            inner = self.parse_or()
            self.expect(")")
            return inner
        self.fail(_EXPR_EXPECTED, "expected expression")


def parse(text: str) -> PredicateExpr:
    """Parse a predicate; malformed input raises :class:`ParseError`."""
    parser = _Parser(_tokenize(text))
    node = parser.parse_or()
    node = parser.require_bool(node, parser.peek().offset)
    if parser.peek().kind != "eof":
        parser.fail(("end of input",), f"unexpected trailing {parser.peek().text!r}")
    return node


def parse_arith(text: str) -> ArithExpr:
    """Parse a bare arithmetic expression (a ``sum``), e.g. a descend rule."""
    parser = _Parser(_tokenize(text))
    node = parser.require_arith(parser.parse_sum())
    if parser.peek().kind != "eof":
        parser.fail(("end of input",), f"unexpected trailing {parser.peek().text!r}")
    return node


def eval_arith(e: ArithExpr, x: int) -> int:
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Var):
        return x
    a, b = eval_arith(e.left, x), eval_arith(e.right, x)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b if a > b else 0
    if e.op == "*":
        return a * b
    return a % b if b != 0 else 0


def eval_predicate(e: PredicateExpr, x: int) -> bool:
    """Total evaluation at the point ``x``."""
    if isinstance(e, BoolConst):
        return e.value
    if isinstance(e, Cmp):
        a, b = eval_arith(e.left, x), eval_arith(e.right, x)
        return {
            "=": a == b,
            "!=": a != b,
            "<": a < b,
            "<=": a <= b,
            ">": a > b,
            ">=": a >= b,
        }[e.op]
    if isinstance(e, Divides):
        k, v = eval_arith(e.left, x), eval_arith(e.right, x)
        return v % k == 0 if k != 0 else v == 0
    if isinstance(e, BuiltinPred):
        v = eval_arith(e.arg, x)
        if v <= 1:
            return False
        outcome = classify(v)
        return isinstance(outcome, Prime) if e.name == "prime" else isinstance(outcome, Composite)
    if isinstance(e, Not):
        return not eval_predicate(e.arg, x)
    if isinstance(e, And):
        return eval_predicate(e.left, x) and eval_predicate(e.right, x)
    return eval_predicate(e.left, x) or eval_predicate(e.right, x)


_OR, _AND, _NOT, _CMP, _SUM, _PROD, _ATOM = range(1, 8)


def _level(e: Expr) -> int:
    if isinstance(e, Or):
        return _OR
    if isinstance(e, And):
        return _AND
    if isinstance(e, Not):
        return _NOT
    if isinstance(e, (Cmp, Divides)):
        return _CMP
    if isinstance(e, Arith):
        return _SUM if e.op in ("+", "-") else _PROD
    return _ATOM


def _render(e: Expr, minimum: int) -> str:
    if isinstance(e, Lit):
        body = str(e.value)
    elif isinstance(e, Var):
        body = "x"
    elif isinstance(e, BoolConst):
        body = "true" if e.value else "false"
    elif isinstance(e, BuiltinPred):
        body = f"{e.name}({_render(e.arg, 0)})"
    elif isinstance(e, Not):
        body = f"not {_render(e.arg, _NOT)}"
    elif isinstance(e, And):
        body = f"{_render(e.left, _AND)} and {_render(e.right, _AND + 1)}"
    elif isinstance(e, Or):
        body = f"{_render(e.left, _OR)} or {_render(e.right, _OR + 1)}"
    elif isinstance(e, Cmp):
        body = f"{_render(e.left, _SUM)} {e.op} {_render(e.right, _SUM)}"
    elif isinstance(e, Divides):
        body = f"{_render(e.left, _SUM)} divides {_render(e.right, _SUM)}"
    else:
        level = _level(e)
        body = f"{_render(e.left, level)} {e.op} {_render(e.right, level + 1)}"
    return f"({body})" if _level(e) < minimum else body


def to_text(e: Expr) -> str:
    """Canonical form; parentheses only where the grammar needs them."""
    return _render(e, 0)


def lint(e: Expr) -> List[str]:
    """Static warnings: currently only literal ``mod 0``."""
    warnings: List[str] = []

    def walk(node: Expr) -> None:
        if isinstance(node, Arith):
            if node.op == "mod" and node.right == Lit(0):
                warnings.append("mod by zero evaluates to 0")
            walk(node.left)
            walk(node.right)
        elif isinstance(node, (Cmp, Divides, And, Or)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Not):
            walk(node.arg)
        elif isinstance(node, BuiltinPred):
            walk(node.arg)

    walk(e)
    return warnings


def complemented_from_exprs(
    e1: PredicateExpr, e0: PredicateExpr, bound: int
) -> ComplementedSubset:
    """Prover/refuter pair from two predicates, disjointness checked on [0, bound]."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    pair = ComplementedSubset(
        ExtensionalSubset(lambda x: eval_predicate(e1, x), None, to_text(e1)),
        ExtensionalSubset(lambda x: eval_predicate(e0, x), None, to_text(e0)),
        check_bound=bound,
    )
    pair.check_disjoint()
    return pair
