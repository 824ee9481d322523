"""Boolean netlist DSL: parser, desugaring, and the brute-force oracle.

Surface syntax, one definition per line::

    XOR = (A NAND B) AND (A OR B)   # comments allowed

All binary operators share one precedence level and associate left;
chaining two *different* operators without parentheses is rejected so no
C-style precedence is silently implied.  NOT binds tightest.  Compound
operators desugar immediately: the stored tree holds only Var, Not, And
and Or nodes.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import Union

from .errors import (
    ExplicitCapExceeded,
    MissingVariable,
    MixedPrecedenceError,
    NetlistSyntaxError,
)

Bit = int

TRUTH_TABLE_CAP = 20  # exhaustive enumeration refuses more inputs than this


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    child: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Union[Var, Not, And, Or]

Assignment = dict  # variable name -> Bit


@dataclass(frozen=True)
class Netlist:
    name: str
    inputs: tuple[str, ...]
    body: Expr

    def __post_init__(self):
        if len(set(self.inputs)) != len(self.inputs):
            raise NetlistSyntaxError(f"duplicate input names in {self.inputs}")
        free = variables(self.body)
        extra = [v for v in free if v not in self.inputs]
        if extra:
            raise NetlistSyntaxError(f"body uses undeclared variables {extra}")


def variables(e: Expr) -> list[str]:
    """Variable names in first-occurrence (depth-first) order."""
    seen: list[str] = []

    def walk(node):
        if isinstance(node, Var):
            if node.name not in seen:
                seen.append(node.name)
        elif isinstance(node, Not):
            walk(node.child)
        else:
            walk(node.left)
            walk(node.right)

    walk(e)
    return seen


def occurrences(e: Expr) -> int:
    """Total count of variable leaves (fan-out included)."""
    if isinstance(e, Var):
        return 1
    if isinstance(e, Not):
        return occurrences(e.child)
    return occurrences(e.left) + occurrences(e.right)


def clone(e: Expr) -> Expr:
    """Structurally identical tree built from fresh nodes.

    Desugaring duplicates operand subtrees; clones keep each duplicate a
    distinct object so the compiler sees a true tree, not shared nodes.
    """
    if isinstance(e, Var):
        return Var(e.name)
    if isinstance(e, Not):
        return Not(clone(e.child))
    if isinstance(e, And):
        return And(clone(e.left), clone(e.right))
    return Or(clone(e.left), clone(e.right))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[()=])|(?P<bad>\S))")

_BINARY = ("AND", "OR", "NAND", "NOR", "XOR", "XNOR")
_KEYWORDS = _BINARY + ("NOT",)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Yield (kind, value, position) triples; kind is word/punct/end."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group("bad"):
            raise NetlistSyntaxError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        if m.group("word"):
            tokens.append(("word", m.group("word"), m.start("word")))
        else:
            tokens.append(("punct", m.group("punct"), m.start("punct")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
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
        if tok[0] != "end":
            self.i += 1
        return tok

    def expect_punct(self, value):
        kind, got, pos = self.peek()
        if kind != "punct" or got != value:
            raise NetlistSyntaxError(f"expected {value!r}, found {got or 'end of input'!r}", pos)
        return self.advance()

    def parse_definition(self) -> Netlist:
        kind, name, pos = self.advance()
        if kind != "word":
            raise NetlistSyntaxError("expected a netlist name", pos)
        self.expect_punct("=")
        body = self.parse_expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise NetlistSyntaxError(f"trailing input {value!r}", pos)
        return Netlist(name=name, inputs=tuple(variables(body)), body=body)

    def parse_expr(self) -> Expr:
        left = self.parse_term()
        chain_op = None
        while True:
            kind, value, pos = self.peek()
            if kind != "word" or value not in _BINARY:
                return left
            if chain_op is None:
                chain_op = value
            elif value != chain_op:
                raise MixedPrecedenceError(
                    f"cannot chain {chain_op} with {value} without parentheses", pos
                )
            self.advance()
            left = _apply_binary(value, left, self.parse_term())

    def parse_term(self) -> Expr:
        kind, value, pos = self.peek()
        if kind == "punct" and value == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect_punct(")")
            return inner
        if kind == "word" and value == "NOT":
            self.advance()
            return Not(self.parse_term())
        if kind == "word" and value not in _KEYWORDS:
            self.advance()
            return Var(value)
        raise NetlistSyntaxError(
            f"expected a variable, NOT or '(', found {value or 'end of input'!r}", pos
        )


def _apply_binary(op: str, left: Expr, right: Expr) -> Expr:
    if op == "AND":
        return And(left, right)
    if op == "OR":
        return Or(left, right)
    if op == "NAND":
        return Not(And(left, right))
    if op == "NOR":
        return Not(Or(left, right))
    if op == "XOR":
        # the NAND/OR composition, so compiled circuits mirror the same shape
        return And(Not(And(left, right)), Or(clone(left), clone(right)))
    if op == "XNOR":
        return Not(_apply_binary("XOR", left, right))
    raise AssertionError(op)


def parse(text: str) -> Netlist:
    """Parse one definition of the form ``NAME = expr``."""
    return _Parser(text).parse_definition()


def parse_file(text: str) -> list[Netlist]:
    """Parse netlist file text: one definition per line, '#' comments."""
    result = []
    for line in io.StringIO(text):
        line = line.split("#", 1)[0].strip()
        if line:
            result.append(parse(line))
    return result


# ---------------------------------------------------------------------------
# serialization

def expr_to_text(e: Expr) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Not):
        return f"NOT {expr_to_text(e.child)}"
    op = "AND" if isinstance(e, And) else "OR"
    return f"({expr_to_text(e.left)} {op} {expr_to_text(e.right)})"


def netlist_to_text(n: Netlist) -> str:
    """Canonical form; reparsing it reproduces the identical tree."""
    return f"{n.name} = {expr_to_text(n.body)}"


# ---------------------------------------------------------------------------
# evaluation oracle

def check_assignment(inputs, assignment: Assignment) -> None:
    missing = [v for v in inputs if v not in assignment]
    if missing:
        raise MissingVariable(f"assignment missing variables {missing}")
    unknown = [v for v in assignment if v not in inputs]
    if unknown:
        raise MissingVariable(f"assignment names unknown variables {unknown}")


def eval_expr(e: Expr, assignment: Assignment) -> Bit:
    if isinstance(e, Var):
        try:
            return assignment[e.name]
        except KeyError:
            raise MissingVariable(f"assignment missing variable {e.name!r}") from None
    if isinstance(e, Not):
        return 1 - eval_expr(e.child, assignment)
    if isinstance(e, And):
        return eval_expr(e.left, assignment) & eval_expr(e.right, assignment)
    return eval_expr(e.left, assignment) | eval_expr(e.right, assignment)


def evaluate(n: Netlist, assignment: Assignment) -> Bit:
    """Standard boolean semantics by tree recursion."""
    check_assignment(n.inputs, assignment)
    return eval_expr(n.body, assignment)


def assignments(inputs) -> list[Assignment]:
    """All assignments in binary counting order, first input most significant."""
    names = list(inputs)
    rows = []
    for code in range(1 << len(names)):
        rows.append({v: (code >> (len(names) - 1 - k)) & 1 for k, v in enumerate(names)})
    return rows


def truth_table(n: Netlist) -> list[tuple[Assignment, Bit]]:
    if len(n.inputs) > TRUTH_TABLE_CAP:
        raise ExplicitCapExceeded(
            f"{len(n.inputs)} inputs exceed the exhaustive cap of {TRUTH_TABLE_CAP}; "
            "use sampled verification instead"
        )
    return [(a, evaluate(n, a)) for a in assignments(n.inputs)]


def truth_table_csv(n: Netlist) -> str:
    lines = [",".join(list(n.inputs) + ["out"])]
    for row, value in truth_table(n):
        lines.append(",".join(str(row[v]) for v in n.inputs) + f",{value}")
    return "\n".join(lines) + "\n"


def complement(assignment: Assignment) -> Assignment:
    return {name: 1 - bit for name, bit in assignment.items()}
