"""Parser for the DLV-style rule language.

Grammar (informal)::

    program   := rule*
    rule      := atom [":-" body] "."
    body      := bodyitem ("," bodyitem)*
    bodyitem  := ["not"] atom | aggregate | expr CMP expr
    aggregate := "#" FN "{" (symset | groundset) "}" CMP term
    symset    := term ("," term)* ":" atom ("," atom)*
    groundset := [gelem ("," gelem)*]
    gelem     := "<" const ("," const)* ":" atom ("," atom)* ">"

``%`` starts a comment running to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .syntax import (
    AGGREGATE_FUNCTIONS,
    Aggregate,
    Atom,
    BinOp,
    Comparison,
    GroundSet,
    Literal,
    Program,
    Rule,
    SymbolicSet,
    Var,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<cmp><=|>=|!=|<>|≤|≥|==|<|>|=)
  | (?P<int>[0-9]+)
  | (?P<var>[A-Z][A-Za-z0-9_']*)
  | (?P<ident>[a-z_][A-Za-z0-9_]*)
  | (?P<agg>\#[a-z]+)
  | (?P<punct>[(){},.:+\-*])
    """,
    re.VERBOSE,
)

_CMP_NORMAL = {"≤": "<=", "≥": ">=", "==": "=", "<>": "!="}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            if kind == "cmp":
                value = _CMP_NORMAL.get(value, value)
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n") if kind in ("ws",) else 0
        if newlines:
            line += newlines
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "eof":
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    # -- grammar ---------------------------------------------------------

    def program(self) -> Program:
        rules = []
        while self.tok.kind != "eof":
            rules.append(self.rule())
        return Program(tuple(rules))

    def rule(self) -> Rule:
        if self.tok.kind == "if":
            self.error("rules without a head (constraints) are not supported")
        head = self.atom()
        body = []
        if self.tok.kind == "if":
            self.advance()
            body.append(self.body_item())
            while self.accept(","):
                body.append(self.body_item())
        self.expect(".")
        return Rule(head, tuple(body))

    def body_item(self):
        tok = self.tok
        if tok.kind == "ident" and tok.text == "not" and self.peek().kind == "ident":
            self.advance()
            return Literal(self.atom(), positive=False)
        if tok.kind == "agg":
            return self.aggregate()
        if tok.kind == "ident" and self.peek().kind != "cmp" and self.peek().text not in ("+", "-", "*"):
            return Literal(self.atom())
        left = self.expr()
        if self.tok.kind != "cmp":
            self.error("expected a comparison operator")
        op = self.advance().text
        right = self.expr()
        return Comparison(op, left, right)

    def aggregate(self) -> Aggregate:
        tok = self.advance()
        fn = tok.text[1:]
        if fn not in AGGREGATE_FUNCTIONS:
            self.error(f"unknown aggregate function {tok.text}", tok)
        self.expect("{")
        if self.tok.text == "<" or self.tok.text == "}":
            elements = []
            if self.tok.text == "<":
                elements.append(self.ground_element())
                while self.accept(","):
                    elements.append(self.ground_element())
            self.expect("}")
            set_term = GroundSet(frozenset(elements))
        else:
            terms = [self.term()]
            while self.accept(","):
                terms.append(self.term())
            self.expect(":")
            conj = [self.atom()]
            while self.accept(","):
                conj.append(self.atom())
            self.expect("}")
            set_term = SymbolicSet(tuple(terms), tuple(conj))
        if self.tok.kind != "cmp" or self.tok.text not in ("<", "<=", ">", ">="):
            self.error("expected one of <, <=, >, >= after aggregate")
        cmp = self.advance().text
        guard = self.term()
        try:
            return Aggregate(fn, set_term, cmp, guard)
        except ValueError as exc:
            self.error(str(exc), tok)

    def ground_element(self):
        self.expect("<")
        consts = [self.constant()]
        while self.accept(","):
            consts.append(self.constant())
        self.expect(":")
        conj = [self.atom()]
        while self.accept(","):
            conj.append(self.atom())
        if not all(a.is_ground() for a in conj):
            self.error("ground set elements must be ground")
        self.expect(">")
        return (tuple(consts), tuple(conj))

    def atom(self) -> Atom:
        tok = self.tok
        if tok.kind != "ident":
            self.error(f"expected a predicate name, found {tok.text or 'end of input'!r}")
        if tok.text == "not":
            self.error("'not' is not a valid predicate name")
        self.advance()
        args = []
        if self.accept("("):
            args.append(self.term())
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
        return Atom(tok.text, tuple(args))

    def constant(self):
        t = self.term()
        if isinstance(t, Var):
            self.error("expected a constant")
        return t

    def term(self):
        tok = self.tok
        if tok.kind == "var":
            self.advance()
            return Var(tok.text)
        if tok.kind == "int":
            self.advance()
            return int(tok.text)
        if tok.text == "-" and self.peek().kind == "int":
            self.advance()
            return -int(self.advance().text)
        if tok.kind == "ident" and tok.text != "not":
            self.advance()
            return tok.text
        self.error(f"expected a term, found {tok.text or 'end of input'!r}")

    def expr(self):
        left = self.product()
        while self.tok.text in ("+", "-") and self.tok.kind == "punct":
            op = self.advance().text
            left = BinOp(op, left, self.product())
        return left

    def product(self):
        left = self.factor()
        while self.tok.text == "*":
            self.advance()
            left = BinOp("*", left, self.factor())
        return left

    def factor(self):
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        return self.term()


def parse_program(text: str) -> Program:
    """Parse program text into a :class:`Program`.

    Raises :class:`ParseError` (carrying ``line`` and ``column``) on malformed
    input or an unknown aggregate function symbol.
    """
    return _Parser(text).program()


def parse_rule(text: str) -> Rule:
    prog = parse_program(text)
    if len(prog.rules) != 1:
        raise ValueError(f"expected exactly one rule, got {len(prog.rules)}")
    return prog.rules[0]


def parse_atoms(text: str) -> List[Atom]:
    """Parse a list of ground atoms separated by whitespace, commas or dots.

    Accepts optional surrounding braces, e.g. ``{p(0), q}`` or ``p(0). q.``.
    """
    p = _Parser(text)
    p.accept("{")
    out = []
    while p.tok.kind != "eof" and p.tok.text != "}":
        a = p.atom()
        if not a.is_ground():
            p.error(f"atom {a} is not ground")
        out.append(a)
        while p.tok.text in (",", "."):
            p.advance()
    p.accept("}")
    if p.tok.kind != "eof":
        p.error("trailing input")
    return out
