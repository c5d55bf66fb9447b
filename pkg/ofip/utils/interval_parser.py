"""
Recursive-descent evaluator for ordered-interval expressions.

Grammar::

    expr     := term (("(+)" | "(-)") term)*
    term     := factor ("(*)" factor)*
    factor   := ["+" | "-"] NUMBER "*" factor
              | "-" factor
              | "abs" "(" expr ")"
              | "(" expr ")"
              | interval
    interval := "[" signed "," signed "]" ["_o"]
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional

from ofip.ordered_interval import OrderedInterval

logger = logging.getLogger(__name__)

_TOKEN_SPEC = [
    ('OP', r'\((?:\+|-|\*)\)'),
    ('NUMBER', r'(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?'),
    ('ABS', r'abs\b'),
    ('SUFFIX', r'_o\b'),
    ('LBRACK', r'\['),
    ('RBRACK', r'\]'),
    ('LPAREN', r'\('),
    ('RPAREN', r'\)'),
    ('COMMA', r','),
    ('STAR', r'\*'),
    ('MINUS', r'-'),
    ('PLUS', r'\+'),
    ('SKIP', r'\s+'),
    ('MISMATCH', r'.'),
]
_TOKEN_RE = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in _TOKEN_SPEC))


class IntervalParseError(ValueError):
    """Raised for malformed calculator input; `position` is a 0-based column."""

    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        if kind == 'SKIP':
            continue
        if kind == 'MISMATCH':
            raise IntervalParseError(match.start(), f"unexpected character {match.group()!r}")
        tokens.append(Token(kind, match.group(), match.start()))
    tokens.append(Token('END', '', len(text)))
    return tokens


class IntervalExpressionParser:
    """Evaluate one expression; label-wise arithmetic throughout."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _expect(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            found = self.current.text or 'end of input'
            raise IntervalParseError(self.current.position, f"expected {what}, found {found!r}")
        return self._advance()

    def parse(self) -> OrderedInterval:
        if self.current.kind == 'END':
            raise IntervalParseError(0, "empty expression")
        result = self._expr()
        if self.current.kind != 'END':
            raise IntervalParseError(self.current.position, f"unexpected {self.current.text!r}")
        return result

    def _expr(self) -> OrderedInterval:
        value = self._term()
        while self.current.kind == 'OP' and self.current.text in ('(+)', '(-)'):
            op = self._advance().text
            right = self._term()
            value = value.add(right) if op == '(+)' else value.sub(right)
        return value

    def _term(self) -> OrderedInterval:
        value = self._factor()
        while self.current.kind == 'OP' and self.current.text == '(*)':
            self._advance()
            value = value.mul(self._factor())
        return value

    def _scalar_prefix(self) -> Optional[float]:
        """Consume `[sign] NUMBER *` if present."""
        offset = 1 if self.current.kind in ('PLUS', 'MINUS') else 0
        if self._peek(offset).kind == 'NUMBER' and self._peek(offset + 1).kind == 'STAR':
            negative = offset == 1 and self.current.kind == 'MINUS'
            if offset:
                self._advance()
            number = float(self._advance().text)
            self._advance()
            return -number if negative else number
        return None

    def _factor(self) -> OrderedInterval:
        scalar = self._scalar_prefix()
        if scalar is not None:
            return self._factor().scale(scalar)

        token = self.current
        if token.kind == 'MINUS':
            self._advance()
            return -self._factor()
        if token.kind == 'ABS':
            self._advance()
            self._expect('LPAREN', "'(' after abs")
            value = self._expr()
            self._expect('RPAREN', "')'")
            return value.absolute()
        if token.kind == 'LPAREN':
            self._advance()
            value = self._expr()
            self._expect('RPAREN', "')'")
            return value
        if token.kind == 'LBRACK':
            return self._interval()
        found = token.text or 'end of input'
        raise IntervalParseError(token.position, f"expected an interval, found {found!r}")

    def _signed(self):
        if self.current.kind in ('PLUS', 'MINUS'):
            self._advance()
        self._expect('NUMBER', 'a number')

    def _interval(self) -> OrderedInterval:
        start = self.index
        self._expect('LBRACK', "'['")
        self._signed()
        self._expect('COMMA', "','")
        self._signed()
        self._expect('RBRACK', "']'")
        if self.current.kind == 'SUFFIX':
            self._advance()
        return OrderedInterval.parse(''.join(token.text for token in self.tokens[start:self.index]))


def evaluate_expression(text: str) -> OrderedInterval:
    """Parse and evaluate, e.g. `[3,4] (-) [2,10]` -> [1,-6]_o."""
    result = IntervalExpressionParser(text).parse()
    logger.debug(f"Evaluated {text!r} to {result}")
    return result
