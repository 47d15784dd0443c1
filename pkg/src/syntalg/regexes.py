"""Rational expressions: syntax tree, parser, printer.

Grammar (tightest first): star `*` is postfix, juxtaposition is
concatenation, `+` is union.  `1` is the empty word, `0` the empty set,
letters are lowercase a-z.  Parentheses group.  Whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Letter:
    symbol: str


@dataclass(frozen=True)
class Star:
    child: object


@dataclass(frozen=True)
class Concat:
    left: object
    right: object


@dataclass(frozen=True)
class Union:
    left: object
    right: object


Regex = object  # one of the six node classes above


def letters_of(node) -> set:
    if isinstance(node, Letter):
        return {node.symbol}
    if isinstance(node, (Zero, One)):
        return set()
    if isinstance(node, Star):
        return letters_of(node.child)
    return letters_of(node.left) | letters_of(node.right)


class _Parser:
    def __init__(self, text: str, alphabet):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self):
        c = self.peek()
        self.pos += 1
        return c

    def parse(self):
        node = self.union()
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected {self.peek()!r}", self.pos)
        return node

    def union(self):
        node = self.concat()
        while self.peek() == "+":
            self.take()
            node = Union(node, self.concat())
        return node

    def concat(self):
        node = self.starred()
        while True:
            c = self.peek()
            if c is None or c in "+)":
                return node
            node = Concat(node, self.starred())

    def starred(self):
        node = self.atom()
        while self.peek() == "*":
            self.take()
            node = Star(node)
        return node

    def atom(self):
        c = self.peek()
        if c is None:
            raise RegexSyntaxError("unexpected end of input", self.pos)
        if c == "(":
            open_pos = self.pos
            self.take()
            node = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("unbalanced parenthesis", open_pos)
            self.take()
            return node
        if c == "1":
            self.take()
            return One()
        if c == "0":
            self.take()
            return Zero()
        if c.isalpha() and c.islower():
            if self.alphabet is not None and c not in self.alphabet:
                raise RegexSyntaxError(f"letter {c!r} not in alphabet", self.pos)
            self.take()
            return Letter(c)
        raise RegexSyntaxError(f"unexpected {c!r}", self.pos)


def parse_regex(text: str, alphabet=None) -> Regex:
    """Parse a rational expression.  If alphabet is given, letters outside it
    are syntax errors."""
    if alphabet is not None:
        alphabet = tuple(alphabet)
    return _Parser(text, alphabet).parse()


def regex_to_str(node) -> str:
    """Print with minimal parentheses; parse_regex(regex_to_str(t)) == t."""
    return _print(node, 0)


def _print(node, context: int) -> str:
    # precedence levels: union 1, concat 2, star 3
    if isinstance(node, Zero):
        return "0"
    if isinstance(node, One):
        return "1"
    if isinstance(node, Letter):
        return node.symbol
    if isinstance(node, Star):
        return _print(node.child, 3) + "*"
    if isinstance(node, Concat):
        s = _print(node.left, 2) + _print(node.right, 3)
        return f"({s})" if context >= 3 else s
    if isinstance(node, Union):
        s = _print(node.left, 1) + "+" + _print(node.right, 2)
        return f"({s})" if context >= 2 else s
    raise TypeError(f"not a regex node: {node!r}")
