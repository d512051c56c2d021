"""
Recursive-descent parser for polynomial expressions, and its inverse printer.

Grammar (whitespace ignored, no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | IDENT | '(' expr ')'
    NUMBER := INTEGER ('/' INTEGER)?

`^` binds tighter than `*`, which binds tighter than `+` and `-`.
"""
import logging
import re
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence

from polynomials.models import PLANE_VARIABLES, Poly, Residue, poly_class
from umbilic_atlas.statuses import ErrorCode, PolynomialSyntaxError

logger = logging.getLogger('polynomials')

_TOKEN_RE = re.compile(r"\s*(?:(?P<number>\d+(?:\s*/\s*\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")

# Aliases accepted in trivariate text
_ALIASES = {'ω': 'w', 'omega': 'w'}


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] == 'ω':
            tokens.append(Token('ident', 'ω', pos))
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.current
        if tok.kind != kind or (text is not None and tok.text != text):
            wanted = text or kind
            found = tok.text or 'end of input'
            raise PolynomialSyntaxError(f"expected {wanted!r}, found {found!r}", tok.position)
        return self.advance()

    def parse(self) -> Poly:
        if self.current.kind == 'end':
            raise PolynomialSyntaxError("empty expression", 0)
        result = self.expr()
        if self.current.kind != 'end':
            raise PolynomialSyntaxError(f"unexpected {self.current.text!r}", self.current.position)
        return result

    def expr(self) -> Poly:
        left = self.term()
        while self.current.kind == 'op' and self.current.text in '+-':
            op = self.advance().text
            right = self.term()
            left = left + right if op == '+' else left - right
        return left

    def term(self) -> Poly:
        left = self.unary()
        while self.current.kind == 'op' and self.current.text == '*':
            self.advance()
            left = left * self.unary()
        return left

    def unary(self) -> Poly:
        if self.current.kind == 'op' and self.current.text in '+-':
            op = self.advance().text
            operand = self.unary()
            return operand if op == '+' else -operand
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.current.kind == 'op' and self.current.text == '^':
            self.advance()
            tok = self.current
            if tok.kind != 'number':
                if tok.kind == 'op' and tok.text in '+-(':
                    raise PolynomialSyntaxError("exponent must be a nonnegative integer literal",
                                                tok.position, code=ErrorCode.INVALID_EXPONENT)
                found = tok.text or 'end of input'
                raise PolynomialSyntaxError(f"expected exponent, found {found!r}", tok.position)
            if '/' in tok.text:
                raise PolynomialSyntaxError("exponent must be a nonnegative integer literal",
                                            tok.position, code=ErrorCode.INVALID_EXPONENT)
            self.advance()
            base = base ** int(tok.text)
            if self.current.kind == 'op' and self.current.text == '^':
                raise PolynomialSyntaxError("chained exponents need parentheses", self.current.position)
        return base

    def atom(self) -> Poly:
        tok = self.current
        cls = poly_class(self.variables)
        if tok.kind == 'number':
            self.advance()
            return cls.constant(_literal(tok), self.variables)
        if tok.kind == 'ident':
            self.advance()
            name = _ALIASES.get(tok.text, tok.text)
            if name not in self.variables:
                raise PolynomialSyntaxError(f"unknown identifier {tok.text!r}", tok.position,
                                            code=ErrorCode.UNKNOWN_IDENTIFIER)
            return cls.gen(name, self.variables)
        if tok.kind == 'op' and tok.text == '(':
            self.advance()
            inner = self.expr()
            self.expect('op', ')')
            return inner
        found = tok.text or 'end of input'
        raise PolynomialSyntaxError(f"unexpected {found!r}", tok.position)


def _literal(tok: Token) -> Fraction:
    if '/' in tok.text:
        num, den = (part.strip() for part in tok.text.split('/'))
        if int(den) == 0:
            raise PolynomialSyntaxError("zero denominator", tok.position)
        return Fraction(int(num), int(den))
    return Fraction(int(tok.text))


def parse_poly(text: str, variables: Sequence[str] = PLANE_VARIABLES) -> Poly:
    """
    Parse polynomial text into an exact polynomial.

    Raises PolynomialSyntaxError (with a 0-based position) for malformed text,
    unknown identifiers and non-integer exponents.
    """
    poly = _Parser(text, variables).parse()
    logger.debug(f"Parsed {text!r} into {len(poly)} terms")
    return poly


def _format_coefficient(c) -> str:
    if isinstance(c, Residue):
        return f"({c!r})"
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return repr(float(c))


def format_poly(p: Poly) -> str:
    """Canonical text in graded-lex order; parse_poly(format_poly(p)) == p."""
    if p.is_zero():
        return "0"
    pieces: List[str] = []
    for exps, c in p.sorted_terms():
        negative = not isinstance(c, Residue) and c < 0
        mag = -c if negative else c
        factors = [f"{v}^{e}" if e > 1 else v for v, e in zip(p.variables, exps) if e]
        if mag == 1 and factors:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coefficient(mag)] + factors)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)
