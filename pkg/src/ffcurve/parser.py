"""Expression grammar for sheaves, tilted objects, and Q[t] polynomials.

Sheaf grammar:

    object := "tilted" "(" sum ";" sum ")" | sum
    sum    := item ("+" item)*
    item   := atom ["[1]"]                 (shift suffix, top level only)
    atom   := "O" ["(" int ["/" posint] ")"] ["^" posint]
            | "T" "(" label ",[" int ("," int)* "])"
            | "0"

The printed normal forms of CoherentSheaf and TiltedObject parse back to
equal objects.  Errors carry the offending position in the input string.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import Poly, T_VAR
from .sheaves import CoherentSheaf, O, T, TiltedObject, direct_sum


class ParseError(Exception):
    """Malformed expression; position points at the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.message = message
        self.position = position

    def __str__(self) -> str:
        return "parse error at position %d: %s" % (self.position, self.message)


_SYMBOLS = set("()[]^+;,/-*")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("number", text[i:j], i))
            i = j
            continue
        if ch == "∞":
            tokens.append(("name", "∞", i))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def fail(self, message: str, position=None):
        if position is None:
            position = self.peek()[2]
        raise ParseError(message, position)

    def expect(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind:
            self.fail("expected %s" % what)
        return self.advance()

    def at_end(self) -> bool:
        return self.peek()[0] == "end"

    # ---------------------------------------------------------- sheaf side

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.advance()
            sign = -1
        tok = self.expect("number", "an integer")
        return sign * int(tok[1])

    def positive_int(self, what: str) -> int:
        tok = self.peek()
        if tok[0] == "-":
            self.fail("%s must be positive" % what)
        tok = self.expect("number", what)
        value = int(tok[1])
        if value < 1:
            self.fail("%s must be positive" % what, tok[2])
        return value

    def atom(self) -> CoherentSheaf:
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "O":
            self.advance()
            d, h = 0, 1
            if self.peek()[0] == "(":
                self.advance()
                d = self.signed_int()
                if self.peek()[0] == "/":
                    self.advance()
                    h = self.positive_int("fraction denominator")
                self.expect(")", "')'")
            mult = 1
            if self.peek()[0] == "^":
                self.advance()
                mult = self.positive_int("multiplicity")
            return O(d, h, mult=mult)
        if tok[0] == "name" and tok[1] == "T":
            self.advance()
            self.expect("(", "'(' after T")
            label = self.expect("name", "a torsion label")[1]
            self.expect(",", "','")
            self.expect("[", "'['")
            factors = [self.torsion_factor()]
            while self.peek()[0] == ",":
                self.advance()
                factors.append(self.torsion_factor())
            self.expect("]", "']'")
            self.expect(")", "')'")
            return T(tuple(factors), label=label)
        if tok[0] == "number" and tok[1] == "0":
            self.advance()
            return CoherentSheaf.zero()
        self.fail("expected an atom: O(...), T(...), or 0")

    def torsion_factor(self) -> int:
        tok = self.peek()
        value = self.signed_int()
        if value < 1:
            self.fail("torsion factors must be positive", tok[2])
        return value

    def item(self, allow_shift: bool):
        sheaf = self.atom()
        shifted = False
        if self.peek()[0] == "[":
            if not allow_shift:
                self.fail("shift suffix is not allowed here")
            self.advance()
            tok = self.expect("number", "the shift amount 1")
            if tok[1] != "1":
                self.fail("only the shift [1] occurs in the tilted heart", tok[2])
            self.expect("]", "']'")
            shifted = True
        return sheaf, shifted

    def sum_expr(self, allow_shift: bool):
        start = self.peek()[2]
        items = [self.item(allow_shift)]
        while self.peek()[0] == "+":
            self.advance()
            items.append(self.item(allow_shift))
        if not any(shifted for _, shifted in items):
            return direct_sum(*[sheaf for sheaf, _ in items])
        neg = direct_sum(*[sheaf for sheaf, shifted in items if shifted])
        pos = direct_sum(*[sheaf for sheaf, shifted in items if not shifted])
        try:
            return TiltedObject(neg, pos)
        except ValueError as exc:
            self.fail(str(exc), start)

    def tilted_expr(self) -> TiltedObject:
        start = self.peek()[2]
        self.advance()  # the "tilted" keyword
        self.expect("(", "'(' after tilted")
        neg = self.sum_expr(allow_shift=False)
        if isinstance(neg, TiltedObject):
            self.fail("nested tilted expressions are not allowed", start)
        self.expect(";", "';' between the two parts")
        pos = self.sum_expr(allow_shift=False)
        if isinstance(pos, TiltedObject):
            self.fail("nested tilted expressions are not allowed", start)
        self.expect(")", "')'")
        try:
            return TiltedObject(neg, pos)
        except ValueError as exc:
            self.fail(str(exc), start)

    # ----------------------------------------------------------- poly side

    def poly_expr(self) -> Poly:
        node = self.poly_term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.poly_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def poly_term(self) -> Poly:
        node = self.poly_unary()
        while self.peek()[0] == "*":
            self.advance()
            node = node * self.poly_unary()
        return node

    def poly_unary(self) -> Poly:
        if self.peek()[0] == "-":
            self.advance()
            return -self.poly_factor()
        return self.poly_factor()

    def poly_factor(self) -> Poly:
        base = self.poly_base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] == "-":
                self.fail("exponents must be non-negative")
            tok = self.expect("number", "an exponent")
            return base ** int(tok[1])
        return base

    def poly_base(self) -> Poly:
        tok = self.peek()
        if tok[0] == "number":
            self.advance()
            value = int(tok[1])
            if self.peek()[0] == "/":
                self.advance()
                den_tok = self.expect("number", "a denominator")
                den = int(den_tok[1])
                if den == 0:
                    self.fail("zero denominator", den_tok[2])
                return Poly.const(Fraction(value, den))
            return Poly.const(value)
        if tok[0] == "name" and tok[1] == "t":
            self.advance()
            return T_VAR
        if tok[0] == "(":
            self.advance()
            node = self.poly_expr()
            self.expect(")", "')'")
            return node
        self.fail("expected a number, t, or a parenthesized expression")


def parse_object(text: str):
    """Parse a sheaf or tilted-heart expression to its normal form."""
    parser = _Parser(text)
    tok = parser.peek()
    if tok[0] == "name" and tok[1] == "tilted":
        result = parser.tilted_expr()
    else:
        result = parser.sum_expr(allow_shift=True)
    if not parser.at_end():
        parser.fail("unexpected trailing input")
    return result


def parse_sheaf(text: str) -> CoherentSheaf:
    """Parse a plain sheaf expression; tilted forms and shifts are rejected."""
    parser = _Parser(text)
    tok = parser.peek()
    if tok[0] == "name" and tok[1] == "tilted":
        parser.fail("expected a sheaf expression, not a tilted one")
    result = parser.sum_expr(allow_shift=False)
    if not parser.at_end():
        parser.fail("unexpected trailing input")
    return result


def parse_poly(text: str) -> Poly:
    """Parse an element of Q[t]: integers, fractions, t, + - * ^ and parens."""
    parser = _Parser(text)
    poly = parser.poly_expr()
    if not parser.at_end():
        parser.fail("unexpected trailing input")
    return poly
