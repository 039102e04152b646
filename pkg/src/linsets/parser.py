"""Text syntax for q-polynomials.

    poly   := ws ['-'] term (ws ('+'|'-') ws term)* ws
    term   := [coef ws '*' ws] var | coef
    var    := 'x' frob?
    frob   := '^q' | '^q^' uint | '^(q^' uint ')'
    coef   := cterm                      (sums need parentheses)
    cexpr  := cterm (('+'|'-') cterm)*
    cterm  := cfact ('*' cfact)*
    cfact  := catom ['^' uint]
    catom  := uint | 'g' | '(' cexpr ')'

Whitespace is allowed between any two tokens.  A term without ``x`` is a
constant and must evaluate to 0 (a nonzero constant is not a q-polynomial).
"""

from __future__ import annotations

from .errors import ExponentOutOfRange, ParseError
from .linpoly import QPoly


class _Parser:
    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.pos = 0

    # -- low level -------------------------------------------------------

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch, what=None):
        if not self.eat(ch):
            self.fail(f"expected {what or repr(ch)}", [what or repr(ch)])

    def fail(self, msg, expected=()):
        raise ParseError(msg, self.pos, expected)

    def uint(self):
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an unsigned integer", ["uint"])
        return int(self.text[start:self.pos])

    # -- coefficients ------------------------------------------------------

    def catom(self):
        c = self.peek()
        if c.isdigit():
            return self.ctx(self.uint())
        if c == "g":
            self.pos += 1
            return self.ctx.gen
        if c == "(":
            self.pos += 1
            v = self.cexpr()
            self.expect(")")
            return v
        self.fail("expected a coefficient", ["uint", "'g'", "'('"])

    def cfact(self):
        v = self.catom()
        save = self.pos
        if self.eat("^"):
            if self.peek().isdigit():
                return v ** self.uint()
            self.pos = save
        return v

    def cterm(self):
        v = self.cfact()
        while True:
            save = self.pos
            if not self.eat("*"):
                return v
            if self.peek() not in ("(", "g") and not self.peek().isdigit():
                self.pos = save  # the '*' belongs to 'coef * x'
                return v
            v = v * self.cfact()

    def cexpr(self):
        v = self.cterm()
        while True:
            if self.eat("+"):
                v = v + self.cterm()
            elif self.eat("-"):
                v = v - self.cterm()
            else:
                return v

    # -- polynomial --------------------------------------------------------

    def frob(self):
        if not self.eat("^"):
            return 0
        if self.eat("("):
            self.expect("q", "'q'")
            self.expect("^", "'^'")
            k = self.uint()
            self.expect(")")
            return k
        if not self.eat("q"):
            self.fail("expected 'q' after '^'", ["'q'", "'(q^'"])
        if self.eat("^"):
            if self.peek().isdigit():
                return self.uint()
            self.fail("expected an exponent after 'q^'", ["uint"])
        return 1

    def var(self):
        self.expect("x", "'x'")
        start = self.pos
        k = self.frob()
        if k >= self.ctx.n:
            raise ExponentOutOfRange(f"exponent q^{k} needs k < n = {self.ctx.n}", start, [f"k < {self.ctx.n}"])
        return k

    def term(self):
        if self.peek() == "x":
            return self.var(), self.ctx.one
        start = self.pos
        c = self.cterm()
        if self.eat("*"):
            return self.var(), c
        if c:
            raise ParseError("a constant term must be 0", start, ["'*'"])
        return None, c

    def poly(self):
        coeffs = [self.ctx.zero] * self.ctx.n
        sign = -1 if self.eat("-") else 1
        while True:
            k, c = self.term()
            if k is not None:
                coeffs[k] = coeffs[k] + (c if sign > 0 else -c)
            if self.eat("+"):
                sign = 1
            elif self.eat("-"):
                sign = -1
            else:
                break
        self.ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing input", ["'+'", "'-'", "end of input"])
        return QPoly(self.ctx, coeffs)


def parse_qpoly(text, ctx):
    if not text.strip():
        raise ParseError("empty polynomial", 0, ["term"])
    return _Parser(text, ctx).poly()


def parse_elem(text, ctx):
    """A bare coefficient expression (cexpr) such as ``g^5+1``."""
    p = _Parser(text, ctx)
    v = p.cexpr()
    p.ws()
    if p.pos != len(text):
        p.fail("unexpected trailing input", ["end of input"])
    return v


def format_elem(c):
    if c.log == 0:
        return "1"
    if c.log < 0:
        return "0"
    return "g" if c.log == 1 else f"g^{c.log}"


def format_qpoly(f):
    parts = []
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        var = "x" if i == 0 else ("x^q" if i == 1 else f"x^q^{i}")
        parts.append(var if a.log == 0 else f"{format_elem(a)}*{var}")
    return " + ".join(parts) if parts else "0"
