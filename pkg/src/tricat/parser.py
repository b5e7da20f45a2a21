"""Surface syntax for objects and class expressions.

Grammar::

    expr    := NAME                                   # all | zero
             | NAME '[' objects ']'                   # gen | downray | upray
             | NAME '(' expr ')'                      # add, summands, perpl, perpr,
                                                      # ususp, ucosusp, delta, thick,
                                                      # wedge, vee, tilde, bracket
             | NAME '(' expr ',' expr ')'             # union, intersect, star
             | NAME '(' expr ',' INT ')'              # shift, epsw, epsv, bracketn
    objects := object (',' object)*
    object  := '0' | term ('+' term)*
    term    := [INT '*'] LABEL ['@' INT]

``LABEL@d`` is the indecomposable ``LABEL`` shifted ``d`` times (graded
models; the degree defaults to 0).  Whitespace is ignored.
"""

from __future__ import annotations

import re
from typing import List, Tuple

from . import classes as C
from .model import IndecRef, ModelSpec, ObjClass, ParseError

GRAMMAR = __doc__.split("Grammar::", 1)[1].split("``LABEL@d``", 1)[0].rstrip()

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[\[\](),+*@]))")

_UNARY = {"add": C.Add, "summands": C.Summands, "perpl": C.PerpL, "perpr": C.PerpR,
          "ususp": C.USusp, "ucosusp": C.UCosusp, "delta": C.Delta, "thick": C.Thick,
          "wedge": C.Wedge, "vee": C.Vee, "tilde": C.Tilde, "bracket": C.Bracket}
_BINARY = {"union": C.Union, "intersect": C.Intersect, "star": C.Star}
_INDEXED = {"shift": C.Shift, "epsw": C.EpsW, "epsv": C.EpsV, "bracketn": C.BracketN}
_LISTS = {"gen": C.Gen, "downray": C.DownRay, "upray": C.UpRay}


class ExprSyntaxError(ParseError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<here>{text[pos:]}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str, model: ModelSpec):
        self.text = text
        self.model = model
        self.toks: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ExprSyntaxError("unexpected character", pos, text)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            raise ExprSyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        self.i += 1
        return tok

    def done(self):
        tok = self.peek()
        if tok[0] != "eof":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2], self.text)

    # objects --------------------------------------------------------------

    def obj(self) -> ObjClass:
        tok = self.peek()
        if tok[0] == "int" and tok[1] == "0" and (self.i + 1 >= len(self.toks) or self.toks[self.i + 1][1] != "*"):
            self.i += 1
            return ObjClass()
        refs = self.term()
        while self.peek()[1] == "+":
            self.i += 1
            refs += self.term()
        return ObjClass(tuple(refs))

    def term(self) -> List[IndecRef]:
        mult = 1
        if self.peek()[0] == "int":
            mult = int(self.take("int")[1])
            self.take("op", "*")
            if mult < 0:
                raise ExprSyntaxError("negative multiplicity", self.peek()[2], self.text)
        _, label, pos = self.take("name")
        if label not in self.model.indecs:
            raise ExprSyntaxError(f"unknown indecomposable {label!r}", pos, self.text)
        if self.model.graded:
            deg = 0
            if self.peek()[1] == "@":
                self.i += 1
                deg = int(self.take("int")[1])
            ref = IndecRef(label, deg)
        else:
            if self.peek()[1] == "@":
                raise ExprSyntaxError("degrees are only meaningful in graded models", self.peek()[2], self.text)
            ref = IndecRef(label)
        return [ref] * mult

    def objects(self) -> Tuple[ObjClass, ...]:
        out = [self.obj()]
        while self.peek()[1] == ",":
            self.i += 1
            out.append(self.obj())
        return tuple(out)

    # expressions ------------------------------------------------------------

    def expr(self) -> C.Expr:
        _, name, pos = self.take("name")
        key = name.lower()
        if key == "all":
            return C.All()
        if key == "zero":
            return C.Zero()
        if key in _LISTS:
            self.take("op", "[")
            objs = self.objects()
            self.take("op", "]")
            return _LISTS[key](objs)
        self.take("op", "(")
        if key in _UNARY:
            e = self.expr()
            self.take("op", ")")
            return _UNARY[key](e)
        if key in _BINARY:
            a = self.expr()
            self.take("op", ",")
            b = self.expr()
            self.take("op", ")")
            return _BINARY[key](a, b)
        if key in _INDEXED:
            e = self.expr()
            self.take("op", ",")
            _, n, npos = self.take("int")
            self.take("op", ")")
            try:
                return _INDEXED[key](e, int(n))
            except ValueError as exc:
                raise ExprSyntaxError(str(exc), npos, self.text) from None
        raise ExprSyntaxError(f"unknown operator {name!r}", pos, self.text)


def parse_expr(text: str, model: ModelSpec) -> C.Expr:
    p = _Parser(text, model)
    e = p.expr()
    p.done()
    return e


def parse_obj(text: str, model: ModelSpec) -> ObjClass:
    p = _Parser(text, model)
    o = p.obj()
    p.done()
    return o
