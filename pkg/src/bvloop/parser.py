"""Expression language for elements.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := literal | symbol | '(' expr ')' | '{' expr ',' expr '}' | 'D' '(' expr ')'

Literals are integers or exact rationals ``p/q``.  Symbols are ``a3``, ``e2``,
``x3`` and ``h2``, carrying the degree subscript of the generator.  Parsing
never looks at the signature; subscripts are validated when the tree is
evaluated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from . import bv, hopf
from .config import RunConfig
from .superalgebra import AlgebraError, Basis, Element, Signature, generator


class ExpressionError(ValueError):
    """Syntax or elaboration error pointing at a column of the source."""

    def __init__(self, msg: str, pos: int, src: str = ""):
        self.pos = pos
        self.src = src
        super().__init__(f"{msg} at column {pos + 1}")

    def caret(self) -> str:
        return f"{self.src}\n{' ' * self.pos}^"


# -- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Sym:
    symbol: str   # 'a', 'e', 'x' or 'h'
    subscript: int
    pos: int


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]   # (sign, node)
    pos: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]
    pos: int


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int
    pos: int


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Delta:
    arg: "Node"
    pos: int


Node = Union[Num, Sym, Sum, Product, Power, Bracket, Delta]


# -- tokenizer ------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+/\d+)|(?P<int>\d+)|(?P<sym>[aexh]\d+)|(?P<D>D)|(?P<op>[-+*^(){},]))"
)


def tokenize(src: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            bad = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ExpressionError(f"unexpected character {src[bad]!r}", bad, src)
        kind = m.lastgroup
        text = m.group(kind)
        out.append((kind, text, m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


# -- recursive descent ------------------------------------------------------


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg: str):
        kind, text, pos = self.tok
        found = "end of input" if kind == "end" else repr(text)
        raise ExpressionError(f"{msg}, found {found}", pos, self.src)

    def take(self, text: str) -> int:
        kind, t, pos = self.tok
        if kind != "op" or t != text:
            self.error(f"expected {text!r}")
        self.i += 1
        return pos

    def at(self, text: str) -> bool:
        kind, t, _ = self.tok
        return kind == "op" and t == text

    def expr(self) -> Node:
        pos = self.tok[2]
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        terms = [(sign, self.term())]
        while self.at("+") or self.at("-"):
            sign = 1 if self.tok[1] == "+" else -1
            self.i += 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms), pos)

    def term(self) -> Node:
        pos = self.tok[2]
        factors = [self.factor()]
        while self.at("*"):
            self.i += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors), pos)

    def factor(self) -> Node:
        base = self.atom()
        if self.at("^"):
            pos = self.take("^")
            kind, text, _ = self.tok
            if kind != "int":
                self.error("expected a nonnegative integer exponent")
            self.i += 1
            return Power(base, int(text), pos)
        return base

    def atom(self) -> Node:
        kind, text, pos = self.tok
        if kind in ("int", "rat"):
            self.i += 1
            try:
                value = Fraction(text)
            except ZeroDivisionError:
                raise ExpressionError("zero denominator", pos, self.src) from None
            return Num(value, pos)
        if kind == "sym":
            self.i += 1
            return Sym(text[0], int(text[1:]), pos)
        if kind == "D":
            self.i += 1
            self.take("(")
            arg = self.expr()
            self.take(")")
            return Delta(arg, pos)
        if self.at("("):
            self.i += 1
            inner = self.expr()
            self.take(")")
            return inner
        if self.at("{"):
            self.i += 1
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("}")
            return Bracket(left, right, pos)
        self.error("expected a number, symbol, '(', '{' or 'D('")


def parse(src: str) -> Node:
    p = _Parser(src)
    node = p.expr()
    if p.tok[0] != "end":
        p.error("unexpected trailing input")
    return node


# -- elaboration ------------------------------------------------------------


def _symbols(node: Node):
    if isinstance(node, Sym):
        yield node
    elif isinstance(node, Sum):
        for _, t in node.terms:
            yield from _symbols(t)
    elif isinstance(node, Product):
        for f in node.factors:
            yield from _symbols(f)
    elif isinstance(node, Power):
        yield from _symbols(node.base)
    elif isinstance(node, Bracket):
        yield from _symbols(node.left)
        yield from _symbols(node.right)
    elif isinstance(node, Delta):
        yield from _symbols(node.arg)


def _context(node: Node, src: str) -> Basis:
    """PONTRJAGIN if the expression names any x generator, INTERSECTION otherwise."""
    syms = list(_symbols(node))
    xs = [s for s in syms if s.symbol == "x"]
    if not xs:
        return Basis.INTERSECTION
    for s in syms:
        if s.symbol in "ah":
            raise ExpressionError(f"cannot mix {s.symbol}{s.subscript} with x generators", s.pos, src)
    return Basis.PONTRJAGIN


class _Evaluator:
    def __init__(self, sig: Signature, basis: Basis, src: str):
        self.sig = sig
        self.basis = basis
        self.src = src

    def fail(self, msg: str, pos: int):
        raise ExpressionError(msg, pos, self.src)

    def symbol(self, s: Sym) -> Element:
        odd = s.symbol in "ax"
        if (s.subscript % 2 == 1) != odd or s.subscript < (3 if odd else 2):
            self.fail(f"{s.symbol} takes {'odd subscripts >= 3' if odd else 'even subscripts >= 2'}", s.pos)
        l = (s.subscript - 1) // 2 if odd else s.subscript // 2
        if not (self.sig.k <= l <= self.sig.n):
            lo, hi = (2 * self.sig.k + 1, 2 * self.sig.n + 1) if odd else (2 * self.sig.k, 2 * self.sig.n)
            self.fail(f"{s.symbol}{s.subscript} is not a generator for n={self.sig.n}, k={self.sig.k} "
                      f"(subscripts {lo}..{hi})", s.pos)
        if s.symbol == "h":
            return bv.newton_primitive(l, self.sig)
        return generator(self.sig, s.symbol, l, self.basis)

    def __call__(self, node: Node) -> Element:
        try:
            return self.visit(node)
        except AlgebraError as exc:
            self.fail(str(exc), getattr(node, "pos", 0))

    def visit(self, node: Node) -> Element:
        if isinstance(node, Num):
            return Element.scalar(self.sig, node.value, self.basis)
        if isinstance(node, Sym):
            return self.symbol(node)
        if isinstance(node, Sum):
            out = Element.zero(self.sig, self.basis)
            for sign, t in node.terms:
                v = self.visit(t)
                out = out + v if sign > 0 else out - v
            return out
        if isinstance(node, Product):
            out = self.visit(node.factors[0])
            for f in node.factors[1:]:
                out = out * self.visit(f)
            return out
        if isinstance(node, Power):
            return self.visit(node.base) ** node.exponent
        if isinstance(node, Bracket):
            a, b = self.visit(node.left), self.visit(node.right)
            if self.basis is Basis.PONTRJAGIN:
                return hopf.to_pontrjagin(bv.bracket_deviation(hopf.to_intersection(a), hopf.to_intersection(b)))
            return bv.bracket_deviation(a, b)
        if isinstance(node, Delta):
            a = self.visit(node.arg)
            if self.basis is Basis.PONTRJAGIN:
                return hopf.delta_pontrjagin(a)
            return bv.bv_delta(a)
        raise TypeError(f"not an expression node: {node!r}")


def evaluate(node: Node, cfg: Union[RunConfig, Signature], src: str = "") -> Element:
    """Evaluate a parsed expression.

    Expressions in a/e/h are computed in the intersection basis (h names the
    Newton primitive); expressions in x/e in the Pontrjagin ring.  With
    ``cfg.basis == "symplectic"`` the result is rewritten in alpha/h.
    """
    sig = cfg if isinstance(cfg, Signature) else cfg.signature
    basis = _context(node, src)
    out = _Evaluator(sig, basis, src)(node)
    if isinstance(cfg, RunConfig):
        if cfg.basis == "symplectic":
            if basis is Basis.PONTRJAGIN:
                out = hopf.to_intersection(out)
            out = bv.to_h_basis(out)
        elif cfg.basis == "pontrjagin" and basis is Basis.INTERSECTION:
            out = hopf.to_pontrjagin(out)
    return out


def eval_expr(src: str, cfg: Union[RunConfig, Signature]) -> Element:
    return evaluate(parse(src), cfg, src)
