"""Text syntax for every logic family: lexer, recursive-descent parsers and
a fully parenthesised printer such that ``parse(show(f), tag) == f``."""
import re
from dataclasses import dataclass

from .syntax import gmc, msol, temporal as tl

TAGS = ("msol", "gmc", "cctl", "stl")


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


class ParseError(ValueError):
    def __init__(self, message, span, expected=()):
        self.span = span
        self.expected = tuple(sorted(set(expected)))
        where = f"line {span.line}, column {span.column}"
        extra = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at {where}{extra}")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op><->|->|<=|[<>=!&|()\[\]{}.,])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "eof"
    text: str
    start: int
    end: int


def _span(text, start, end):
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(start, end, line, col)


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1))
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), m.start(), m.end()))
        pos = m.end()
    out.append(Token("eof", "", len(text), len(text)))
    return out


class _Parser:
    keywords = frozenset()

    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, expected=(), tok=None):
        tok = tok or self.tok
        end = max(tok.end, tok.start + 1) if tok.kind != "eof" else tok.start
        start = min(tok.start, max(len(self.text) - 1, 0))
        raise ParseError(msg, _span(self.text, start, max(end, start)), expected)

    def at(self, *texts):
        t = self.tok
        return t.kind in ("op", "ident") and t.text in texts

    def take(self, text):
        if not self.at(text):
            self.error(f"unexpected {self.tok.text or 'end of input'!r}", (text,))
        tok = self.tok
        self.i += 1
        return tok

    def name(self):
        t = self.tok
        if t.kind != "ident" or t.text in self.keywords:
            self.error(f"expected a variable name, got {t.text or 'end of input'!r}", ("identifier",))
        self.i += 1
        return t.text

    def number(self):
        t = self.tok
        if t.kind != "num":
            self.error("expected a natural number", ("number",))
        self.i += 1
        return int(t.text)

    def parse(self):
        f = self.formula()
        if self.tok.kind != "eof":
            self.error(f"trailing input {self.tok.text!r}", ("end of input",))
        return f


class _MsolParser(_Parser):
    fo_quant = {"E": msol.Exists, "A": msol.Forall}
    so_quant = {
        "ES": (msol.SoExists, msol.QuantKind.S), "AS": (msol.SoForall, msol.QuantKind.S),
        "ET": (msol.SoExists, msol.QuantKind.T), "AT": (msol.SoForall, msol.QuantKind.T),
        "EP": (msol.SoExists, msol.QuantKind.P), "AP": (msol.SoForall, msol.QuantKind.P),
    }
    rel = {"<=": msol.Leq, "<": msol.Lt, "=": msol.Eq}
    keywords = frozenset(fo_quant) | frozenset(so_quant) | {"in", "tt", "ff"}

    def formula(self):
        left = self.implication()
        while self.at("<->"):
            self.i += 1
            left = msol.Iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return msol.Implies(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.at("|"):
            self.i += 1
            left = msol.Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = msol.And(left, self.unary())
        return left

    def unary(self):
        t = self.tok
        if self.at("!"):
            self.i += 1
            return msol.Not(self.unary())
        if t.kind == "ident" and t.text in self.fo_quant:
            self.i += 1
            v = self.name()
            self.take(".")
            return self.fo_quant[t.text](v, self.formula())
        if t.kind == "ident" and t.text in self.so_quant:
            self.i += 1
            v = self.name()
            self.take(".")
            cls, kind = self.so_quant[t.text]
            return cls(kind, v, self.formula())
        return self.primary()

    def primary(self):
        t = self.tok
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        if self.at("tt"):
            self.i += 1
            return msol.TT()
        if self.at("ff"):
            self.i += 1
            return msol.FF()
        if t.kind == "ident" and t.text.startswith("P_") and len(t.text) > 2 and self.peek().text == "(":
            self.i += 2
            v = self.name()
            self.take(")")
            return msol.Atom(t.text[2:], v)
        if t.kind == "ident" and t.text not in self.keywords:
            left = self.name()
            if self.at("in"):
                self.i += 1
                return msol.Member(left, self.name())
            if self.at(*self.rel):
                op = self.rel[self.tok.text]
                self.i += 1
                return op(left, self.name())
            self.error("expected a relation", ("in", "<=", "<", "="))
        self.error(f"unexpected {t.text or 'end of input'!r}",
                   ("(", "!", "tt", "ff", "P_<prop>(", "identifier", *self.fo_quant, *self.so_quant))


class _GmcParser(_Parser):
    keywords = frozenset({"mu", "nu", "tt", "ff"})

    def formula(self):
        if self.at("mu", "nu"):
            return self.fixpoint()
        left = self.conjunction()
        while self.at("|"):
            self.i += 1
            left = gmc.Or(left, self.conjunction())
        return left

    def fixpoint(self):
        cls = gmc.Mu if self.tok.text == "mu" else gmc.Nu
        self.i += 1
        t = self.tok
        v = self.name()
        if not v[0].isupper():
            self.error("fixpoint variables start with an upper-case letter", ("variable",), t)
        self.take(".")
        return cls(v, self.formula())

    def conjunction(self):
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = gmc.And(left, self.unary())
        return left

    def unary(self):
        if self.at("!"):
            self.i += 1
            return gmc.Not(self.unary())
        if self.at("<"):
            self.i += 1
            k = self.number()
            self.take(">")
            return gmc.Diamond(k, self.unary())
        if self.at("["):
            self.i += 1
            k = self.number()
            self.take("]")
            return gmc.Box(k, self.unary())
        if self.at("mu", "nu"):
            return self.fixpoint()
        return self.primary()

    def primary(self):
        t = self.tok
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        if self.at("tt"):
            self.i += 1
            return gmc.TT()
        if self.at("ff"):
            self.i += 1
            return gmc.FF()
        if t.kind == "ident" and t.text not in self.keywords:
            self.i += 1
            return gmc.Var(t.text) if t.text[0].isupper() else gmc.Prop(t.text)
        self.error(f"unexpected {t.text or 'end of input'!r}",
                   ("(", "!", "<k>", "[k]", "mu", "nu", "tt", "ff", "identifier"))


class _TemporalParser(_Parser):
    unary_ops = {"E": tl.E, "A": tl.A, "X": tl.Next, "F": tl.Eventually, "G": tl.Globally}
    lattice_ops = {"UU": tl.UU, "RR": tl.RR, "SS": tl.SS, "BB": tl.BB}
    keywords = frozenset(unary_ops) | frozenset(lattice_ops) | {"U", "R", "D", "tt", "ff"}

    def __init__(self, text, semilattice):
        super().__init__(text)
        self.semilattice = semilattice

    def formula(self):
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return tl.Implies(left, self.formula())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.at("|"):
            self.i += 1
            left = tl.Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.binary()
        while self.at("&"):
            self.i += 1
            left = tl.And(left, self.binary())
        return left

    def binary(self):
        left = self.unary()
        if self.at("U", "R"):
            cls = tl.Until if self.tok.text == "U" else tl.Release
            self.i += 1
            return cls(left, self.binary())
        if self.at(*self.lattice_ops):
            if not self.semilattice:
                self.error("semilattice operators need the stl grammar", ("U", "R", "&", "|"))
            cls = self.lattice_ops[self.tok.text]
            self.i += 1
            self.take("{")
            chi = self.formula()
            self.take("}")
            return cls(chi, left, self.binary())
        return left

    def unary(self):
        t = self.tok
        if self.at("!"):
            self.i += 1
            return tl.Not(self.unary())
        if t.kind == "ident" and t.text in self.unary_ops:
            self.i += 1
            return self.unary_ops[t.text](self.unary())
        if self.at("D"):
            self.i += 1
            self.take("{")
            k = self.number()
            self.take("}")
            return tl.D(k, self.unary())
        return self.primary()

    def primary(self):
        t = self.tok
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        if self.at("tt"):
            self.i += 1
            return tl.TT()
        if self.at("ff"):
            self.i += 1
            return tl.FF()
        if t.kind == "ident" and t.text not in self.keywords:
            if not t.text[0].islower():
                self.error("atomic propositions start with a lower-case letter", ("atom",))
            self.i += 1
            return tl.Prop(t.text)
        self.error(f"unexpected {t.text or 'end of input'!r}",
                   ("(", "!", "E", "A", "X", "F", "G", "D{k}", "tt", "ff", "atom"))


def parse(text, tag):
    if tag == "msol":
        return _MsolParser(text).parse()
    if tag == "gmc":
        return _GmcParser(text).parse()
    if tag in ("cctl", "stl"):
        f = _TemporalParser(text, tag == "stl").parse()
        try:
            tl.check_sorts(f)
        except tl.SortError as e:
            raise ParseError(str(e), _span(text, 0, len(text))) from None
        return f
    raise ValueError(f"unknown logic tag {tag!r}; expected one of {TAGS}")


def parse_corpus(text, tag):
    """Newline-separated formulas; blank lines and ``#`` comments skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line, tag))
    return out


# printing ------------------------------------------------------------------

_MSOL_BIN = {msol.And: "&", msol.Or: "|", msol.Implies: "->", msol.Iff: "<->"}
_MSOL_REL = {msol.Leq: "<=", msol.Lt: "<", msol.Eq: "="}
_SO_PREFIX = {msol.SoExists: "E", msol.SoForall: "A"}
_TL_BIN = {tl.And: "&", tl.Or: "|", tl.Implies: "->", tl.Until: "U", tl.Release: "R"}
_TL_UNARY = {tl.Not: "!", tl.E: "E ", tl.A: "A ", tl.Next: "X ",
             tl.Eventually: "F ", tl.Globally: "G "}
_TL_LATTICE = {tl.UU: "UU", tl.RR: "RR", tl.SS: "SS", tl.BB: "BB"}


def _wrap(s, binder, ctx):
    # binders extend as far right as possible, so guard them inside operands
    return f"({s})" if binder and ctx == "operand" else s


def _show_msol(f, ctx):
    if isinstance(f, msol.TT):
        return "tt"
    if isinstance(f, msol.FF):
        return "ff"
    if isinstance(f, msol.Atom):
        return f"P_{f.prop}({f.var})"
    if type(f) in _MSOL_REL:
        return f"{f.left} {_MSOL_REL[type(f)]} {f.right}"
    if isinstance(f, msol.Member):
        return f"{f.var} in {f.setvar}"
    if isinstance(f, msol.Not):
        return "!" + _show_msol(f.body, "operand")
    if type(f) in _MSOL_BIN:
        return (f"({_show_msol(f.left, 'operand')} {_MSOL_BIN[type(f)]} "
                f"{_show_msol(f.right, 'operand')})")
    if isinstance(f, msol.Exists):
        s = f"E {f.var}. {_show_msol(f.body, 'binder')}"
    elif isinstance(f, msol.Forall):
        s = f"A {f.var}. {_show_msol(f.body, 'binder')}"
    else:
        q = _SO_PREFIX[type(f)] + f.kind.value
        s = f"{q} {f.var}. {_show_msol(f.body, 'binder')}"
    return _wrap(s, True, ctx)


def _show_gmc(f, ctx):
    if isinstance(f, gmc.TT):
        return "tt"
    if isinstance(f, gmc.FF):
        return "ff"
    if isinstance(f, (gmc.Prop, gmc.Var)):
        return f.name
    if isinstance(f, gmc.Not):
        return "!" + _show_gmc(f.body, "operand")
    if isinstance(f, gmc.And):
        return f"({_show_gmc(f.left, 'operand')} & {_show_gmc(f.right, 'operand')})"
    if isinstance(f, gmc.Or):
        return f"({_show_gmc(f.left, 'operand')} | {_show_gmc(f.right, 'operand')})"
    if isinstance(f, gmc.Diamond):
        return f"<{f.grade}> {_show_gmc(f.body, 'operand')}"
    if isinstance(f, gmc.Box):
        return f"[{f.grade}] {_show_gmc(f.body, 'operand')}"
    op = "mu" if isinstance(f, gmc.Mu) else "nu"
    return _wrap(f"{op} {f.var}. {_show_gmc(f.body, 'binder')}", True, ctx)


def _show_tl(f):
    if isinstance(f, tl.TT):
        return "tt"
    if isinstance(f, tl.FF):
        return "ff"
    if isinstance(f, tl.Prop):
        return f.name
    if type(f) in _TL_UNARY:
        return _TL_UNARY[type(f)] + _show_tl(f.body)
    if isinstance(f, tl.D):
        return f"D{{{f.grade}}} {_show_tl(f.body)}"
    if type(f) in _TL_BIN:
        return f"({_show_tl(f.left)} {_TL_BIN[type(f)]} {_show_tl(f.right)})"
    return f"({_show_tl(f.left)} {_TL_LATTICE[type(f)]}{{{_show_tl(f.chi)}}} {_show_tl(f.right)})"


def show(f):
    """Canonical, fully parenthesised text of any formula."""
    if isinstance(f, msol.Formula):
        return _show_msol(f, "top")
    if isinstance(f, gmc.Formula):
        return _show_gmc(f, "top")
    if isinstance(f, tl.Formula):
        return _show_tl(f)
    raise TypeError(f"not a formula: {f!r}")


def tag_of(f):
    if isinstance(f, msol.Formula):
        return "msol"
    if isinstance(f, gmc.Formula):
        return "gmc"
    return "stl" if tl.has_semilattice(f) else "cctl"
