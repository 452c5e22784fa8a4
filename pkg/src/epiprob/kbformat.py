"""Text formats: knowledge bases, query sentences, decision problems and
witness-constraint files.

All formats are line oriented with ``#`` comments. Parsers raise
:class:`epiprob.errors.ParseError` carrying every diagnostic found; positions
are 1-based ``(line, column)``.

Sentence syntax: atoms ``Attr(ind)``, connectives ``~ & | ->`` binding in
that order, ``->`` right-associative, parentheses for grouping.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import lp
from .corpus import (ClassDecl, EvidentialCorpus, Independence, add_evidence,
                     thresholds_from_stakes)
from .credal import CredalSet, Interval, OutcomeSpace
from .decide import DecisionProblem
from .errors import EpiError, EvidenceRejected, InfeasibleError, ParseError
from .logic import And, Atom, Implies, Not, Or, Sentence
from .refclass import Membership, StatStatement, TaxonomyFact


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError("diagnostic positions are 1-based")
        if not self.message:
            raise ValueError("diagnostic message must be nonempty")

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"

    def as_dict(self):
        return {"line": self.line, "column": self.column,
                "message": self.message, "severity": self.severity}


# --- lexing ----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|<=|>=|[~&|()\[\],/*+\-{}=])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # number | ident | op
    text: str
    line: int
    col: int


def _tokenize(text, line=1, col0=1):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError([Diagnostic(line, col0 + pos, f"unexpected character {text[pos]!r}")])
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), line, col0 + pos))
        pos = m.end()
    return toks


class _Cursor:
    def __init__(self, toks, line, end_col):
        self.toks = toks
        self.i = 0
        self.line = line
        self.end_col = end_col

    def peek(self, offset=0) -> Optional[_Tok]:
        j = self.i + offset
        return self.toks[j] if j < len(self.toks) else None

    def at_end(self):
        return self.i >= len(self.toks)

    def error(self, message, tok=None):
        if tok is None:
            tok = self.peek()
        col = tok.col if tok is not None else self.end_col
        return ParseError([Diagnostic(self.line, col, message)])

    def next(self, what="token"):
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {what}, found end of line")
        self.i += 1
        return tok

    def accept(self, text):
        tok = self.peek()
        if tok is not None and tok.text == text and tok.kind != "number":
            self.i += 1
            return tok
        return None

    def expect(self, text):
        tok = self.peek()
        if tok is None or tok.text != text:
            found = "end of line" if tok is None else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}", tok)
        self.i += 1
        return tok

    def ident(self, what="identifier"):
        tok = self.peek()
        if tok is None or tok.kind != "ident":
            found = "end of line" if tok is None else repr(tok.text)
            raise self.error(f"expected {what}, found {found}", tok)
        self.i += 1
        return tok.text

    def done(self):
        if not self.at_end():
            raise self.error(f"unexpected {self.peek().text!r}")


# --- sentences -------------------------------------------------------------

def _sentence(cur: _Cursor) -> Sentence:
    left = _disjunction(cur)
    if cur.accept("->"):
        return Implies(left, _sentence(cur))
    return left


def _disjunction(cur):
    out = _conjunction(cur)
    while cur.accept("|"):
        out = Or(out, _conjunction(cur))
    return out


def _conjunction(cur):
    out = _unary(cur)
    while cur.accept("&"):
        out = And(out, _unary(cur))
    return out


def _unary(cur):
    if cur.accept("~"):
        return Not(_unary(cur))
    if cur.accept("("):
        inner = _sentence(cur)
        cur.expect(")")
        return inner
    tok = cur.peek()
    if tok is None or tok.kind != "ident":
        found = "end of input" if tok is None else repr(tok.text)
        raise cur.error(f"expected atom, found {found}", tok)
    attr = cur.ident()
    cur.expect("(")
    ind = cur.ident("individual name")
    cur.expect(")")
    return Atom(attr, ind)


def _strip_comment(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_query(text: str) -> Sentence:
    """Parse one sentence, e.g. ``~Fly(tweety) | Bird(tweety)``."""
    lines = text.splitlines() or [""]
    nonblank = [(i, l) for i, l in enumerate(lines, 1) if _strip_comment(l).strip()]
    if not nonblank:
        raise ParseError([Diagnostic(1, 1, "empty query")])
    if len(nonblank) > 1:
        raise ParseError([Diagnostic(nonblank[1][0], 1, "a query is a single line")])
    lineno, line = nonblank[0]
    body = _strip_comment(line)
    cur = _Cursor(_tokenize(body, lineno), lineno, len(body.rstrip()) + 1)
    s = _sentence(cur)
    cur.done()
    return s


def parse_candidates(text: str) -> list:
    """One sentence per nonblank line."""
    out, diags = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = _strip_comment(line)
        if not body.strip():
            continue
        try:
            cur = _Cursor(_tokenize(body, lineno), lineno, len(body.rstrip()) + 1)
            out.append(_sentence(cur))
            cur.done()
        except ParseError as exc:
            diags.extend(exc.diagnostics)
    if diags:
        raise ParseError(diags)
    return out


# --- numbers ---------------------------------------------------------------

def _number(cur: _Cursor, signed=False) -> float:
    neg = bool(signed and cur.accept("-"))
    if signed and not neg:
        cur.accept("+")
    tok = cur.peek()
    if tok is None or tok.kind != "number":
        found = "end of line" if tok is None else repr(tok.text)
        raise cur.error(f"expected number, found {found}", tok)
    cur.i += 1
    value = Fraction(tok.text)
    if cur.accept("/"):
        den = cur.peek()
        if den is None or den.kind != "number" or not den.text.isdigit():
            raise cur.error("expected integer denominator", den)
        cur.i += 1
        if int(den.text) == 0:
            raise cur.error("division by zero", den)
        if not tok.text.isdigit():
            raise cur.error("fractions must be INT/INT", tok)
        value /= int(den.text)
    return float(-value if neg else value)


def _interval(cur: _Cursor) -> Interval:
    start = cur.expect("[")
    lo = _number(cur)
    cur.expect(",")
    hi = _number(cur)
    cur.expect("]")
    if not (0.0 <= lo <= hi <= 1.0):
        raise cur.error("interval out of range", start)
    return Interval(lo, hi)


def _prob(cur: _Cursor) -> float:
    tok = cur.peek()
    value = _number(cur)
    if not 0.0 <= value <= 1.0:
        raise cur.error("probability out of range", tok)
    return value


# --- knowledge bases ------------------------------------------------------

def _kb_item(cur: _Cursor, keyword: _Tok):
    kw = keyword.text
    if kw == "class":
        item = ClassDecl(cur.ident("class name"))
    elif kw == "subset":
        sub = cur.ident("class name")
        sup_tok = cur.peek()
        sup = cur.ident("class name")
        if sub == sup:
            raise cur.error("a class cannot be a subset fact of itself", sup_tok)
        item = TaxonomyFact(sub, sup)
    elif kw == "member":
        item = Membership(cur.ident("individual name"), cur.ident("class name"))
    elif kw == "stat":
        negated = bool(cur.accept("~"))
        attr = cur.ident("attribute name")
        cur.expect("|")
        cls = cur.ident("class name")
        cur.expect("in")
        freq = _interval(cur)
        item = StatStatement(attr, cls, freq.complement() if negated else freq)
    elif kw == "sentence":
        if cur.at_end():
            raise cur.error("expected sentence")
        item = _sentence(cur)
    elif kw == "independent":
        a = cur.ident("individual name")
        b_tok = cur.peek()
        b = cur.ident("individual name")
        if a == b:
            raise cur.error("an individual cannot be independent of itself", b_tok)
        item = Independence(a, b)
    else:
        raise cur.error(f"unknown declaration {kw!r}", keyword)
    cur.done()
    return item


def parse_kb(text: str) -> EvidentialCorpus:
    """Parse a knowledge-base file into an evidential corpus."""
    diags = []
    stakes = None
    entries = []  # (line, col, item, error_rate or None)
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        try:
            toks = _tokenize(body, lineno)
            cur = _Cursor(toks, lineno, len(body.rstrip()) + 1)
            keyword = cur.peek()
            if keyword.kind != "ident":
                raise cur.error("expected a declaration keyword", keyword)
            cur.i += 1
            if keyword.text == "stakes":
                tok = cur.peek()
                ratio = _number(cur)
                cur.done()
                if stakes is not None:
                    raise cur.error("duplicate stakes declaration", keyword)
                if ratio <= 1:
                    raise cur.error("invalid stakes: the odds ratio must exceed 1", tok)
                stakes = ratio
            elif keyword.text == "evidence":
                # trailing "error PROB" (PROB may be a fraction)
                k = max((j for j, t in enumerate(toks) if t.text == "error" and t.kind == "ident"),
                        default=None)
                if k is None or k < 2:
                    raise cur.error("evidence needs a statement and a trailing 'error PROB'")
                rate_cur = _Cursor(toks[k + 1:], lineno, cur.end_col)
                rate = _prob(rate_cur)
                rate_cur.done()
                inner = _Cursor(toks[1:k], lineno, toks[k].col)
                inner_kw = inner.next("declaration keyword")
                if inner_kw.text in ("stakes", "evidence"):
                    raise inner.error(f"{inner_kw.text!r} cannot be reported as evidence", inner_kw)
                entries.append((lineno, keyword.col, _kb_item(inner, inner_kw), rate))
            else:
                entries.append((lineno, keyword.col, _kb_item(cur, keyword), None))
        except ParseError as exc:
            diags.extend(exc.diagnostics)
        except EpiError as exc:
            diags.append(Diagnostic(lineno, 1, str(exc)))

    if stakes is None:
        diags.append(Diagnostic(1, 1, "missing stakes declaration"))
    if diags:
        raise ParseError(diags)

    kb = EvidentialCorpus(thresholds_from_stakes(stakes))
    notes = []
    for lineno, col, item, rate in entries:
        try:
            kb = kb.add(item) if rate is None else add_evidence(kb, item, rate)
        except EvidenceRejected as exc:
            notes.append(Diagnostic(lineno, col, str(exc), "warning"))
        except EpiError as exc:
            diags.append(Diagnostic(lineno, col, str(exc)))
    if diags:
        raise ParseError(diags)
    return EvidentialCorpus(kb.thresholds, kb.sentences, kb.classes, kb.subsets,
                            kb.memberships, kb.stats, kb.independents, tuple(notes))


def format_kb(kb: EvidentialCorpus) -> str:
    """Canonical text for a corpus; ``parse_kb(format_kb(kb)) == kb``."""
    out = [f"stakes {kb.thresholds.stake_ratio!r}"]
    out += [f"class {c}" for c in sorted(kb.classes)]
    out += [f"subset {f.sub} {f.sup}" for f in sorted(kb.subsets)]
    out += [f"member {m.individual} {m.refclass}" for m in sorted(kb.memberships)]
    out += [f"stat {s.attribute} | {s.refclass} in [{s.freq.lower!r}, {s.freq.upper!r}]"
            for s in sorted(kb.stats)]
    out += [f"independent {i.first} {i.second}" for i in sorted(kb.independents)]
    out += [f"sentence {s}" for s in sorted(kb.sentences, key=str)]
    return "\n".join(out) + "\n"


# --- decision problems -----------------------------------------------------

def _linexpr(cur: _Cursor, states):
    """Signed ``c*STATE`` terms; ``P(STATE)`` is accepted for STATE."""
    coeffs = [0.0] * len(states)
    first = True
    while True:
        sign = 1.0
        if cur.accept("-"):
            sign = -1.0
        elif not cur.accept("+") and not first:
            break
        first = False
        coef = 1.0
        tok = cur.peek()
        if tok is not None and tok.kind == "number":
            coef = _number(cur)
            cur.expect("*")
        name_tok = cur.peek()
        name = cur.ident("state")
        if name == "P" and cur.accept("("):
            name_tok = cur.peek()
            name = cur.ident("state")
            cur.expect(")")
        if name not in states:
            raise cur.error(f"unknown state {name!r}", name_tok)
        coeffs[states.index(name)] += sign * coef
    return coeffs


def parse_decision(text: str) -> DecisionProblem:
    """Parse ``states`` / ``act`` / ``belief`` lines into a decision problem."""
    diags = []
    states = None
    states_line = 1
    acts = {}
    beliefs = []  # (line, raw tokens)
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        try:
            cur = _Cursor(_tokenize(body, lineno), lineno, len(body.rstrip()) + 1)
            kw = cur.next()
            if kw.text == "states":
                if states is not None:
                    raise cur.error("duplicate states declaration", kw)
                names = []
                while not cur.at_end():
                    tok = cur.peek()
                    name = cur.ident("state name")
                    if name in names:
                        raise cur.error(f"duplicate state {name!r}", tok)
                    names.append(name)
                if not names:
                    raise cur.error("states needs at least one state")
                states, states_line = names, lineno
            elif kw.text == "act":
                tok = cur.peek()
                name = cur.ident("act name")
                if name in acts:
                    raise cur.error(f"duplicate act {name!r}", tok)
                cur.expect("utilities")
                values = []
                while not cur.at_end():
                    values.append(_number(cur, signed=True))
                acts[name] = (lineno, cur.end_col, values)
            elif kw.text == "belief":
                beliefs.append((lineno, cur))
            else:
                raise cur.error(f"unknown declaration {kw.text!r}", kw)
        except ParseError as exc:
            diags.extend(exc.diagnostics)

    if states is None:
        diags.append(Diagnostic(1, 1, "missing states declaration"))
        raise ParseError(diags)
    if not acts:
        diags.append(Diagnostic(states_line, 1, "no acts declared"))
    for name, (lineno, end_col, values) in acts.items():
        if len(values) < len(states):
            missing = ", ".join(states[len(values):])
            diags.append(Diagnostic(lineno, end_col,
                                    f"missing utilities for act {name!r}, state(s) {missing}"))
        elif len(values) > len(states):
            diags.append(Diagnostic(lineno, end_col,
                                    f"act {name!r} has {len(values)} utilities for {len(states)} states"))

    cons = []
    for lineno, cur in beliefs:
        try:
            tok = cur.peek()
            if (tok is not None and tok.text == "P" and cur.peek(1) is not None
                    and cur.peek(1).text == "(" and cur.peek(3) is not None
                    and cur.peek(3).text == ")" and cur.peek(4) is not None
                    and cur.peek(4).text == "in"):
                cur.i += 2
                name_tok = cur.peek()
                name = cur.ident("state")
                if name not in states:
                    raise cur.error(f"unknown state {name!r}", name_tok)
                cur.expect(")")
                cur.expect("in")
                interval = _interval(cur)
                cur.done()
                row = tuple(float(s == name) for s in states)
                cons.append(lp.Constraint(row, ">=", interval.lower))
                cons.append(lp.Constraint(row, "<=", interval.upper))
                continue
            coeffs = _linexpr(cur, states)
            rel = cur.next("relation")
            if rel.text not in ("<=", ">=", "="):
                raise cur.error(f"expected '<=', '>=' or '=', found {rel.text!r}", rel)
            rhs = _number(cur, signed=True)
            cur.done()
            cons.append(lp.Constraint(tuple(coeffs), rel.text, rhs))
        except ParseError as exc:
            diags.extend(exc.diagnostics)
    if diags:
        raise ParseError(diags)

    space = OutcomeSpace(tuple(states))
    try:
        credal = CredalSet(space, cons)
    except InfeasibleError:
        line = beliefs[-1][0] if beliefs else 1
        raise ParseError([Diagnostic(line, 1, "infeasible beliefs")]) from None
    return DecisionProblem(space, tuple(acts), {a: v[2] for a, v in acts.items()}, credal)


# --- witness constraint files ---------------------------------------------

@dataclass(frozen=True)
class WitnessProblem:
    space: OutcomeSpace
    marginal: tuple = ()
    conditional: tuple = ()


def _event(cur: _Cursor, outcomes):
    labels = []
    if cur.accept("{"):
        if not cur.accept("}"):
            while True:
                tok = cur.peek()
                name = cur.ident("outcome")
                if name not in outcomes:
                    raise cur.error(f"unknown outcome {name!r}", tok)
                labels.append(name)
                if cur.accept("}"):
                    break
                cur.expect(",")
    else:
        tok = cur.peek()
        name = cur.ident("outcome or '{'")
        if name not in outcomes:
            raise cur.error(f"unknown outcome {name!r}", tok)
        labels.append(name)
    return frozenset(labels)


def parse_witness(text: str) -> WitnessProblem:
    """``outcomes``, ``marginal EVENT in [l,u]`` and
    ``conditional EVENT | EVENT in [l,u]`` lines; events are ``{a, b}`` or a
    bare outcome."""
    diags = []
    outcomes = None
    marginal, conditional = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        try:
            cur = _Cursor(_tokenize(body, lineno), lineno, len(body.rstrip()) + 1)
            kw = cur.next()
            if kw.text == "outcomes":
                names = []
                while not cur.at_end():
                    names.append(cur.ident("outcome name"))
                if not names or len(set(names)) != len(names):
                    raise cur.error("outcomes must be a nonempty list of distinct names", kw)
                outcomes = names
            elif kw.text in ("marginal", "conditional"):
                if outcomes is None:
                    raise cur.error("outcomes must be declared first", kw)
                first = _event(cur, outcomes)
                given = None
                if kw.text == "conditional":
                    cur.expect("|")
                    given = _event(cur, outcomes)
                cur.expect("in")
                interval = _interval(cur)
                cur.done()
                if given is None:
                    marginal.append((first, interval))
                else:
                    conditional.append((first, given, interval))
            else:
                raise cur.error(f"unknown declaration {kw.text!r}", kw)
        except ParseError as exc:
            diags.extend(exc.diagnostics)
    if outcomes is None:
        diags.append(Diagnostic(1, 1, "missing outcomes declaration"))
    if diags:
        raise ParseError(diags)
    return WitnessProblem(OutcomeSpace(tuple(outcomes)), tuple(marginal), tuple(conditional))
