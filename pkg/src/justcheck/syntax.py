"""Terms of the synchronous session calculus, global types and projection types.

Threads and projection types share constructors: a projection type is a thread
whose receive choices are unary, extended with :class:`Merge`.  Every prefix and
every ``rec`` binder of a parsed network carries an ``origin`` identifier (an
*instruction*); substitution copies these ids, so they survive unfolding.
"""
from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

LocationName = str
MessageLabel = str
RecVarName = str
InstructionId = str


class ParseError(ValueError):
    """Raised for malformed or invalid DSL input; carries a source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        self.message = message
        where = f"{line}:{col}: " if line else ""
        super().__init__(where + message)


class SelfSendWarning(UserWarning):
    pass


# --------------------------------------------------------------------------
# thread / projection-type terms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class End:
    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Var:
    name: RecVarName

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Rec:
    name: RecVarName
    body: "Term"
    origin: Optional[InstructionId] = None

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Send:
    target: LocationName
    label: MessageLabel
    cont: "Term"
    origin: Optional[InstructionId] = None


@dataclass(frozen=True)
class Recv:
    source: LocationName
    label: MessageLabel
    cont: "Term"
    origin: Optional[InstructionId] = None


@dataclass(frozen=True)
class IChoice:
    """Internal choice; a single branch is an ordinary send prefix."""
    branches: tuple[Send, ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("internal choice needs at least one branch")

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class EChoice:
    """External choice; a single branch is an ordinary receive prefix."""
    branches: tuple[Recv, ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("external choice needs at least one branch")

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Committed:
    """A send the thread has already selected (the underlined send of a network state)."""
    target: LocationName
    label: MessageLabel
    cont: "Term"
    origin: Optional[InstructionId] = None

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Merge:
    operands: tuple["Term", ...]

    def __post_init__(self):
        if not self.operands:
            raise ValueError("merge needs at least one operand")

    def __str__(self) -> str:
        return pretty_print(self)


Term = Union[End, Var, Rec, IChoice, EChoice, Committed, Merge]


def send(target, label, cont=None, origin=None) -> IChoice:
    return IChoice((Send(target, label, End() if cont is None else cont, origin),))


def recv(source, label, cont=None, origin=None) -> EChoice:
    return EChoice((Recv(source, label, End() if cont is None else cont, origin),))


# --------------------------------------------------------------------------
# global types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GEnd:
    def __str__(self) -> str:
        return "end"


@dataclass(frozen=True)
class GVar:
    name: RecVarName

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class GRec:
    name: RecVarName
    body: "GlobalType"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class GBranch:
    label: MessageLabel
    receiver: LocationName
    cont: "GlobalType"


@dataclass(frozen=True)
class GChoice:
    leader: LocationName
    branches: tuple[GBranch, ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("choice of communication needs at least one branch")

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Deadlock:
    """Placeholder emitted by synthesis when no location is ready."""

    def __str__(self) -> str:
        return "deadlock"


GlobalType = Union[GEnd, GVar, GRec, GChoice, Deadlock]


def comm(leader, label, receiver, cont=None) -> GChoice:
    return GChoice(leader, (GBranch(label, receiver, GEnd() if cont is None else cont),))


# --------------------------------------------------------------------------
# networks
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Network:
    """Located threads; ``bindings`` keeps source order, lookups are by name."""
    bindings: tuple[tuple[LocationName, Term], ...]
    name: str = field(default="", compare=False)

    @property
    def locations(self) -> list[LocationName]:
        return [loc for loc, _ in self.bindings]

    def thread(self, loc: LocationName) -> Term:
        for name, term in self.bindings:
            if name == loc:
                return term
        raise KeyError(loc)

    def __str__(self) -> str:
        return pretty_print(self)


# --------------------------------------------------------------------------
# traversal helpers
# --------------------------------------------------------------------------

def children(term) -> Iterator:
    match term:
        case Rec(body=body) | GRec(body=body):
            yield body
        case IChoice(branches=bs) | EChoice(branches=bs) | GChoice(branches=bs):
            for b in bs:
                yield b.cont
        case Committed(cont=cont):
            yield cont
        case Merge(operands=ops):
            yield from ops
        case _:
            return


def free_vars(term) -> set[RecVarName]:
    match term:
        case Var(name) | GVar(name):
            return {name}
        case Rec(name=name, body=body) | GRec(name=name, body=body):
            return free_vars(body) - {name}
        case _:
            out: set[RecVarName] = set()
            for c in children(term):
                out |= free_vars(c)
            return out


def is_closed(term) -> bool:
    return not free_vars(term)


def substitute(term, var: RecVarName, replacement):
    """Capture-free substitution of a closed ``replacement`` for ``var``.

    Origin ids of copied nodes are kept, never regenerated.
    """
    match term:
        case Var(name) | GVar(name):
            return replacement if name == var else term
        case End() | GEnd() | Deadlock():
            return term
        case Rec(name, body, origin):
            if name == var:
                return term
            return Rec(name, substitute(body, var, replacement), origin)
        case GRec(name, body):
            if name == var:
                return term
            return GRec(name, substitute(body, var, replacement))
        case IChoice(branches):
            return IChoice(tuple(Send(b.target, b.label, substitute(b.cont, var, replacement), b.origin)
                                 for b in branches))
        case EChoice(branches):
            return EChoice(tuple(Recv(b.source, b.label, substitute(b.cont, var, replacement), b.origin)
                                 for b in branches))
        case Committed(target, label, cont, origin):
            return Committed(target, label, substitute(cont, var, replacement), origin)
        case Merge(operands):
            return Merge(tuple(substitute(o, var, replacement) for o in operands))
        case GChoice(leader, branches):
            return GChoice(leader, tuple(GBranch(b.label, b.receiver, substitute(b.cont, var, replacement))
                                         for b in branches))
    raise TypeError(f"not a term: {term!r}")


def unfold(term):
    """One-step unfolding of a top-level binder; anything else is returned unchanged."""
    match term:
        case Rec(name, body, _):
            return substitute(body, name, term)
        case GRec(name, body):
            return substitute(body, name, term)
    return term


def unfold_top(term):
    """Unfold top-level binders until the head is not a binder."""
    while isinstance(term, (Rec, GRec)):
        term = unfold(term)
    return term


def origins(term) -> list[InstructionId]:
    """All origin ids in a term, with multiplicity (pre-order)."""
    out = []
    stack = [term]
    while stack:
        t = stack.pop()
        match t:
            case Rec(origin=o) | Committed(origin=o):
                if o is not None:
                    out.append(o)
            case IChoice(branches=bs) | EChoice(branches=bs):
                out.extend(b.origin for b in bs if b.origin is not None)
        stack.extend(children(t))
    return out


def host_location(instr: InstructionId) -> LocationName:
    """The location an instruction id belongs to (ids are ``loc:index``)."""
    return instr.rsplit(":", 1)[0]


def number_origins(net: "Network") -> "Network":
    """Assign fresh origin ids ``loc:k`` in source (pre-)order, replacing any existing ones."""
    out = []
    for loc, term in net.bindings:
        counter = itertools.count()

        def go(t):
            match t:
                case Rec(n, body, _):
                    oid = f"{loc}:{next(counter)}"
                    return Rec(n, go(body), oid)
                case IChoice(bs):
                    return IChoice(tuple(Send(b.target, b.label, c, o) for b, o, c in _numbered(bs, go)))
                case EChoice(bs):
                    return EChoice(tuple(Recv(b.source, b.label, c, o) for b, o, c in _numbered(bs, go)))
                case Committed(tg, lb, c, _):
                    oid = f"{loc}:{next(counter)}"
                    return Committed(tg, lb, go(c), oid)
            return t

        def _numbered(bs, go):
            for b in bs:
                oid = f"{loc}:{next(counter)}"
                yield b, oid, go(b.cont)

        out.append((loc, go(term)))
    return Network(tuple(out), net.name)


def erase_origins(term):
    match term:
        case Rec(name, body, _):
            return Rec(name, erase_origins(body))
        case IChoice(branches):
            return IChoice(tuple(Send(b.target, b.label, erase_origins(b.cont)) for b in branches))
        case EChoice(branches):
            return EChoice(tuple(Recv(b.source, b.label, erase_origins(b.cont)) for b in branches))
        case Committed(target, label, cont, _):
            return Committed(target, label, erase_origins(cont))
        case Merge(operands):
            return Merge(tuple(erase_origins(o) for o in operands))
        case Network(bindings):
            return Network(tuple((loc, erase_origins(t)) for loc, t in bindings), term.name)
    return term


def contains_deadlock(g: GlobalType) -> bool:
    if isinstance(g, Deadlock):
        return True
    return any(contains_deadlock(c) for c in children(g))


def rename_bound(g, names: Optional[Iterator[str]] = None):
    """Alpha-rename every binder to a canonical name, in pre-order.

    Two terms are alpha-equivalent iff their renamings are equal.
    """
    if names is None:
        names = (f"V{i}" for i in itertools.count())
    counter = names

    def go(t, env):
        match t:
            case Var(n):
                return Var(env.get(n, n))
            case GVar(n):
                return GVar(env.get(n, n))
            case Rec(n, body, o):
                fresh = next(counter)
                return Rec(fresh, go(body, {**env, n: fresh}), o)
            case GRec(n, body):
                fresh = next(counter)
                return GRec(fresh, go(body, {**env, n: fresh}))
            case IChoice(bs):
                return IChoice(tuple(Send(b.target, b.label, go(b.cont, env), b.origin) for b in bs))
            case EChoice(bs):
                return EChoice(tuple(Recv(b.source, b.label, go(b.cont, env), b.origin) for b in bs))
            case Committed(tg, lb, c, o):
                return Committed(tg, lb, go(c, env), o)
            case Merge(ops):
                return Merge(tuple(go(o, env) for o in ops))
            case GChoice(ld, bs):
                return GChoice(ld, tuple(GBranch(b.label, b.receiver, go(b.cont, env)) for b in bs))
        return t

    return go(g, {})


# --------------------------------------------------------------------------
# pretty printing
# --------------------------------------------------------------------------
#
# Prefixes bind tighter than choice, and ``rec X . body`` extends as far right
# as possible.  A multi-branch choice used as a continuation is parenthesised;
# a binder that would swallow the next branch of an enclosing choice is too.

def pretty_print(term) -> str:
    if isinstance(term, Network):
        body = "\n".join(f"  loc {loc} = {pretty_print(t)}" for loc, t in term.bindings)
        return f"net {term.name or 'N'} {{\n{body}\n}}"
    return _pp(term, tail=True)


def _pp(t, tail: bool) -> str:
    """``tail`` is False when text follows that a trailing binder would swallow."""
    match t:
        case End() | GEnd():
            return "end"
        case Deadlock():
            return "deadlock"
        case Var(n) | GVar(n):
            return n
        case Rec(n, body, _) | GRec(n, body):
            inner = f"({_pp(body, True)})" if _is_multi(body) else _pp(body, True)
            s = f"rec {n} . {inner}"
            return s if tail else f"({s})"
        case IChoice(bs):
            return " (+) ".join(f"{b.target}!{b.label}; {_cont(b.cont, _last(i, bs) and tail)}"
                                for i, b in enumerate(bs))
        case EChoice(bs):
            return " + ".join(f"{b.source}?{b.label}; {_cont(b.cont, _last(i, bs) and tail)}"
                              for i, b in enumerate(bs))
        case Committed(tg, lb, c, _):
            return f"<{tg}!{lb}>; {_cont(c, tail)}"
        case Merge(ops):
            return " (&) ".join(_cont(o, _last(i, ops) and tail) for i, o in enumerate(ops))
        case GChoice(ld, bs):
            return " [+] ".join(f"{ld}->{b.receiver}:{b.label}; {_cont(b.cont, _last(i, bs) and tail)}"
                                for i, b in enumerate(bs))
    raise TypeError(f"cannot print {t!r}")


def _last(i: int, seq) -> bool:
    return i == len(seq) - 1


def _is_multi(t) -> bool:
    match t:
        case IChoice(bs) | EChoice(bs) | GChoice(branches=bs):
            return len(bs) > 1
        case Merge(ops):
            return len(ops) > 1
    return False


def _cont(c, tail: bool) -> str:
    if _is_multi(c):
        return f"({_pp(c, True)})"
    return _pp(c, tail)


# --------------------------------------------------------------------------
# lexer
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<op>\(\+\)|\[\+\]|\(&\)|->|[(){}=.;:!?+<>])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

KEYWORDS = {"net", "loc", "global", "end", "rec", "deadlock"}


@dataclass
class Token:
    kind: str       # 'ident', 'op', 'kw', 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            word = m.group()
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
        elif kind == "op":
            tokens.append(Token("op", m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

@dataclass
class Document:
    networks: dict[str, Network] = field(default_factory=dict)
    globals: dict[str, GlobalType] = field(default_factory=dict)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # token plumbing ------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "kw") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.error(f"expected identifier, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    # documents -----------------------------------------------------------
    def document(self) -> Document:
        doc = Document()
        if self.tok.kind == "eof":
            self.error("empty input")
        while self.tok.kind != "eof":
            if self.at("net"):
                net = self.network()
                if net.name in doc.networks:
                    self.error(f"duplicate network name {net.name!r}")
                doc.networks[net.name] = net
            elif self.at("global"):
                self.i += 1
                name = self.ident().text
                self.expect("=")
                g = self.global_type()
                if name in doc.globals:
                    self.error(f"duplicate global type name {name!r}")
                doc.globals[name] = g
            else:
                self.error(f"expected 'net' or 'global', found {self.tok.text!r}")
        return doc

    def network(self) -> Network:
        self.expect("net")
        name = self.ident().text
        self.expect("{")
        bindings: list[tuple[str, Term]] = []
        self.refs: list[tuple[str, str, Token]] = []
        seen: dict[str, Token] = {}
        if not self.at("loc"):
            self.error("a network needs at least one location")
        while self.at("loc"):
            self.i += 1
            lt = self.ident()
            if lt.text in seen:
                self.error(f"duplicate location {lt.text!r}", lt)
            seen[lt.text] = lt
            self.expect("=")
            self.current_loc = lt.text
            self.counter = 0
            bindings.append((lt.text, self.thread(frozenset())))
        self.expect("}")
        for owner, target, tok in self.refs:
            if target not in seen:
                self.error(f"prefix names {target!r}, which is not a location of network {name!r}", tok)
            if target == owner:
                warnings.warn(f"{tok.line}:{tok.col}: location {owner!r} addresses itself; "
                              "this prefix can never fire", SelfSendWarning, stacklevel=4)
        return Network(tuple(bindings), name)

    def fresh_origin(self) -> Optional[str]:
        if getattr(self, "current_loc", None) is None:
            return None
        oid = f"{self.current_loc}:{self.counter}"
        self.counter += 1
        return oid

    # threads -------------------------------------------------------------
    def thread(self, bound: frozenset, merges: bool = False) -> Term:
        first = self.choice(bound, merges)
        if merges and self.at("(&)"):
            ops = [first]
            while self.at("(&)"):
                self.i += 1
                ops.append(self.choice(bound, merges))
            return Merge(tuple(ops))
        return first

    def choice(self, bound: frozenset, merges: bool) -> Term:
        start = self.tok
        first = self.seq(bound, merges)
        if not (self.at("(+)") or self.at("+")):
            return first
        sep = self.tok.text
        parts = [(start, first)]
        while self.at("(+)") or self.at("+"):
            if self.tok.text != sep:
                self.error("cannot mix '+' and '(+)' in one choice")
            self.i += 1
            parts.append((self.tok, self.seq(bound, merges)))
        kind = IChoice if sep == "(+)" else EChoice
        branches = []
        for tok, p in parts:
            if not isinstance(p, kind) or len(p.branches) != 1:
                what = "send" if sep == "(+)" else "receive"
                self.error(f"every branch of this choice must be a {what} prefix", tok)
            branches.append(p.branches[0])
        return kind(tuple(branches))

    def seq(self, bound: frozenset, merges: bool) -> Term:
        tok = self.tok
        if self.at("end"):
            self.i += 1
            return End()
        if self.at("rec"):
            self.i += 1
            vt = self.ident()
            self.expect(".")
            origin = self.fresh_origin()
            body_tok = self.tok
            body = self.thread(bound | {vt.text}, merges)
            if not merges and isinstance(body, (Var, Rec)):
                self.error("unguarded recursion: a binder may not sit directly on a variable or binder",
                           body_tok)
            return Rec(vt.text, body, origin)
        if self.at("("):
            self.i += 1
            t = self.thread(bound, merges)
            self.expect(")")
            return t
        if self.at("<"):
            self.error("committed sends are not part of the source syntax")
        if tok.kind == "ident":
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text in ("!", "?"):
                self.i += 2
                lab = self.ident().text
                origin = self.fresh_origin()
                if hasattr(self, "refs") and getattr(self, "current_loc", None) is not None:
                    self.refs.append((self.current_loc, tok.text, tok))
                # a prefix without continuation abbreviates "; end"
                if self.at(";"):
                    self.i += 1
                    cont = self.seq(bound, merges)
                else:
                    cont = End()
                if nxt.text == "!":
                    return IChoice((Send(tok.text, lab, cont, origin),))
                return EChoice((Recv(tok.text, lab, cont, origin),))
            self.i += 1
            if tok.text not in bound:
                self.error(f"unbound recursion variable {tok.text!r}", tok)
            return Var(tok.text)
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    # global types --------------------------------------------------------
    def global_type(self, bound: frozenset = frozenset()) -> GlobalType:
        start = self.tok
        first = self.gseq(bound)
        if not self.at("[+]"):
            return first
        parts = [(start, first)]
        while self.at("[+]"):
            self.i += 1
            parts.append((self.tok, self.gseq(bound)))
        leader = None
        branches = []
        for tok, p in parts:
            if not isinstance(p, GChoice) or len(p.branches) != 1:
                self.error("every branch of a global choice must be a communication", tok)
            if leader is not None and p.leader != leader:
                self.error(f"choice has two leaders, {leader!r} and {p.leader!r}", tok)
            leader = p.leader
            branches.append(p.branches[0])
        return GChoice(leader, tuple(branches))

    def gseq(self, bound: frozenset) -> GlobalType:
        tok = self.tok
        if self.at("end"):
            self.i += 1
            return GEnd()
        if self.at("deadlock"):
            self.i += 1
            return Deadlock()
        if self.at("rec"):
            self.i += 1
            vt = self.ident()
            self.expect(".")
            body_tok = self.tok
            body = self.global_type(bound | {vt.text})
            if isinstance(body, (GVar, GRec)):
                self.error("unguarded recursion: a binder may not sit directly on a variable or binder",
                           body_tok)
            return GRec(vt.text, body)
        if self.at("("):
            self.i += 1
            g = self.global_type(bound)
            self.expect(")")
            return g
        if tok.kind == "ident":
            if self.peek().kind == "op" and self.peek().text == "->":
                self.i += 2
                rt = self.ident()
                self.expect(":")
                lab = self.ident().text
                if rt.text == tok.text:
                    self.error(f"self-communication: {tok.text!r} cannot send to itself", rt)
                if self.at(";"):
                    self.i += 1
                    cont = self.gseq(bound)
                else:
                    cont = GEnd()
                return GChoice(tok.text, (GBranch(lab, rt.text, cont),))
            self.i += 1
            if tok.text not in bound:
                self.error(f"unbound recursion variable {tok.text!r}", tok)
            return GVar(tok.text)
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def finish(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected trailing input {self.tok.text!r}")


def parse_document(text: str) -> Document:
    return _Parser(text).document()


def parse_network(text: str) -> Network:
    """Parse a network, either as a full ``net NAME { ... }`` item or as bare ``loc`` bindings."""
    p = _Parser(text)
    if p.at("net"):
        net = p.network()
    else:
        p.toks = tokenize("net N {\n" + text + "\n}")
        p.i = 0
        # re-lex so positions refer to the wrapped text; shift line numbers back
        for t in p.toks:
            t.line -= 1
        net = p.network()
    p.finish()
    return net


def parse_global_type(text: str) -> GlobalType:
    p = _Parser(text)
    g = p.global_type()
    p.finish()
    return g


def parse_thread(text: str) -> Term:
    """Parse a closed thread without location context (origins are left empty)."""
    p = _Parser(text)
    t = p.thread(frozenset())
    p.finish()
    return t


def parse_projection(text: str) -> Term:
    """Parse a projection type: thread syntax plus ``(&)`` merges."""
    p = _Parser(text)
    t = p.thread(frozenset(), merges=True)
    p.finish()
    return t
