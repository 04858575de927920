"""Script language for driving the library from text files.

A script is a sequence of statements separated by semicolons or line
breaks.  Statement forms:

* ``variety polynomial(3) vars x,y,z`` -- exactly one per script; kinds
  are ``polynomial``, ``assoc``, ``lie``, ``metabelian``
* ``let NAME = EXPR`` -- bind an algebra element
* ``NAME := auto(E1, ..., En)`` -- define an endomorphism
* ``NAME := deriv(E1, ..., En)`` -- define a derivation
* command invocations: ``eval``, ``apply``, ``ia-level``, ``tangent``,
  ``jacobian``, ``divergence``, ``compose``, ``invert``, ``commutator``,
  ``detect-wild``, ``build-polynilpotent``, ``span``

Expressions support ``+``, ``-``, explicit ``*``, ``^`` (unital
varieties), ``[a,b]`` brackets, parentheses, and rational literals
``p/q``.  Commands that produce a map accept a trailing ``as NAME`` to
bind the result.  ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .freealg import (
    AlgebraError,
    Element,
    Kind,
    Variety,
    free_associative,
    free_lie,
    metabelian_lie,
    polynomial,
)
from .envelope import env_str, trace_str
from .deriv import Derivation, divergence
from .fox import jacobian as fox_jacobian
from .morphism import (
    DEFAULT_MAX_DEGREE,
    Endomorphism,
    compose,
    group_commutator,
    ia_level,
    tangent,
    truncated_inverse,
)
from . import wildness


class DslError(AlgebraError):
    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, NUMBER, FLAG, OP, ASSIGN
    value: object
    line: int
    col: int
    end: int = 0  # end column, for adjacency checks


_TOKEN_RE = re.compile(
    r"""(?P<flag>--[A-Za-z][A-Za-z0-9-]*)
      | (?P<assign>:=)
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<number>\d+)
      | (?P<op>[-+*^/()\[\],;=])
      | (?P<ws>[ \t]+)
      | (?P<bad>.)
    """,
    re.VERBOSE,
)


def tokenize(source):
    tokens = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            m = _TOKEN_RE.match(line, pos)
            col = pos + 1
            pos = m.end()
            if m.lastgroup == "ws":
                continue
            if m.lastgroup == "bad":
                raise DslError(f"unexpected character {m.group()!r}", lineno, col)
            if m.lastgroup == "flag":
                tokens.append(Token("FLAG", m.group()[2:], lineno, col, pos + 1))
            elif m.lastgroup == "assign":
                tokens.append(Token("ASSIGN", ":=", lineno, col, pos + 1))
            elif m.lastgroup == "name":
                tokens.append(Token("NAME", m.group(), lineno, col, pos + 1))
            elif m.lastgroup == "number":
                tokens.append(Token("NUMBER", int(m.group()), lineno, col, pos + 1))
            else:
                tokens.append(Token("OP", m.group(), lineno, col, pos + 1))
    return tokens


def split_statements(tokens):
    """Group tokens into statements: ``;`` always separates; a line break
    separates when no parenthesis or bracket is open."""
    statements = []
    cur = []
    depth = 0
    prev_line = None
    for tok in tokens:
        if prev_line is not None and tok.line != prev_line and depth == 0 and cur:
            statements.append(cur)
            cur = []
        prev_line = tok.line
        if tok.kind == "OP" and tok.value in "([":
            depth += 1
        elif tok.kind == "OP" and tok.value in ")]":
            depth -= 1
        if tok.kind == "OP" and tok.value == ";" and depth == 0:
            if cur:
                statements.append(cur)
                cur = []
            continue
        cur.append(tok)
    if cur:
        statements.append(cur)
    return statements


# -- AST --------------------------------------------------------------------


@dataclass
class VarietyDecl:
    kind_name: str
    rank: int
    names: tuple
    line: int


@dataclass
class LetBinding:
    name: str
    expr: list  # expression tokens
    line: int


@dataclass
class MapDef:
    name: str
    map_kind: str  # "auto" | "deriv"
    arg_exprs: list  # list of token lists
    line: int


@dataclass
class Command:
    name: str
    args: list  # positional: token lists (expressions) or plain names
    flags: dict
    bind_as: str | None
    line: int


@dataclass
class Script:
    statements: list


_COMMANDS = {
    "eval",
    "apply",
    "ia-level",
    "tangent",
    "jacobian",
    "divergence",
    "compose",
    "invert",
    "commutator",
    "detect-wild",
    "build-polynilpotent",
    "span",
}

_EXPR_ARG_COMMANDS = {"eval", "apply"}


def _merge_hyphenated(tokens, i):
    """Read a possibly hyphenated keyword starting at index i; hyphens
    count only when the tokens are adjacent in the source."""
    parts = [tokens[i].value]
    j = i + 1
    while (
        j + 1 < len(tokens)
        and tokens[j].kind == "OP"
        and tokens[j].value == "-"
        and tokens[j + 1].kind == "NAME"
        and tokens[j].line == tokens[i].line
        and tokens[j].col == tokens[j - 1].end
        and tokens[j + 1].col == tokens[j].end
    ):
        parts.append(tokens[j + 1].value)
        j += 2
    return "-".join(parts), j


def parse(source):
    """Parse a script to an AST; raises DslError with positions."""
    statements = []
    for stmt in split_statements(tokenize(source)):
        statements.append(_parse_statement(stmt))
    return Script(statements)


def _parse_statement(toks):
    head = toks[0]
    if head.kind != "NAME":
        raise DslError(f"expected a statement keyword, got {head.value!r}", head.line, head.col)
    # NAME := auto(...) / deriv(...)
    if len(toks) > 1 and toks[1].kind == "ASSIGN":
        return _parse_mapdef(toks)
    word, after = _merge_hyphenated(toks, 0)
    if word == "variety":
        return _parse_variety(toks, after)
    if word == "let":
        return _parse_let(toks, after)
    if word in _COMMANDS:
        return _parse_command(word, toks, after)
    raise DslError(f"unknown statement {word!r}", head.line, head.col)


def _expect(toks, i, kind, value=None):
    if i >= len(toks):
        last = toks[-1]
        raise DslError(f"unexpected end of statement", last.line, last.end)
    t = toks[i]
    if t.kind != kind or (value is not None and t.value != value):
        want = value if value is not None else kind
        raise DslError(f"expected {want!r}, got {t.value!r}", t.line, t.col)
    return t


def _parse_variety(toks, i):
    kt = _expect(toks, i, "NAME")
    _expect(toks, i + 1, "OP", "(")
    rk = _expect(toks, i + 2, "NUMBER")
    _expect(toks, i + 3, "OP", ")")
    i += 4
    names = []
    if i < len(toks):
        _expect(toks, i, "NAME", "vars")
        i += 1
        while i < len(toks):
            names.append(_expect(toks, i, "NAME").value)
            i += 1
            if i < len(toks):
                _expect(toks, i, "OP", ",")
                i += 1
    return VarietyDecl(kt.value, rk.value, tuple(names), kt.line)


def _parse_let(toks, i):
    name = _expect(toks, i, "NAME")
    _expect(toks, i + 1, "OP", "=")
    expr = toks[i + 2 :]
    if not expr:
        raise DslError("empty expression", name.line, name.col)
    return LetBinding(name.value, expr, name.line)


def _parse_mapdef(toks):
    name = toks[0]
    kw = _expect(toks, 2, "NAME")
    if kw.value not in ("auto", "deriv"):
        raise DslError("expected auto(...) or deriv(...)", kw.line, kw.col)
    _expect(toks, 3, "OP", "(")
    if toks[-1].kind != "OP" or toks[-1].value != ")":
        raise DslError("unbalanced parentheses in definition", name.line, name.col)
    args = _split_commas(toks[4:-1])
    if not args or any(not a for a in args):
        raise DslError("empty coordinate in definition", kw.line, kw.col)
    return MapDef(name.value, kw.value, args, name.line)


def _split_commas(toks):
    out = [[]]
    depth = 0
    for t in toks:
        if t.kind == "OP" and t.value in "([":
            depth += 1
        elif t.kind == "OP" and t.value in ")]":
            depth -= 1
        if t.kind == "OP" and t.value == "," and depth == 0:
            out.append([])
        else:
            out[-1].append(t)
    return out


def _parse_command(word, toks, i):
    args = []
    flags = {}
    bind_as = None
    # positional arguments up to the first flag / 'as'
    pos = []
    while i < len(toks) and toks[i].kind != "FLAG":
        if toks[i].kind == "NAME" and toks[i].value == "as":
            break
        pos.append(toks[i])
        i += 1
    if word in _EXPR_ARG_COMMANDS:
        if word == "apply":
            if len(pos) < 2:
                raise DslError(
                    "apply needs a map name and an expression", toks[0].line, toks[0].col
                )
            args.append(pos[0].value)
            args.append(pos[1:])
        else:
            if not pos:
                raise DslError(f"{word} needs an expression", toks[0].line, toks[0].col)
            args.append(pos)
    else:
        for t in pos:
            if t.kind == "NAME":
                args.append(t.value)
            elif t.kind == "OP" and t.value == ",":
                continue
            else:
                raise DslError(f"expected a name, got {t.value!r}", t.line, t.col)
    # flags and the optional trailing 'as NAME'
    while i < len(toks):
        t = toks[i]
        if t.kind == "NAME" and t.value == "as":
            bind_as = _expect(toks, i + 1, "NAME").value
            i += 2
            continue
        if t.kind != "FLAG":
            raise DslError(f"unexpected token {t.value!r}", t.line, t.col)
        fname = t.value
        i += 1
        values = []
        while i < len(toks) and toks[i].kind in ("NAME", "NUMBER") and toks[i].value != "as":
            if toks[i].kind == "NAME":
                merged, i = _merge_hyphenated(toks, i)
                values.append(merged)
            else:
                values.append(toks[i].value)
                i += 1
            if (
                i + 1 < len(toks)
                and toks[i].kind == "OP"
                and toks[i].value == ","
                and toks[i + 1].kind in ("NAME", "NUMBER")
            ):
                i += 1
        if not values:
            flags[fname] = True
        elif len(values) == 1:
            flags[fname] = values[0]
        else:
            flags[fname] = values
    return Command(word, args, flags, bind_as, toks[0].line)


# -- expression evaluation --------------------------------------------------


class _ExprParser:
    """Recursive-descent evaluator over a token list and an environment."""

    def __init__(self, toks, session):
        self.toks = toks
        self.i = 0
        self.session = session

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _next(self):
        t = self._peek()
        if t is None:
            last = self.toks[-1]
            raise DslError("unexpected end of expression", last.line, last.end)
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        t = self._peek()
        if t is not None:
            raise DslError(f"unexpected token {t.value!r}", t.line, t.col)
        return v

    def expr(self):
        t = self._peek()
        if t is not None and t.kind == "OP" and t.value == "-":
            self._next()
            v = self._neg(self.term())
        else:
            v = self.term()
        while True:
            t = self._peek()
            if t is None or t.kind != "OP" or t.value not in "+-":
                return v
            self._next()
            rhs = self.term()
            v = self._add(v, rhs) if t.value == "+" else self._add(v, self._neg(rhs))

    def term(self):
        v = self.power()
        while True:
            t = self._peek()
            if t is None or t.kind != "OP" or t.value != "*":
                return v
            self._next()
            v = self._mul(v, self.power(), t)

    def power(self):
        v = self.atom()
        while True:
            t = self._peek()
            if t is None or t.kind != "OP" or t.value != "^":
                return v
            op = self._next()
            e = self._next()
            if e.kind != "NUMBER":
                raise DslError("exponent must be a nonnegative integer", e.line, e.col)
            if isinstance(v, Fraction):
                v = v ** e.value
            elif isinstance(v, Element):
                try:
                    v = v.power(e.value)
                except AlgebraError as exc:
                    raise DslError(str(exc), op.line, op.col) from exc
            else:
                raise DslError("cannot exponentiate this value", op.line, op.col)

    def atom(self):
        t = self._next()
        if t.kind == "NUMBER":
            nxt = self._peek()
            if nxt is not None and nxt.kind == "OP" and nxt.value == "/":
                self._next()
                d = self._next()
                if d.kind != "NUMBER" or d.value == 0:
                    raise DslError("malformed rational literal", t.line, t.col)
                return Fraction(t.value, d.value)
            return Fraction(t.value)
        if t.kind == "NAME":
            return self.session.lookup_value(t)
        if t.kind == "OP" and t.value == "(":
            v = self.expr()
            close = self._next()
            if close.kind != "OP" or close.value != ")":
                raise DslError("expected ')'", close.line, close.col)
            return v
        if t.kind == "OP" and t.value == "[":
            a = self.expr()
            comma = self._next()
            if comma.kind != "OP" or comma.value != ",":
                raise DslError("expected ',' in bracket", comma.line, comma.col)
            b = self.expr()
            close = self._next()
            if close.kind != "OP" or close.value != "]":
                raise DslError("expected ']'", close.line, close.col)
            return self._bracket(a, b, t)
        if t.kind == "OP" and t.value == "-":
            return self._neg(self.atom())
        raise DslError(f"unexpected token {t.value!r}", t.line, t.col)

    # scalar/element coercion helpers

    def _neg(self, v):
        return -v

    def _add(self, a, b):
        if isinstance(a, Fraction) and isinstance(b, Element):
            a = b.variety.scalar(a)
        elif isinstance(b, Fraction) and isinstance(a, Element):
            b = a.variety.scalar(b)
        return a + b

    def _mul(self, a, b, tok):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a * b
        if isinstance(a, Fraction):
            return b.scale(a)
        if isinstance(b, Fraction):
            return a.scale(b)
        return a * b

    def _bracket(self, a, b, tok):
        if not isinstance(a, Element) or not isinstance(b, Element):
            raise DslError("bracket arguments must be algebra elements", tok.line, tok.col)
        if a.variety.is_lie:
            return a * b
        return a * b - b * a


# -- execution --------------------------------------------------------------


class Session:
    """Executes a parsed script; accumulates one result record per command."""

    def __init__(self, max_degree=DEFAULT_MAX_DEGREE, seed=0):
        self.variety = None
        self.env = {}
        self.max_degree = max_degree
        self.seed = seed
        self.results = []

    def lookup_value(self, tok):
        name = tok.value
        v = self.env.get(name)
        if v is None:
            raise DslError(f"undefined name {name!r}", tok.line, tok.col)
        if not isinstance(v, Element):
            raise DslError(f"{name!r} is not an algebra element", tok.line, tok.col)
        return v

    def lookup(self, name, line, types):
        v = self.env.get(name)
        if v is None:
            raise DslError(f"undefined name {name!r}", line, None)
        if not isinstance(v, types):
            raise DslError(f"{name!r} has the wrong type for this command", line, None)
        return v

    def run(self, script):
        for stmt in script.statements:
            self.execute(stmt)
        return self.results

    def execute(self, stmt):
        handler = {
            VarietyDecl: self._do_variety,
            LetBinding: self._do_let,
            MapDef: self._do_mapdef,
            Command: self._do_command,
        }[type(stmt)]
        handler(stmt)

    def _eval(self, toks):
        return _ExprParser(toks, self).parse()

    def _require_variety(self, line):
        if self.variety is None:
            raise DslError("no variety declared yet", line, None)

    def _bind(self, name, value, line):
        self.env[name] = value

    def _do_variety(self, stmt):
        if self.variety is not None:
            raise DslError("variety already declared", stmt.line, None)
        factories = {
            "polynomial": polynomial,
            "assoc": free_associative,
            "associative": free_associative,
            "lie": free_lie,
            "metabelian": metabelian_lie,
        }
        factory = factories.get(stmt.kind_name)
        if factory is None:
            raise DslError(f"unknown variety kind {stmt.kind_name!r}", stmt.line, None)
        try:
            self.variety = factory(stmt.rank, stmt.names)
        except AlgebraError as exc:
            raise DslError(str(exc), stmt.line, None) from exc
        for i, name in enumerate(self.variety.names):
            self.env[name] = self.variety.gen(i)

    def _do_let(self, stmt):
        self._require_variety(stmt.line)
        v = self._eval(stmt.expr)
        if isinstance(v, Fraction):
            try:
                v = self.variety.scalar(v)
            except AlgebraError as exc:
                raise DslError(str(exc), stmt.line, None) from exc
        self._bind(stmt.name, v, stmt.line)

    def _do_mapdef(self, stmt):
        self._require_variety(stmt.line)
        coords = []
        for expr in stmt.arg_exprs:
            v = self._eval(expr)
            if isinstance(v, Fraction):
                try:
                    v = self.variety.scalar(v)
                except AlgebraError as exc:
                    raise DslError(str(exc), stmt.line, None) from exc
            coords.append(v)
        try:
            if stmt.map_kind == "auto":
                value = Endomorphism(self.variety, tuple(coords))
            else:
                value = Derivation(self.variety, tuple(coords))
        except AlgebraError as exc:
            raise DslError(str(exc), stmt.line, None) from exc
        self._bind(stmt.name, value, stmt.line)

    # -- commands ------------------------------------------------------------

    def _record(self, command, output):
        self.results.append({"command": command, "output": output})

    def _int_flag(self, flags, name, default):
        v = flags.get(name, default)
        if isinstance(v, bool) or not isinstance(v, int):
            raise DslError(f"flag --{name} needs an integer value", None, None)
        return v

    def _do_command(self, stmt):
        self._require_variety(stmt.line)
        try:
            getattr(self, "_cmd_" + stmt.name.replace("-", "_"))(stmt)
        except DslError:
            raise
        except AlgebraError as exc:
            raise DslError(f"in {stmt.name!r}: {exc}", stmt.line, None) from exc

    def _cmd_eval(self, stmt):
        v = self._eval(stmt.args[0])
        self._record("eval", {"value": str(v)})

    def _cmd_apply(self, stmt):
        m = self.lookup(stmt.args[0], stmt.line, (Endomorphism, Derivation))
        v = self._eval(stmt.args[1])
        if not isinstance(v, Element):
            raise DslError("apply needs an algebra element", stmt.line, None)
        self._record("apply", {"name": stmt.args[0], "value": str(m.apply(v))})

    def _cmd_ia_level(self, stmt):
        phi = self.lookup(stmt.args[0], stmt.line, Endomorphism)
        k = self._int_flag(stmt.flags, "max-degree", self.max_degree)
        lev = ia_level(phi, k)
        self._record(
            "ia-level",
            {"name": stmt.args[0], "status": lev.status, "i": lev.i, "bound": lev.bound,
             "text": str(lev)},
        )

    def _cmd_tangent(self, stmt):
        phi = self.lookup(stmt.args[0], stmt.line, Endomorphism)
        k = self._int_flag(stmt.flags, "max-degree", self.max_degree)
        T = tangent(phi, k)
        if stmt.bind_as:
            self._bind(stmt.bind_as, T, stmt.line)
        self._record(
            "tangent",
            {"name": stmt.args[0], "coords": [str(f) for f in T.coords]},
        )

    def _cmd_jacobian(self, stmt):
        obj = self.lookup(stmt.args[0], stmt.line, (Endomorphism, Derivation))
        mat = fox_jacobian(obj)
        self._record(
            "jacobian",
            {"name": stmt.args[0], "matrix": [[env_str(e) for e in row] for row in mat]},
        )

    def _cmd_divergence(self, stmt):
        obj = self.lookup(stmt.args[0], stmt.line, (Endomorphism, Derivation))
        if isinstance(obj, Endomorphism):
            k = self._int_flag(stmt.flags, "max-degree", self.max_degree)
            obj = tangent(obj, k)
        div = divergence(obj)
        self._record(
            "divergence",
            {"name": stmt.args[0], "divergence": trace_str(div.trace),
             "is_zero": div.is_zero()},
        )

    def _cmd_compose(self, stmt):
        maps = [self.lookup(n, stmt.line, Endomorphism) for n in stmt.args]
        if len(maps) < 2:
            raise DslError("compose needs at least two maps", stmt.line, None)
        k = stmt.flags.get("max-degree")
        out = maps[0]
        for m in maps[1:]:
            out = compose(out, m, max_degree=k)
        if stmt.bind_as:
            self._bind(stmt.bind_as, out, stmt.line)
        self._record("compose", {"names": list(stmt.args), "images": [str(f) for f in out.images]})

    def _cmd_invert(self, stmt):
        phi = self.lookup(stmt.args[0], stmt.line, Endomorphism)
        k = self._int_flag(stmt.flags, "degree", self.max_degree)
        inv = truncated_inverse(phi, k)
        if stmt.bind_as:
            self._bind(stmt.bind_as, inv, stmt.line)
        check = compose(phi, inv, max_degree=k).is_identity_through(k)
        self._record(
            "invert",
            {"name": stmt.args[0], "degree": k,
             "images": [str(f) for f in inv.images],
             "identity_through_degree": check},
        )

    def _cmd_commutator(self, stmt):
        if len(stmt.args) != 2:
            raise DslError("commutator needs exactly two maps", stmt.line, None)
        a = self.lookup(stmt.args[0], stmt.line, Endomorphism)
        b = self.lookup(stmt.args[1], stmt.line, Endomorphism)
        k = self._int_flag(stmt.flags, "degree", self.max_degree)
        out = group_commutator(a, b, k)
        if stmt.bind_as:
            self._bind(stmt.bind_as, out, stmt.line)
        self._record(
            "commutator",
            {"names": list(stmt.args), "degree": k, "images": [str(f) for f in out.images]},
        )

    def _context_from_flags(self, flags, line):
        tag = flags.get("context")
        if tag is None or tag is True:
            raise DslError("detect-wild needs --context", line, None)
        evidence = flags.get("evidence", "user")
        evidence = {
            "user": wildness.EVIDENCE_USER,
            "truncation": wildness.EVIDENCE_TRUNCATION,
            "builtin": wildness.EVIDENCE_BUILTIN,
        }.get(evidence, wildness.EVIDENCE_USER)
        if tag == "metabelian":
            return wildness.metabelian_context(self.variety, evidence)
        if tag == "nilpotent":
            c = self._int_flag(flags, "class", 2)
            return wildness.nilpotent_context(self.variety, c, evidence)
        if tag == "var-m2k":
            return wildness.var_m2k_context(self.variety, evidence)
        if tag == "polynilpotent":
            cs = flags.get("c")
            if cs is None:
                raise DslError("polynilpotent context needs --c", line, None)
            if isinstance(cs, int):
                cs = [cs]
            return wildness.polynilpotent_context(self.variety, tuple(cs), evidence)
        if tag == "user":
            d = self._int_flag(flags, "min-degree", 2)
            return wildness.user_context(self.variety, flags.get("tag", "unnamed"), d)
        raise DslError(f"unknown context {tag!r}", line, None)

    def _cmd_detect_wild(self, stmt):
        phi = self.lookup(stmt.args[0], stmt.line, Endomorphism)
        ctx = self._context_from_flags(stmt.flags, stmt.line)
        k = self._int_flag(stmt.flags, "max-degree", self.max_degree)
        if (
            self.variety.kind is Kind.FREE_ASSOCIATIVE
            and self.variety.rank == 2
            and stmt.flags.get("context") == "var-m2k"
        ):
            cert = wildness.detect_rank2_associative(phi, ctx, k)
            witness = str(cert.witness)
        else:
            cert = wildness.detect_divergence_wild(phi, ctx, k)
            witness = trace_str(cert.witness.trace)
        self._record(
            "detect-wild",
            {
                "name": stmt.args[0],
                "context": ctx.ideal_tag,
                "min_degree": ctx.min_degree,
                "verdict": cert.verdict,
                "witness": witness,
                "reasons": list(cert.reasons),
                "trace": list(cert.trace),
            },
        )

    def _cmd_build_polynilpotent(self, stmt):
        cs = stmt.flags.get("c")
        if cs is None:
            raise DslError("build-polynilpotent needs --c", stmt.line, None)
        if isinstance(cs, int):
            cs = [cs]
        rank = self._int_flag(stmt.flags, "rank", max(self.variety.rank, 3))
        limit = self._int_flag(stmt.flags, "limit", self.max_degree)
        u, psi, rep = wildness.build_polynilpotent_witness(tuple(cs), rank, limit)
        out = {
            "c": list(rep.c),
            "degrees": rep.degrees,
            "recursion_degrees": rep.recursion_degrees,
            "product_bound": rep.product_bound,
            "inequality_holds": rep.inequality_holds,
            "leading_words": [list(w) for w in rep.leading_words],
            "leading_recursion_ok": rep.leading_recursion_ok,
            "materialized": rep.materialized,
        }
        if rep.materialized:
            out["u"] = str(u)
            out["psi"] = [str(f) for f in psi.images]
            if stmt.bind_as:
                self._bind(stmt.bind_as, psi, stmt.line)
        self._record("build-polynilpotent", out)

    def _cmd_span(self, stmt):
        gens_flag = stmt.flags.get("gens")
        if gens_flag is None:
            raise DslError("span needs --gens", stmt.line, None)
        if isinstance(gens_flag, str):
            gens_flag = [gens_flag]
        gens = [self.lookup(n, stmt.line, Endomorphism) for n in gens_flag]
        degree = self._int_flag(stmt.flags, "degree", 1)
        samples = self._int_flag(stmt.flags, "samples", 200)
        seed = self._int_flag(stmt.flags, "seed", self.seed)
        conj = 1 if stmt.flags.get("conjugate") else 0
        rep = wildness.tangent_span(gens, degree, samples, seed, conjugation_rank=conj)
        self._record(
            "span",
            {
                "gens": list(gens_flag),
                "degree": degree,
                "samples": samples,
                "seed": seed,
                "rank": rep.rank,
                "hits": rep.hits,
                "per_level_counts": {str(k): v for k, v in sorted(rep.per_level_counts.items())},
                "oracle_kernel_rank": wildness.divergence_kernel_rank(self.variety, degree),
            },
        )


def run_source(source, max_degree=DEFAULT_MAX_DEGREE, seed=0):
    """Parse and execute a script; returns the list of result records."""
    session = Session(max_degree=max_degree, seed=seed)
    return session.run(parse(source))
