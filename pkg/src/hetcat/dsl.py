"""Text format for categories, functors, het-bifunctors, and check requests.

Grammar (clauses are semicolon-terminated, comments run from // to newline):

    category NAME { objects: a, b; morphisms: f: a -> b; compose: g . f = h; }
    functor NAME : C -> D { obj a => x; mor f => u; }
    het NAME : C -/-> D { cell (a, x): c1, c2; left f c1 = c2; right u c1 = c2; }
    check adjunction from het NAME;

Names match [A-Za-z_][A-Za-z0-9_]*; tuple ids look like (a,b) and may nest.
Identity morphisms are implicit and reserved as id_<object>; composition
clauses list only non-identity pairs, and every composable non-identity pair
must be listed (a missing one is a completeness error, reported with a span).
Identity actions of het blocks are likewise implicit.

parse returns a ParseResult whose diagnostics carry line:column, the offending
token, and a byte span into the input.  serialize emits a canonical document
that reparses to an equal value; values whose identities do not follow the
id_<object> convention are renamed to it on output, so serialize-then-parse is
the identity exactly on convention-following values and a normalization
otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import (FinCat, FunctorData, Morphism, identity_name,
                   make_category)
from .het import HetBifunctor

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

KEYWORDS = {"category", "functor", "het", "check", "objects", "morphisms",
            "compose", "obj", "mor", "cell", "left", "right", "adjunction",
            "from"}


@dataclass(frozen=True)
class Token:
    kind: str       # NAME LBRACE RBRACE LPAREN RPAREN COLON SEMI COMMA DOT
                    # EQ ARROW DARROW HETARROW EOF
    text: str
    line: int
    col: int
    start: int
    end: int


@dataclass(frozen=True)
class Diagnostic:
    kind: str       # "lexical" | "syntax" | "reference" | "completeness"
    message: str
    line: int
    col: int
    span: tuple[int, int]
    token: str = ""

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.kind}: {self.message}"


@dataclass(frozen=True)
class CheckRequest:
    kind: str
    het_name: str
    span: tuple[int, int]


@dataclass
class SourceSpec:
    categories: dict[str, FinCat] = field(default_factory=dict)
    functors: dict[str, FunctorData] = field(default_factory=dict)
    hets: dict[str, HetBifunctor] = field(default_factory=dict)
    checks: list[CheckRequest] = field(default_factory=list)
    spans: dict[str, tuple[int, int]] = field(default_factory=dict)


@dataclass
class ParseResult:
    spec: SourceSpec | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.spec is not None and not self.diagnostics


class _LexError(Exception):
    def __init__(self, diag: Diagnostic):
        self.diag = diag


def _read_balanced(text: str, i: int) -> int:
    """Index just past the parenthesized group starting at text[i] == '('."""
    depth = 0
    j = i
    while j < len(text):
        if text[j] == "(":
            depth += 1
        elif text[j] == ")":
            depth -= 1
            if depth == 0:
                return j + 1
        j += 1
    raise _LexError(Diagnostic("lexical", "unbalanced parenthesis",
                               *(0, 0), span=(i, len(text)), token="("))


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1

    def advance(n: int):
        nonlocal i, line, col
        for _ in range(n):
            if i < len(text) and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < len(text):
        ch = text[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if text.startswith("//", i):
            nl = text.find("\n", i)
            advance((nl if nl != -1 else len(text)) - i)
            continue
        start, l0, c0 = i, line, col
        if text.startswith("-/->", i):
            advance(4)
            tokens.append(Token("HETARROW", "-/->", l0, c0, start, i))
            continue
        if text.startswith("->", i):
            advance(2)
            tokens.append(Token("ARROW", "->", l0, c0, start, i))
            continue
        if text.startswith("=>", i):
            advance(2)
            tokens.append(Token("DARROW", "=>", l0, c0, start, i))
            continue
        simple = {"{": "LBRACE", "}": "RBRACE", "(": "LPAREN", ")": "RPAREN",
                  ":": "COLON", ";": "SEMI", ",": "COMMA", ".": "DOT",
                  "=": "EQ"}
        if ch in simple:
            advance(1)
            tokens.append(Token(simple[ch], ch, l0, c0, start, i))
            continue
        m = _NAME_RE.match(text, i)
        if m:
            name = m.group(0)
            advance(len(name))
            # A name glued to an opening parenthesis is a compound id such as
            # id_(x,a); consume the balanced group as part of the token.
            if i < len(text) and text[i] == "(":
                try:
                    j = _read_balanced(text, i)
                except _LexError as err:
                    raise _LexError(Diagnostic("lexical", "unbalanced parenthesis",
                                               l0, c0, (start, len(text)), name))
                group = re.sub(r"\s+", "", text[i:j])
                advance(j - i)
                name += group
            tokens.append(Token("NAME", name, l0, c0, start, i))
            continue
        raise _LexError(Diagnostic("lexical", f"unexpected character {ch!r}",
                                   line, col, (i, i + 1), ch))
    tokens.append(Token("EOF", "", line, col, len(text), len(text)))
    return tokens


class _SyntaxAbort(Exception):
    pass


@dataclass
class _RawCategory:
    name: str
    header: Token
    objects: list[Token] = field(default_factory=list)
    morphisms: list[tuple[Token, Token, Token]] = field(default_factory=list)
    compose: list[tuple[Token, Token, Token]] = field(default_factory=list)
    span: tuple[int, int] = (0, 0)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []
        self.spec = SourceSpec()

    # -- token helpers --------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def syntax_error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        self.diagnostics.append(Diagnostic(
            "syntax", message, tok.line, tok.col,
            (tok.start, max(tok.end, tok.start + 1)), tok.text))
        raise _SyntaxAbort()

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.syntax_error(f"expected {what}, found {tok.text!r}")
        return self.next()

    def expect_kw(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "NAME" or tok.text != word:
            self.syntax_error(f"expected {word!r}, found {tok.text!r}")
        return self.next()

    def refer(self, message: str, tok: Token):
        self.diagnostics.append(Diagnostic(
            "reference", message, tok.line, tok.col, (tok.start, tok.end),
            tok.text))

    def completeness(self, message: str, span: tuple[int, int], line: int, col: int):
        self.diagnostics.append(Diagnostic("completeness", message, line, col, span))

    def ident(self, what: str = "an identifier") -> Token:
        """A NAME (possibly compound) or a tuple id like (a,b)."""
        tok = self.peek()
        if tok.kind == "NAME":
            return self.next()
        if tok.kind == "LPAREN":
            start = self.next()
            parts = [self.ident("a tuple component").text]
            while self.peek().kind == "COMMA":
                self.next()
                parts.append(self.ident("a tuple component").text)
            end = self.expect("RPAREN", "')'")
            text = "(" + ",".join(parts) + ")"
            return Token("NAME", text, start.line, start.col, start.start, end.end)
        self.syntax_error(f"expected {what}, found {tok.text!r}")

    # -- declarations ----------------------------------------------------

    def parse(self) -> ParseResult:
        try:
            while True:
                tok = self.peek()
                if tok.kind == "EOF":
                    break
                if tok.kind != "NAME":
                    self.syntax_error("expected a declaration")
                if tok.text == "category":
                    self.parse_category()
                elif tok.text == "functor":
                    self.parse_functor()
                elif tok.text == "het":
                    self.parse_het()
                elif tok.text == "check":
                    self.parse_check()
                else:
                    self.syntax_error(
                        "expected 'category', 'functor', 'het' or 'check'")
        except _SyntaxAbort:
            return ParseResult(None, self.diagnostics)
        except _LexError as err:
            return ParseResult(None, self.diagnostics + [err.diag])
        if self.diagnostics:
            return ParseResult(None, self.diagnostics)
        return ParseResult(self.spec, [])

    def declare(self, name_tok: Token, kind: str):
        name = name_tok.text
        if name in self.spec.spans:
            self.refer(f"duplicate declaration of {name!r}", name_tok)
        return name

    def parse_category(self):
        kw = self.next()
        name_tok = self.expect("NAME", "a category name")
        raw = _RawCategory(name=self.declare(name_tok, "category"), header=name_tok)
        self.expect("LBRACE", "'{'")
        while self.peek().kind != "RBRACE":
            clause = self.expect("NAME", "a clause keyword")
            if clause.text == "objects":
                self.expect("COLON", "':'")
                raw.objects.append(self.ident("an object id"))
                while self.peek().kind == "COMMA":
                    self.next()
                    raw.objects.append(self.ident("an object id"))
                self.expect("SEMI", "';'")
            elif clause.text == "morphisms":
                self.expect("COLON", "':'")
                while True:
                    mname = self.ident("a morphism id")
                    self.expect("COLON", "':'")
                    dom = self.ident("an object id")
                    self.expect("ARROW", "'->'")
                    cod = self.ident("an object id")
                    raw.morphisms.append((mname, dom, cod))
                    if self.peek().kind == "COMMA":
                        self.next()
                        continue
                    break
                self.expect("SEMI", "';'")
            elif clause.text == "compose":
                self.expect("COLON", "':'")
                while True:
                    g = self.ident("a morphism id")
                    self.expect("DOT", "'.'")
                    f = self.ident("a morphism id")
                    self.expect("EQ", "'='")
                    h = self.ident("a morphism id")
                    raw.compose.append((g, f, h))
                    if self.peek().kind == "COMMA":
                        self.next()
                        continue
                    break
                self.expect("SEMI", "';'")
            else:
                self.syntax_error("expected 'objects', 'morphisms' or 'compose'",
                                  clause)
        close = self.expect("RBRACE", "'}'")
        raw.span = (kw.start, close.end)
        self.build_category(raw)

    def build_category(self, raw: _RawCategory):
        objects: list[str] = []
        for tok in raw.objects:
            if tok.text in objects:
                self.refer(f"duplicate object {tok.text!r}", tok)
                continue
            objects.append(tok.text)
        objset = set(objects)
        arrows: list[tuple[str, str, str]] = []
        mor_names = {identity_name(x) for x in objects}
        endpoints = {identity_name(x): (x, x) for x in objects}
        for mname, dom, cod in raw.morphisms:
            if mname.text.startswith("id_"):
                self.refer("morphism ids starting with id_ are reserved for identities",
                           mname)
                continue
            if mname.text in mor_names:
                self.refer(f"duplicate morphism {mname.text!r}", mname)
                continue
            ok = True
            for endpoint in (dom, cod):
                if endpoint.text not in objset:
                    self.refer(f"unknown object {endpoint.text!r}", endpoint)
                    ok = False
            if ok:
                arrows.append((mname.text, dom.text, cod.text))
                mor_names.add(mname.text)
                endpoints[mname.text] = (dom.text, cod.text)
        compose: dict[tuple[str, str], str] = {}
        for g, f, h in raw.compose:
            ok = True
            for tok in (g, f, h):
                if tok.text not in mor_names:
                    self.refer(f"unknown morphism {tok.text!r}", tok)
                    ok = False
            if ok:
                compose[(g.text, f.text)] = h.text
        cat = make_category(raw.name, objects, arrows, compose)
        # every composable non-identity pair needs a composite
        for gname, (gd, gc) in endpoints.items():
            if gname.startswith("id_"):
                continue
            for fname, (fd, fc) in endpoints.items():
                if fname.startswith("id_"):
                    continue
                if fc == gd and (gname, fname) not in compose:
                    self.completeness(
                        f"missing composite {gname} . {fname} in category {raw.name!r}",
                        raw.span, raw.header.line, raw.header.col)
        self.spec.categories[raw.name] = cat
        self.spec.spans[raw.name] = raw.span

    def _category_ref(self, tok: Token) -> FinCat | None:
        cat = self.spec.categories.get(tok.text)
        if cat is None:
            self.refer(f"unknown category {tok.text!r}", tok)
        return cat

    def parse_functor(self):
        kw = self.next()
        name_tok = self.expect("NAME", "a functor name")
        name = self.declare(name_tok, "functor")
        self.expect("COLON", "':'")
        src_tok = self.expect("NAME", "a category name")
        self.expect("ARROW", "'->'")
        tgt_tok = self.expect("NAME", "a category name")
        src = self._category_ref(src_tok)
        tgt = self._category_ref(tgt_tok)
        self.expect("LBRACE", "'{'")
        obj_entries: list[tuple[Token, Token]] = []
        mor_entries: list[tuple[Token, Token]] = []
        while self.peek().kind != "RBRACE":
            clause = self.expect("NAME", "'obj' or 'mor'")
            if clause.text == "obj":
                key = self.ident("an object id")
                self.expect("DARROW", "'=>'")
                val = self.ident("an object id")
                obj_entries.append((key, val))
            elif clause.text == "mor":
                key = self.ident("a morphism id")
                self.expect("DARROW", "'=>'")
                val = self.ident("a morphism id")
                mor_entries.append((key, val))
            else:
                self.syntax_error("expected 'obj' or 'mor'", clause)
            self.expect("SEMI", "';'")
        close = self.expect("RBRACE", "'}'")
        if src is None or tgt is None:
            return
        obj_map: dict[str, str] = {}
        for key, val in obj_entries:
            if key.text not in set(src.objects):
                self.refer(f"unknown source object {key.text!r}", key)
                continue
            if val.text not in set(tgt.objects):
                self.refer(f"unknown target object {val.text!r}", val)
                continue
            obj_map[key.text] = val.text
        mor_map: dict[str, str] = {}
        for key, val in mor_entries:
            if not src.has_morphism(key.text):
                self.refer(f"unknown source morphism {key.text!r}", key)
                continue
            if not tgt.has_morphism(val.text):
                self.refer(f"unknown target morphism {val.text!r}", val)
                continue
            mor_map[key.text] = val.text
        for x, v in obj_map.items():
            mor_map.setdefault(src.identity_of(x), tgt.identity_of(v))
        fd = FunctorData(source=src, target=tgt, obj_map=obj_map,
                         mor_map=mor_map, name=name)
        self.spec.functors[name] = fd
        self.spec.spans[name] = (kw.start, close.end)

    def parse_het(self):
        kw = self.next()
        name_tok = self.expect("NAME", "a het name")
        name = self.declare(name_tok, "het")
        self.expect("COLON", "':'")
        src_tok = self.expect("NAME", "a category name")
        self.expect("HETARROW", "'-/->'")
        tgt_tok = self.expect("NAME", "a category name")
        src = self._category_ref(src_tok)
        tgt = self._category_ref(tgt_tok)
        self.expect("LBRACE", "'{'")
        cells: dict[tuple[str, str], list[str]] = {}
        element_home: dict[str, tuple[str, str]] = {}
        left_entries: list[tuple[Token, Token, Token]] = []
        right_entries: list[tuple[Token, Token, Token]] = []
        while self.peek().kind != "RBRACE":
            clause = self.expect("NAME", "'cell', 'left' or 'right'")
            if clause.text == "cell":
                self.expect("LPAREN", "'('")
                row = self.ident("a source object id")
                self.expect("COMMA", "','")
                col = self.ident("a target object id")
                self.expect("RPAREN", "')'")
                self.expect("COLON", "':'")
                elems: list[Token] = [self.ident("an element id")]
                while self.peek().kind == "COMMA":
                    self.next()
                    elems.append(self.ident("an element id"))
                self.expect("SEMI", "';'")
                if src is not None and row.text not in set(src.objects):
                    self.refer(f"unknown source object {row.text!r}", row)
                    continue
                if tgt is not None and col.text not in set(tgt.objects):
                    self.refer(f"unknown target object {col.text!r}", col)
                    continue
                key = (row.text, col.text)
                for e in elems:
                    if e.text in element_home:
                        self.refer(
                            f"element {e.text!r} already declared in another cell", e)
                        continue
                    element_home[e.text] = key
                    cells.setdefault(key, []).append(e.text)
            elif clause.text in ("left", "right"):
                mor = self.ident("a morphism id")
                elem = self.ident("an element id")
                self.expect("EQ", "'='")
                result = self.ident("an element id")
                self.expect("SEMI", "';'")
                (left_entries if clause.text == "left" else right_entries).append(
                    (mor, elem, result))
            else:
                self.syntax_error("expected 'cell', 'left' or 'right'", clause)
        close = self.expect("RBRACE", "'}'")
        if src is None or tgt is None:
            return
        left_table: dict[tuple[str, str], str] = {}
        right_table: dict[tuple[str, str], str] = {}
        for table, entries, cat, which in ((left_table, left_entries, src, "source"),
                                           (right_table, right_entries, tgt, "target")):
            for mor, elem, result in entries:
                ok = True
                if not cat.has_morphism(mor.text):
                    self.refer(f"unknown {which} morphism {mor.text!r}", mor)
                    ok = False
                for e in (elem, result):
                    if e.text not in element_home:
                        self.refer(f"unknown element {e.text!r}", e)
                        ok = False
                if ok:
                    table[(mor.text, elem.text)] = result.text
        # identity actions are implicit
        for elem, (x, a) in element_home.items():
            left_table.setdefault((src.identity_of(x), elem), elem)
            right_table.setdefault((tgt.identity_of(a), elem), elem)
        het = HetBifunctor(src, tgt, cells, left_table, right_table, name=name)
        self.spec.hets[name] = het
        self.spec.spans[name] = (kw.start, close.end)

    def parse_check(self):
        kw = self.next()
        self.expect_kw("adjunction")
        self.expect_kw("from")
        self.expect_kw("het")
        het_tok = self.expect("NAME", "a het name")
        semi = self.expect("SEMI", "';'")
        if het_tok.text not in self.spec.hets:
            self.refer(f"unknown het {het_tok.text!r}", het_tok)
            return
        self.spec.checks.append(CheckRequest("adjunction", het_tok.text,
                                             (kw.start, semi.end)))


def parse(text: str) -> ParseResult:
    """Parse a document; diagnostics carry positions, spans, and tokens."""
    try:
        return _Parser(text).parse()
    except _LexError as err:
        return ParseResult(None, [err.diag])


# ---------------------------------------------------------------------------
# Serialization

def _safe_name(name: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_]", "_", name) or "X"
    if not re.match(r"[A-Za-z_]", cleaned[0]):
        cleaned = "_" + cleaned
    return cleaned


def _identity_renames(cat: FinCat) -> dict[str, str]:
    return {cat.identity_of(x): identity_name(x) for x in cat.objects
            if cat.identity_of(x) != identity_name(x)}


def _serialize_category(cat: FinCat, name: str) -> str:
    ren = _identity_renames(cat)
    rn = lambda m: ren.get(m, m)
    lines = [f"category {name} {{"]
    if cat.objects:
        lines.append("  objects: " + ", ".join(cat.objects) + ";")
    for m in cat.morphisms:
        if not cat.is_identity(m.name):
            lines.append(f"  morphisms: {m.name}: {m.dom} -> {m.cod};")
    for f in cat.morphisms:
        if cat.is_identity(f.name):
            continue
        for g in cat.morphisms:
            if cat.is_identity(g.name) or g.dom != f.cod:
                continue
            h = cat.composition[(g.name, f.name)]
            lines.append(f"  compose: {g.name} . {f.name} = {rn(h)};")
    lines.append("}")
    return "\n".join(lines)


def serialize(value, name: str | None = None) -> str:
    """Emit a self-contained canonical document for a category, functor, or
    het-bifunctor; dependencies are included as their own blocks."""
    if isinstance(value, FinCat):
        return _serialize_category(value, _safe_name(name or value.name)) + "\n"
    if isinstance(value, FunctorData):
        src_n = _safe_name(value.source.name)
        tgt_n = _safe_name(value.target.name)
        if tgt_n == src_n and value.target != value.source:
            tgt_n += "_2"
        blocks = [_serialize_category(value.source, src_n)]
        if value.target != value.source:
            blocks.append(_serialize_category(value.target, tgt_n))
        else:
            tgt_n = src_n
        ren_s = _identity_renames(value.source)
        ren_t = _identity_renames(value.target)
        lines = [f"functor {_safe_name(name or value.name)} : {src_n} -> {tgt_n} {{"]
        for x in value.source.objects:
            lines.append(f"  obj {x} => {value.obj_map[x]};")
        for m in value.source.morphisms:
            if value.source.is_identity(m.name):
                continue
            img = value.mor_map[m.name]
            lines.append(f"  mor {m.name} => {ren_t.get(img, img)};")
        lines.append("}")
        blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"
    if isinstance(value, HetBifunctor):
        src_n = _safe_name(value.source.name)
        tgt_n = _safe_name(value.target.name)
        if tgt_n == src_n and value.target != value.source:
            tgt_n += "_2"
        blocks = [_serialize_category(value.source, src_n)]
        if value.target != value.source:
            blocks.append(_serialize_category(value.target, tgt_n))
        else:
            tgt_n = src_n
        lines = [f"het {_safe_name(name or value.name)} : {src_n} -/-> {tgt_n} {{"]
        for x in value.source.objects:
            for a in value.target.objects:
                elems = value.cell(x, a)
                if elems:
                    lines.append(f"  cell ({x}, {a}): " + ", ".join(elems) + ";")
        for x, a, c in value.elements():
            for h in value.source.morphisms:
                if h.cod == x and not value.source.is_identity(h.name):
                    lines.append(f"  left {h.name} {c} = {value.left(h.name, c)};")
        for x, a, c in value.elements():
            for k in value.target.morphisms:
                if k.dom == a and not value.target.is_identity(k.name):
                    lines.append(f"  right {k.name} {c} = {value.right(k.name, c)};")
        lines.append("}")
        blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"
    raise TypeError(f"cannot serialize values of type {type(value).__name__}")
