"""Line-oriented text format for structures and categories.

A structure document::

    pamono 1
    carrier: 2
    names: a b            # optional
    structure h
    s: a a
    t: a a
    op:
    a a = a
    a b = b
    end

One ``structure`` block gives a partial monoid, two a double structure
(first ``h``, then ``v``), more a multi-structure.  Pairs without an ``op``
line are undefined; one triple may share the ``op:`` line.  A document with a
single structure may omit the ``structure``/``end`` lines.  ``#`` starts a
comment.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .core import UNDEFINED, PartialMonoidStructure, StructureError, default_names
from .double import DoubleStructure
from .generators import CategoryPresentation
from .nfold import MultiStructure

FORMAT_VERSION = 1
HEADER = "pamono"
CATEGORY_HEADER = "pamono-category"

Structure = Union[PartialMonoidStructure, DoubleStructure, MultiStructure]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)


@dataclass
class _Token:
    text: str
    line: int
    col: int


def _lines(text: str):
    """Yield ``(lineno, tokens)`` for non-blank lines, comments stripped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = []
        i = 0
        while i < len(body):
            if body[i].isspace():
                i += 1
                continue
            j = i
            while j < len(body) and not body[j].isspace():
                j += 1
            tokens.append(_Token(body[i:j], lineno, i + 1))
            i = j
        if tokens:
            yield lineno, tokens


class _Cursor:
    def __init__(self, text: str):
        self.items = list(_lines(text))
        self.pos = 0
        self.last_line = text.count("\n") + 1

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, expecting: str):
        item = self.peek()
        if item is None:
            raise ParseError(f"unexpected end of input, expected {expecting}", self.last_line, 1)
        self.pos += 1
        return item


def _keyword(tokens, key: str) -> Optional[list[_Token]]:
    """If the line starts with ``key:`` return the remaining tokens."""
    first = tokens[0]
    if first.text == key + ":":
        return tokens[1:]
    if first.text.startswith(key + ":") and len(first.text) > len(key) + 1:
        rest = first.text[len(key) + 1:]
        return [_Token(rest, first.line, first.col + len(key) + 1)] + tokens[1:]
    return None


def _header(cur: _Cursor, expected: str) -> None:
    lineno, tokens = cur.next(f"'{expected} {FORMAT_VERSION}' header")
    if tokens[0].text != expected:
        raise ParseError(f"bad header: expected '{expected}'", lineno, tokens[0].col)
    if len(tokens) != 2:
        raise ParseError("header must be '<format> <version>'", lineno, tokens[0].col)
    version = tokens[1].text
    if version != str(FORMAT_VERSION):
        raise ParseError(f"unsupported format version {version!r}", lineno, tokens[1].col)


def _int(tok: _Token, what: str) -> int:
    try:
        value = int(tok.text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok.text!r}", tok.line, tok.col) from None
    if value < 1:
        raise ParseError(f"{what} must be positive", tok.line, tok.col)
    return value


def _elements(tokens: list[_Token], index: dict[str, int]) -> list[int]:
    out = []
    for tok in tokens:
        if tok.text not in index:
            raise ParseError(f"unknown element {tok.text}", tok.line, tok.col)
        out.append(index[tok.text])
    return out


def _triple(tokens: list[_Token], index: dict[str, int], op) -> None:
    first = tokens[0]
    if len(tokens) != 4 or tokens[2].text != "=":
        raise ParseError("expected '<x> <y> = <z>'", first.line, first.col)
    x, y, z = _elements([tokens[0], tokens[1], tokens[3]], index)
    if op[x][y] != UNDEFINED:
        raise ParseError(f"duplicate entry for {tokens[0].text} {tokens[1].text}", first.line, first.col)
    op[x][y] = z


def _parse_body(cur: _Cursor, index: dict[str, int], n: int, name: str, implicit: bool, need_st: bool):
    maps: dict[str, list[int]] = {}
    op = [[UNDEFINED] * n for _ in range(n)]
    in_op = False
    lineno = cur.last_line
    while True:
        item = cur.peek()
        if implicit and (item is None or item[1][0].text == HEADER):
            break
        lineno, tokens = cur.next("'end'")
        first = tokens[0]
        if first.text == "end" and len(tokens) == 1:
            break
        if in_op:
            _triple(tokens, index, op)
            continue
        for key in ("s", "t"):
            rest = _keyword(tokens, key)
            if rest is not None:
                if key in maps:
                    raise ParseError(f"duplicate '{key}:' line", lineno, first.col)
                if len(rest) != n:
                    raise ParseError(f"'{key}:' needs {n} elements, got {len(rest)}", lineno, first.col)
                maps[key] = _elements(rest, index)
                break
        else:
            rest = _keyword(tokens, "op")
            if rest is None:
                raise ParseError(f"unexpected {first.text!r} in structure block", lineno, first.col)
            if rest:
                _triple(rest, index, op)
            in_op = True
    if need_st:
        for key in ("s", "t"):
            if key not in maps:
                raise ParseError(f"structure {name} has no '{key}:' line", lineno, 1)
    elif maps:
        raise ParseError("monoid tables take no 's:'/'t:' lines", lineno, 1)
    return name, maps, op


def _parse_blocks(cur: _Cursor, index: dict[str, int], n: int, need_st: bool = True):
    item = cur.peek()
    if item is not None and any(_keyword(item[1], k) is not None for k in ("s", "t", "op")):
        # bare single structure without a 'structure' line
        return [_parse_body(cur, index, n, "m", True, need_st)]
    blocks = []
    seen = set()
    while cur.peek() is not None:
        lineno, tokens = cur.peek()
        if tokens[0].text != "structure":
            break
        cur.next("structure")
        if len(tokens) != 2:
            raise ParseError("expected 'structure <name>'", lineno, tokens[0].col)
        name = tokens[1].text
        if name in seen:
            raise ParseError(f"duplicate structure name {name}", lineno, tokens[1].col)
        seen.add(name)
        blocks.append(_parse_body(cur, index, n, name, False, need_st))
    return blocks


def _parse_document(cur: _Cursor, need_st: bool = True):
    _header(cur, HEADER)
    lineno, tokens = cur.next("'carrier:' line")
    rest = _keyword(tokens, "carrier")
    if rest is None or len(rest) != 1:
        raise ParseError("expected 'carrier: <n>'", lineno, tokens[0].col)
    n = _int(rest[0], "carrier size")
    names = default_names(n)
    item = cur.peek()
    if item is not None:
        lineno, tokens = item
        rest = _keyword(tokens, "names")
        if rest is not None:
            cur.next("names")
            if len(rest) != n:
                raise ParseError(f"'names:' needs {n} names, got {len(rest)}", lineno, tokens[0].col)
            seen = set()
            for tok in rest:
                if tok.text in seen:
                    raise ParseError(f"duplicate name {tok.text}", lineno, tok.col)
                seen.add(tok.text)
            names = tuple(tok.text for tok in rest)
    index = {nm: i for i, nm in enumerate(names)}
    blocks = _parse_blocks(cur, index, n, need_st)
    if not blocks:
        item = cur.peek()
        line, col = (item[0], item[1][0].col) if item else (cur.last_line, 1)
        raise ParseError("expected at least one 'structure' block", line, col)
    return n, names, blocks


def _build(n, names, blocks, as_: Optional[str]) -> Structure:
    try:
        pms = [PartialMonoidStructure(n, m["s"], m["t"], op, names) for _, m, op in blocks]
    except StructureError as exc:
        raise ParseError(str(exc)) from None
    count = len(pms)
    kind = as_ or ("pm" if count == 1 else "double" if count == 2 else "nfold")
    if kind == "pm":
        if count != 1:
            raise ParseError(f"a partial monoid needs exactly 1 structure block, got {count}")
        return pms[0]
    if kind == "double":
        if count != 2:
            raise ParseError(f"a double structure needs exactly 2 structure blocks, got {count}")
        return DoubleStructure(pms[0], pms[1])
    if kind == "nfold":
        return MultiStructure(tuple(pms), tuple(name for name, _, _ in blocks))
    raise ValueError(f"unknown structure kind {kind!r}")


def parse(text: str, as_: Optional[str] = None) -> Structure:
    """Parse one document.  ``as_`` forces ``"pm"``, ``"double"`` or ``"nfold"``."""
    cur = _Cursor(text)
    n, names, blocks = _parse_document(cur)
    item = cur.peek()
    if item is not None:
        raise ParseError(f"unexpected {item[1][0].text!r} after last block", item[0], item[1][0].col)
    return _build(n, names, blocks, as_)


def parse_many(text: str, as_: Optional[str] = None) -> list[Structure]:
    """Parse a stream of documents (each starting with its own header)."""
    cur = _Cursor(text)
    out = []
    while cur.peek() is not None:
        n, names, blocks = _parse_document(cur)
        out.append(_build(n, names, blocks, as_))
    return out


def parse_monoid_table(text: str) -> tuple[list[list[int]], tuple[str, ...]]:
    """A single block with only ``op`` triples; every pair must be present."""
    cur = _Cursor(text)
    n, names, blocks = _parse_document(cur, need_st=False)
    if len(blocks) != 1:
        raise ParseError(f"a monoid table needs exactly 1 structure block, got {len(blocks)}")
    op = blocks[0][2]
    for x in range(n):
        for y in range(n):
            if op[x][y] == UNDEFINED:
                raise ParseError(f"monoid table is missing {names[x]} {names[y]}")
    return op, names


def _block_lines(name: str, p: PartialMonoidStructure) -> list[str]:
    nm = p.names
    lines = [f"structure {name}", "s: " + " ".join(nm[v] for v in p.s), "t: " + " ".join(nm[v] for v in p.t), "op:"]
    for x in range(p.n):
        for y in range(p.n):
            z = p.op[x][y]
            if z != UNDEFINED:
                lines.append(f"{nm[x]} {nm[y]} = {nm[z]}")
    lines.append("end")
    return lines


def serialize(obj: Structure) -> str:
    if isinstance(obj, PartialMonoidStructure):
        blocks = [("m", obj)]
    elif isinstance(obj, DoubleStructure):
        blocks = [("h", obj.h), ("v", obj.v)]
    elif isinstance(obj, MultiStructure):
        blocks = list(zip(obj.axes, obj.structures))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    first = blocks[0][1]
    lines = [f"{HEADER} {FORMAT_VERSION}", f"carrier: {first.n}"]
    if first.names != default_names(first.n):
        lines.append("names: " + " ".join(first.names))
    for name, p in blocks:
        lines.extend(_block_lines(name, p))
    return "\n".join(lines) + "\n"


def serialize_many(objs: Iterable[Structure]) -> str:
    """Documents separated by one blank line."""
    return "\n".join(serialize(o) for o in objs)


# --- categories --------------------------------------------------------------


def serialize_category(cat: CategoryPresentation) -> str:
    mor = cat.morphisms
    lines = [
        f"{CATEGORY_HEADER} {FORMAT_VERSION}",
        "objects: " + " ".join(cat.objects),
        "morphisms: " + " ".join(mor),
        "src: " + " ".join(cat.objects[o] for o in cat.src),
        "tgt: " + " ".join(cat.objects[o] for o in cat.tgt),
        "identity: " + " ".join(mor[i] for i in cat.identity),
        "comp:",
    ]
    for (g, f), h in sorted(cat.comp.items()):
        lines.append(f"{mor[g]} {mor[f]} = {mor[h]}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_category(text: str) -> CategoryPresentation:
    cur = _Cursor(text)
    _header(cur, CATEGORY_HEADER)
    fields: dict[str, list[_Token]] = {}
    for key in ("objects", "morphisms", "src", "tgt", "identity"):
        lineno, tokens = cur.next(f"'{key}:' line")
        rest = _keyword(tokens, key)
        if rest is None:
            raise ParseError(f"expected '{key}:'", lineno, tokens[0].col)
        fields[key] = rest
    objects = tuple(t.text for t in fields["objects"])
    morphisms = tuple(t.text for t in fields["morphisms"])
    oidx = {o: i for i, o in enumerate(objects)}
    midx = {m: i for i, m in enumerate(morphisms)}
    if len(oidx) != len(objects) or len(midx) != len(morphisms):
        raise ParseError("duplicate object or morphism name", fields["objects"][0].line if objects else 0)

    def resolve(key, table, count):
        toks = fields[key]
        if len(toks) != count:
            line = toks[0].line if toks else 0
            raise ParseError(f"'{key}:' needs {count} entries, got {len(toks)}", line, 1)
        return tuple(_elements(toks, table))

    src = resolve("src", oidx, len(morphisms))
    tgt = resolve("tgt", oidx, len(morphisms))
    identity = resolve("identity", midx, len(objects))
    lineno, tokens = cur.next("'comp:' line")
    if _keyword(tokens, "comp") is None:
        raise ParseError("expected 'comp:'", lineno, tokens[0].col)
    comp = {}
    while True:
        lineno, tokens = cur.next("'end'")
        if tokens[0].text == "end" and len(tokens) == 1:
            break
        if len(tokens) != 4 or tokens[2].text != "=":
            raise ParseError("expected '<g> <f> = <h>'", lineno, tokens[0].col)
        g, f, h = _elements([tokens[0], tokens[1], tokens[3]], midx)
        if (g, f) in comp:
            raise ParseError(f"duplicate entry for {tokens[0].text} {tokens[1].text}", lineno, tokens[0].col)
        comp[(g, f)] = h
    try:
        return CategoryPresentation(objects, morphisms, src, tgt, identity, comp)
    except StructureError as exc:
        raise ParseError(str(exc)) from None
