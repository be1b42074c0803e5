"""Line-oriented graph documents.

Four shapes are understood::

    chain 2 3
    fork h=2 twig 2 twig 3 twig 2 2 2
    star b=1 twig 2 twig 3 twig 3 3
    tree
    v 0 1
    v 1 2
    e 0 1

Weights are absolute by default: ``2`` means a (-2)-curve. A leading line
``weights signed`` switches to self-intersections as written, which is also
what ``emit`` produces. ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Chain, Fork, StarBoundary, WeightedTree

Shape = WeightedTree | Chain | Fork | StarBoundary


class DocumentError(ValueError):
    """Syntax or invariant error with a 1-based position."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _lines(text: str) -> list[list[_Tok]]:
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = []
        i = 0
        while i < len(body):
            if body[i].isspace():
                i += 1
                continue
            j = i
            while j < len(body) and not body[j].isspace():
                j += 1
            toks.append(_Tok(body[i:j], n, i + 1))
            i = j
        if toks:
            out.append(toks)
    return out


def _int(tok: _Tok) -> int:
    try:
        return int(tok.text)
    except ValueError:
        raise DocumentError(f"expected an integer, got {tok.text!r}", tok.line, tok.col) from None


def _weight(tok: _Tok, signed: bool) -> int:
    v = _int(tok)
    if signed:
        return v
    if v < 0:
        raise DocumentError("absolute weights are nonnegative; use 'weights signed' for "
                            "self-intersections", tok.line, tok.col)
    return -v


def _keyed(tok: _Tok, key: str) -> int:
    if not tok.text.startswith(key + "="):
        raise DocumentError(f"expected {key}=INT", tok.line, tok.col)
    return _int(_Tok(tok.text[len(key) + 1:], tok.line, tok.col + len(key) + 1))


def _twigs(toks: list[_Tok], signed: bool) -> list[Chain]:
    twigs: list[list[int]] = []
    for tok in toks:
        if tok.text == "twig":
            twigs.append([])
        elif not twigs:
            raise DocumentError("expected 'twig'", tok.line, tok.col)
        else:
            twigs[-1].append(_weight(tok, signed))
    for tok, t in zip([t for t in toks if t.text == "twig"], twigs):
        if not t:
            raise DocumentError("empty twig", tok.line, tok.col)
    return [Chain(t) for t in twigs]


def parse_graph(text: str, signed: bool = False) -> Shape:
    lines = _lines(text)
    if lines and [t.text for t in lines[0]][:1] == ["weights"]:
        head = lines.pop(0)
        if len(head) != 2 or head[1].text not in ("signed", "absolute"):
            raise DocumentError("expected 'weights signed' or 'weights absolute'",
                                head[0].line, head[0].col)
        signed = head[1].text == "signed"
    if not lines:
        raise DocumentError("empty document", 1, 1)
    first = lines[0]
    kind = first[0]
    rest = first[1:]

    def single_line() -> None:
        if len(lines) > 1:
            t = lines[1][0]
            raise DocumentError(f"unexpected content after {kind.text}", t.line, t.col)

    def invariant(err: ValueError) -> DocumentError:
        return DocumentError(str(err), kind.line, kind.col)

    if kind.text == "chain":
        single_line()
        if not rest:
            raise DocumentError("a chain needs at least one weight", kind.line, kind.col + 5)
        return Chain([_weight(t, signed) for t in rest])
    if kind.text in ("fork", "star"):
        single_line()
        key = "h" if kind.text == "fork" else "b"
        if not rest:
            raise DocumentError(f"expected {key}=INT", kind.line, kind.col + len(kind.text) + 1)
        center = _keyed(rest[0], key)
        twigs = _twigs(rest[1:], signed)
        try:
            if kind.text == "fork":
                return Fork(center, tuple(twigs))
            return StarBoundary(center, tuple(twigs))
        except ValueError as err:
            raise invariant(err) from None
    if kind.text == "tree":
        if rest:
            raise DocumentError("'tree' takes no arguments", rest[0].line, rest[0].col)
        verts: dict[int, int] = {}
        edges = []
        for toks in lines[1:]:
            tag = toks[0]
            if tag.text == "v" and len(toks) == 3:
                vid = _int(toks[1])
                if vid in verts:
                    raise DocumentError(f"duplicate vertex {vid}", toks[1].line, toks[1].col)
                verts[vid] = _weight(toks[2], signed)
            elif tag.text == "e" and len(toks) == 3:
                edges.append((_int(toks[1]), _int(toks[2])))
            else:
                raise DocumentError("expected 'v ID WEIGHT' or 'e ID ID'", tag.line, tag.col)
        if not verts:
            raise DocumentError("a tree needs at least one vertex", kind.line, kind.col)
        try:
            return WeightedTree.build(verts, edges)
        except ValueError as err:
            raise invariant(err) from None
    raise DocumentError(f"unknown shape {kind.text!r}", kind.line, kind.col)


def _ws(ws) -> str:
    return " ".join(str(w) for w in ws)


def emit(shape: Shape) -> str:
    """Canonical document with signed self-intersections."""
    head = "weights signed\n"
    if isinstance(shape, Chain):
        return head + f"chain {_ws(shape.weights)}\n"
    if isinstance(shape, Fork):
        twigs = " ".join(f"twig {_ws(z.weights)}" for z in shape.twigs)
        return head + f"fork h={shape.h} {twigs}\n"
    if isinstance(shape, StarBoundary):
        twigs = " ".join(f"twig {_ws(z.weights)}" for z in shape.twigs)
        return head + f"star b={shape.b} {twigs}\n"
    lines = [head + "tree"]
    lines += [f"v {v} {w}" for v, w in sorted(shape.weights.items())]
    lines += [f"e {u} {v}" for u, v in sorted(tuple(sorted(e)) for e in shape.edges)]
    return "\n".join(lines) + "\n"
