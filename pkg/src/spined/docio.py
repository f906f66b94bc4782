"""Plain-text table documents.

::

    # comment lines and blank lines are ignored
    3
    0 0 0
    0 1 2
    2 2 2
    labels: z 1 a
    subset S0: 0,1
    map phi: 0,2,1
    chen carrier: 2
    chen embed: 0=0,1=1
    chen act 0: 0 0 -1
    chen proj: 0 1
    chen star 0: 0 0

Line 1 is the order n, the next n lines the rows of the table (row a holds
the products a*b).  ``subset`` and ``map`` lines name index lists; ``chen``
lines carry construction data over the table (see :func:`chen_data`).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .core import FiniteSemigroup, validate
from .errors import DocumentSyntaxError, OutOfRange


@dataclass
class SemigroupDocument:
    semigroup: FiniteSemigroup
    subsets: dict[str, tuple[int, ...]] = field(default_factory=dict)
    maps: dict[str, tuple[int, ...]] = field(default_factory=dict)
    chen: dict | None = None
    source: str | None = None


def _ints(tokens, line, col0, lo=None, hi=None, cols=None):
    out, col = [], col0
    for k, tok in enumerate(tokens):
        if cols is not None:
            col = cols[k]
        try:
            v = int(tok)
        except ValueError:
            raise DocumentSyntaxError(f"expected an integer, got {tok!r}", line, col) from None
        if (lo is not None and v < lo) or (hi is not None and v >= hi):
            raise OutOfRange(f"line {line}, column {col}: {v} outside [{lo}, {hi})", witness=(line, col))
        out.append(v)
        col += len(tok) + 1
    return out


def _index_list(text, line, col, n):
    text = text.strip()
    if not text:
        return ()
    parts = [p.strip() for p in text.split(",")]
    return tuple(_ints(parts, line, col, 0, n))


def parse(text: str) -> SemigroupDocument:
    lines = [(i + 1, raw.rstrip("\r")) for i, raw in enumerate(text.split("\n"))]
    raw = dict(lines)
    body = [(no, ln.strip()) for no, ln in lines if ln.strip() and not ln.strip().startswith("#")]
    if not body:
        raise DocumentSyntaxError("empty document", 1)
    no, first = body[0]
    (n,) = _ints([first], no, 1) if len(first.split()) == 1 else (None,)
    if n is None or n < 1:
        raise DocumentSyntaxError("first line must be a positive order", no)
    if len(body) < n + 1:
        raise DocumentSyntaxError(f"expected {n} table rows", body[-1][0] + 1)
    rows = []
    for no, ln in body[1:n + 1]:
        found = list(re.finditer(r"\S+", raw[no]))
        if len(found) != n:
            raise DocumentSyntaxError(f"expected {n} entries, got {len(found)}", no)
        rows.append(_ints([m.group() for m in found], no, 1, 0, n, [m.start() + 1 for m in found]))
    labels = None
    subsets: dict[str, tuple[int, ...]] = {}
    maps: dict[str, tuple[int, ...]] = {}
    chen: dict = {}
    for no, ln in body[n + 1:]:
        head, sep, rest = ln.partition(":")
        if not sep:
            raise DocumentSyntaxError("expected 'keyword: value'", no)
        col = len(head) + 2 + len(rest) - len(rest.lstrip())
        words = head.split()
        if words == ["labels"]:
            labels = rest.split()
            if len(labels) != n:
                raise DocumentSyntaxError(f"expected {n} labels, got {len(labels)}", no, col)
        elif len(words) == 2 and words[0] == "subset":
            subsets[words[1]] = tuple(sorted(set(_index_list(rest, no, col, n))))
        elif len(words) == 2 and words[0] == "map":
            maps[words[1]] = _index_list(rest, no, col, 1 << 31)
        elif words and words[0] == "chen":
            _parse_chen(chen, words[1:], rest, no, col, n)
        else:
            raise DocumentSyntaxError(f"unknown section {head.strip()!r}", no)
    S = validate(np.array(rows, dtype=np.int64), labels)
    return SemigroupDocument(S, subsets, maps, chen or None, text)


def _parse_chen(chen, words, rest, no, col, n):
    key = words[0] if words else ""
    if key == "carrier" and len(words) == 1:
        chen["carrier"] = _ints(rest.split(), no, col, 1)[0]
    elif key == "labels" and len(words) == 1:
        chen["labels"] = rest.split()
    elif key == "embed" and len(words) == 1:
        emb = {}
        for part in rest.split(","):
            s, eq, i = part.partition("=")
            if not eq:
                raise DocumentSyntaxError("expected s=i pairs", no, col)
            a, b = _ints([s.strip(), i.strip()], no, col, 0)
            emb[a] = b
        chen["embed"] = emb
    elif key == "proj" and len(words) == 1:
        chen["proj"] = _ints(rest.split(), no, col, 0, n)
    elif key in ("act", "star") and len(words) == 2:
        (idx,) = _ints([words[1]], no, 1, 0)
        chen.setdefault(key, {})[idx] = _ints(rest.split(), no, col, -1)
    else:
        raise DocumentSyntaxError(f"unknown chen section {' '.join(words)!r}", no)


def serialize(doc: SemigroupDocument) -> str:
    S = doc.semigroup
    out = [str(S.order)]
    out += [" ".join(map(str, row)) for row in S.rows]
    if S.labels:
        out.append("labels: " + " ".join(S.labels))
    for name, members in doc.subsets.items():
        out.append(f"subset {name}: " + ",".join(map(str, sorted(set(members)))))
    for name, values in doc.maps.items():
        out.append(f"map {name}: " + ",".join(map(str, values)))
    if doc.chen:
        c = doc.chen
        out.append(f"chen carrier: {c['carrier']}")
        if c.get("labels"):
            out.append("chen labels: " + " ".join(c["labels"]))
        out.append("chen embed: " + ",".join(f"{s}={i}" for s, i in sorted(c["embed"].items())))
        for i, row in sorted(c.get("act", {}).items()):
            out.append(f"chen act {i}: " + " ".join(map(str, row)))
        out.append("chen proj: " + " ".join(map(str, c["proj"])))
        for f, row in sorted(c.get("star", {}).items()):
            out.append(f"chen star {f}: " + " ".join(map(str, row)))
    return "\n".join(out) + "\n"


def canonical(text: str) -> str:
    return serialize(parse(text))


def document(S: FiniteSemigroup, subsets=None, maps=None, chen=None) -> SemigroupDocument:
    return SemigroupDocument(S, {k: tuple(sorted(v)) for k, v in (subsets or {}).items()},
                             {k: tuple(v) for k, v in (maps or {}).items()}, chen)


def chen_section(data) -> dict:
    """The ``chen`` lines for a :class:`~spined.construction.ChenData`."""
    E0 = sorted(data.embed)
    return {
        "carrier": data.carrier_size,
        "labels": list(data.labels) if data.labels else None,
        "embed": dict(data.embed),
        "act": {i: [int(v) for v in data.act[i]] for i in range(data.carrier_size)},
        "proj": list(data.proj),
        "star": {f: [int(v) for v in data.star[f]] for f in E0},
    }


def chen_data(doc: SemigroupDocument):
    """Build ChenData from a document's ``chen`` lines.

    ``act i`` rows list i (x) s for every s of the table (-1 off E0);
    ``star f`` rows list f * i over the carrier, for f in E0.
    """
    from .construction import ChenData

    c = doc.chen
    if not c or any(k not in c for k in ("carrier", "embed", "proj")):
        raise DocumentSyntaxError("document lacks chen carrier/embed/proj sections", 1)
    S, m = doc.semigroup, c["carrier"]
    act = np.full((m, S.order), -1, dtype=np.int64)
    for i, row in c.get("act", {}).items():
        if i >= m or len(row) != S.order:
            raise OutOfRange(f"chen act {i}: needs {S.order} entries for a carrier element", witness=i)
        act[i] = row
    star = np.full((S.order, m), -1, dtype=np.int64)
    for f, row in c.get("star", {}).items():
        if f >= S.order or len(row) != m:
            raise OutOfRange(f"chen star {f}: needs {m} entries for an element of the table", witness=f)
        star[f] = row
    labels = tuple(c["labels"]) if c.get("labels") else None
    return ChenData(S, m, dict(c["embed"]), act, tuple(c["proj"]), star, labels)
