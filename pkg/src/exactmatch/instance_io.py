"""Line-oriented text format for coloured instances.

::

    c free comment
    p em <n> <m>
    class <tag> key=value ...
    cert <key> <ints|fracs|groups|pairs> token ...
    bip <side of vertex 0> <side of vertex 1> ...
    k <target>
    e <u> <v> <r|b>

Parameter values are ints, floats, ``[i,j,..]`` int tuples or bare words.
``groups`` tokens are comma-separated vertex lists, ``pairs`` tokens are
``u-v``. Rendering then parsing gives back an equal instance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, InstanceParseError
from .generators import ClassInstance
from .graph import ColoredGraph

_INT = re.compile(r"^-?\d+$")
_FLOAT = re.compile(r"^-?(\d+\.\d*|\.\d+|\d+)([eE]-?\d+)?$")


@dataclass(frozen=True)
class InstanceFile:
    instance: ClassInstance
    k: Optional[int] = None

    @property
    def graph(self) -> ColoredGraph:
        return self.instance.graph


# ---------------------------------------------------------------- render


def _render_value(v) -> str:
    if isinstance(v, bool):
        raise DomainError("boolean parameters are not supported")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, tuple):
        return "[" + ",".join(str(int(x)) for x in v) + "]"
    s = str(v)
    if not s or any(ch.isspace() for ch in s) or "=" in s:
        raise DomainError(f"parameter value {s!r} cannot be written")
    return s


def _render_cert(key, val) -> str:
    val = tuple(val)
    if all(isinstance(x, Fraction) for x in val) and val:
        return f"cert {key} fracs " + " ".join(str(x) for x in val)
    if all(isinstance(x, tuple) for x in val) and val:
        if all(len(x) == 2 for x in val):
            return f"cert {key} pairs " + " ".join(f"{a}-{b}" for a, b in val)
        return f"cert {key} groups " + " ".join(",".join(map(str, g)) for g in val)
    return (f"cert {key} ints " + " ".join(str(int(x)) for x in val)).rstrip()


def render(inst: ClassInstance, k: Optional[int] = None, comment: Optional[str] = None) -> str:
    g = inst.graph
    lines = []
    if comment:
        lines += [f"c {line}" for line in comment.splitlines()]
    lines.append(f"p em {g.n} {g.m}")
    params = " ".join(f"{key}={_render_value(v)}" for key, v in inst.params.items())
    lines.append(f"class {inst.class_tag} {params}".rstrip())
    for key, val in inst.certificate.items():
        lines.append(_render_cert(key, val))
    if g.bipartition is not None:
        X = g.bipartition[0]
        lines.append("bip " + " ".join("0" if v in X else "1" for v in range(g.n)))
    if k is not None:
        lines.append(f"k {k}")
    for u, v in g.edges:
        lines.append(f"e {u} {v} {'r' if (u, v) in g.red else 'b'}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- parse


def _tokens(line: str):
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _int(tok, lineno, col, what="integer"):
    if not _INT.match(tok):
        raise InstanceParseError(f"expected {what}, got {tok!r}", lineno, col)
    return int(tok)


def _param(tok, lineno, col):
    if "=" not in tok:
        raise InstanceParseError(f"expected key=value, got {tok!r}", lineno, col)
    key, val = tok.split("=", 1)
    if not key:
        raise InstanceParseError("empty parameter name", lineno, col)
    if val.startswith("[") and val.endswith("]"):
        body = val[1:-1]
        parts = [p for p in body.split(",")] if body else []
        if any(not _INT.match(p) for p in parts):
            raise InstanceParseError(f"bad integer list {val!r}", lineno, col)
        return key, tuple(int(p) for p in parts)
    if _INT.match(val):
        return key, int(val)
    if _FLOAT.match(val):
        return key, float(val)
    if not val:
        raise InstanceParseError(f"parameter {key!r} has no value", lineno, col)
    return key, val


def _cert_value(kind, toks, lineno):
    out = []
    for tok, col in toks:
        if kind == "ints":
            out.append(_int(tok, lineno, col))
        elif kind == "fracs":
            try:
                out.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise InstanceParseError(f"bad fraction {tok!r}", lineno, col) from None
        elif kind == "groups":
            out.append(tuple(_int(p, lineno, col) for p in tok.split(",")))
        else:
            bits = tok.split("-")
            if len(bits) != 2:
                raise InstanceParseError(f"expected u-v, got {tok!r}", lineno, col)
            out.append((_int(bits[0], lineno, col), _int(bits[1], lineno, col)))
    return tuple(out)


def parse(text: str) -> InstanceFile:
    """Parse an instance; errors carry the 1-based line and column."""
    n = m = None
    tag, params, cert = None, {}, {}
    sides = None
    k = None
    edges, red = [], []
    seen_edges: dict = {}
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        head, hcol = toks[0]
        if head == "c":
            continue
        if head == "p":
            if n is not None:
                raise InstanceParseError("duplicate problem line", lineno, hcol)
            if len(toks) != 4 or toks[1][0] != "em":
                raise InstanceParseError("expected 'p em <n> <m>'", lineno, hcol)
            n = _int(toks[2][0], lineno, toks[2][1], "vertex count")
            m = _int(toks[3][0], lineno, toks[3][1], "edge count")
            if n < 0 or m < 0:
                raise InstanceParseError("counts must be non-negative", lineno, toks[2][1])
            header_line = lineno
            continue
        if n is None:
            raise InstanceParseError("'p em <n> <m>' must come first", lineno, hcol)
        if head == "class":
            if tag is not None:
                raise InstanceParseError("duplicate class line", lineno, hcol)
            if len(toks) < 2:
                raise InstanceParseError("class line needs a tag", lineno, hcol)
            tag = toks[1][0]
            for tok, col in toks[2:]:
                key, val = _param(tok, lineno, col)
                params[key] = val
        elif head == "cert":
            if len(toks) < 3:
                raise InstanceParseError("expected 'cert <key> <type> ...'", lineno, hcol)
            kind, kcol = toks[2]
            if kind not in ("ints", "fracs", "groups", "pairs"):
                raise InstanceParseError(f"unknown certificate type {kind!r}", lineno, kcol)
            cert[toks[1][0]] = _cert_value(kind, toks[3:], lineno)
        elif head == "bip":
            if len(toks) - 1 != n:
                raise InstanceParseError(f"bip line needs {n} sides", lineno, hcol)
            sides = [_int(t, lineno, c, "side 0 or 1") for t, c in toks[1:]]
            bad = [c for (t, c), s in zip(toks[1:], sides) if s not in (0, 1)]
            if bad:
                raise InstanceParseError("sides must be 0 or 1", lineno, bad[0])
        elif head == "k":
            if len(toks) != 2:
                raise InstanceParseError("expected 'k <target>'", lineno, hcol)
            k = _int(toks[1][0], lineno, toks[1][1], "target")
        elif head == "e":
            if len(toks) != 4:
                col = toks[-1][1] + len(toks[-1][0]) if len(toks) < 4 else toks[4][1]
                raise InstanceParseError("expected 'e <u> <v> <r|b>'", lineno, col)
            u = _int(toks[1][0], lineno, toks[1][1], "vertex")
            v = _int(toks[2][0], lineno, toks[2][1], "vertex")
            for x, (_, col) in ((u, toks[1]), (v, toks[2])):
                if not 0 <= x < n:
                    raise InstanceParseError(f"vertex {x} outside 0..{n - 1}", lineno, col)
            if u == v:
                raise InstanceParseError(f"self-loop at vertex {u}", lineno, toks[1][1])
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise InstanceParseError(f"duplicate edge {key} (first on line {seen_edges[key]})",
                                         lineno, toks[1][1])
            seen_edges[key] = lineno
            colour, ccol = toks[3]
            if colour not in ("r", "b"):
                raise InstanceParseError(f"edge colour must be 'r' or 'b', got {colour!r}", lineno, ccol)
            edges.append(key)
            if colour == "r":
                red.append(key)
        else:
            raise InstanceParseError(f"unknown line type {head!r}", lineno, hcol)
    if n is None:
        raise InstanceParseError("missing 'p em <n> <m>' line", max(1, len(text.splitlines())), 1)
    if len(edges) != m:
        raise InstanceParseError(f"header promises {m} edges, found {len(edges)}", header_line, 1)
    bip = None
    if sides is not None:
        bip = (frozenset(v for v in range(n) if sides[v] == 0),
               frozenset(v for v in range(n) if sides[v] == 1))
    try:
        g = ColoredGraph.from_edges(n, edges, red, bipartition=bip)
    except DomainError as exc:
        raise InstanceParseError(str(exc), header_line, 1) from None
    inst = ClassInstance(g, tag or "untagged", params, cert)
    return InstanceFile(inst, k)


def read_instance(path) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_instance(path, inst: ClassInstance, k: Optional[int] = None, comment: Optional[str] = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(inst, k, comment))
