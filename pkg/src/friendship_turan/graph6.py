"""graph6 encoding (McKay's format for simple undirected graphs)."""

from __future__ import annotations

from collections.abc import Iterable

from .graph import Graph

__all__ = ["encode", "decode", "read_graph6", "write_graph6", "Graph6Error"]

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> str:
    if n < 0:
        raise Graph6Error("negative order")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error("order too large for graph6")


def encode(G: Graph) -> str:
    """Encode ``G`` as one graph6 line (no header, no newline)."""
    n = G.n
    out = [_encode_n(n)]
    adj = G.adj
    acc = 0
    nbits = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def decode(line: str) -> Graph:
    """Decode one graph6 line; an optional ``>>graph6<<`` prefix is accepted."""
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    vals = []
    for pos, ch in enumerate(s):
        c = ord(ch)
        if not 63 <= c <= 126:
            raise Graph6Error(f"character {ch!r} at position {pos} outside graph6 range")
        vals.append(c - 63)
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte order header")
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        body = vals[8:]
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated 4-byte order header")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
    total = n * (n - 1) // 2
    need = -(-total // 6)
    if len(body) < need:
        raise Graph6Error(f"truncated bit stream: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"trailing data: expected {need} bytes, got {len(body)}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if need and total % 6 and body[-1] & ((1 << (6 - total % 6)) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, adj)


def read_graph6(text: str) -> list[Graph]:
    """All graphs in a multi-line graph6 text, skipping blank lines."""
    return [decode(line) for line in text.splitlines() if line.strip()]


def write_graph6(graphs: Iterable[Graph]) -> str:
    return "".join(encode(G) + "\n" for G in graphs)
