"""graph6 and plain edge-list text formats.

graph6 records are encoded bit-exactly per the published format: a size
prefix N(n), then the upper triangle of the adjacency matrix read
column by column (bit (i,j) for i < j, j ascending, i ascending inside
each column), packed big-endian into 6-bit groups offset by 63.
"""

from __future__ import annotations

from .graph import Graph, GraphError


class FormatError(ValueError):
    """Malformed text record; carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


GRAPH6_HEADER = ">>graph6<<"


def _parse_size(data: bytes) -> tuple[int, int]:
    """Decode the N(n) prefix, returning (n, bytes consumed)."""
    if not data:
        raise FormatError("empty graph6 record", 0)
    b0 = data[0]
    if b0 == 126:  # '~'
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise FormatError("truncated 8-byte size prefix", len(data))
            vals = [c - 63 for c in data[2:8]]
            if any(v < 0 or v > 63 for v in vals):
                bad = next(i for i, v in enumerate(vals) if v < 0 or v > 63)
                raise FormatError("size byte out of range", 2 + bad)
            n = 0
            for v in vals:
                n = n << 6 | v
            return n, 8
        if len(data) < 4:
            raise FormatError("truncated 4-byte size prefix", len(data))
        vals = [c - 63 for c in data[1:4]]
        if any(v < 0 or v > 63 for v in vals):
            bad = next(i for i, v in enumerate(vals) if v < 0 or v > 63)
            raise FormatError("size byte out of range", 1 + bad)
        n = 0
        for v in vals:
            n = n << 6 | v
        if n < 63:
            raise FormatError("overlong size prefix", 1)
        return n, 4
    if not 63 <= b0 <= 125:
        raise FormatError(f"invalid size byte {b0!r}", 0)
    return b0 - 63, 1


def _emit_size(n: int) -> bytes:
    if n < 0:
        raise GraphError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise GraphError(f"vertex count {n} too large for graph6")


def parse_graph6(text: str) -> Graph:
    """Parse one graph6 record (an optional '>>graph6<<' header is tolerated)."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    data = s.encode("ascii", errors="strict") if s.isascii() else None
    if data is None:
        bad = next(i for i, ch in enumerate(s) if ord(ch) > 127)
        raise FormatError("non-ASCII byte in graph6 record", bad)
    n, used = _parse_size(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[used:]
    if len(body) != nbytes:
        raise FormatError(
            f"expected {nbytes} data bytes for n={n}, found {len(body)}",
            used + min(len(body), nbytes),
        )
    bits = []
    for k, c in enumerate(body):
        v = c - 63
        if v < 0 or v > 63:
            raise FormatError(f"data byte {c!r} out of range", used + k)
        bits.extend((v >> shift & 1) for shift in range(5, -1, -1))
    for extra in range(nbits, len(bits)):
        if bits[extra]:
            raise FormatError("padding bits set", used + extra // 6)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def emit_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(g.bits[i] >> j & 1)
    while len(bits) % 6:
        bits.append(0)
    out = bytearray(_emit_size(g.n))
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = v << 1 | b
        out.append(v + 63)
    return out.decode("ascii")


def parse_graph6_lines(text: str) -> list[Graph]:
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


# -- plain edge-list format ------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the fixture format: a 'n m' header line, then one 'u v' per line."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError(f"non-integer header {lines[0]!r}") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"non-integer edge line {ln!r}") from exc
        edges.append((u, v))
    if len(edges) != m:
        raise FormatError(f"header promises {m} edges, found {len(edges)}")
    return Graph(n, edges)


def emit_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
