"""Stretch-2 compact routing on double histograms.

Labels carry a vertex's coordinates and the x-bounds of its landmark
interval. The routing table holds the x-bounds of the level-2 intervals
of the two vertical dominators, the coordinates of the level-2 bottom
dominator, and one path-choice bit. A step reads only the closed
neighborhood's labels, the local table, the target label, and a header
of at most one vertex's coordinates, and every routed path is at most
twice a shortest one.
"""

import bisect
import dataclasses

from . import landmarks as lmk
from .engine import HeaderProtocolError, RoutingError, SchemeBuildError


@dataclasses.dataclass(frozen=True)
class DoubleLabel:
    x: int
    y: int
    ilo: int    # left x-bound of I(v)
    ihi: int    # right x-bound of I(v)


@dataclasses.dataclass(frozen=True)
class DoubleTable:
    i2bd_lo: int
    i2bd_hi: int
    i2td_lo: int
    i2td_hi: int
    bd2x: int
    bd2y: int
    bit_bottom: bool


class DoubleLink:
    """Labels of the closed neighborhood, addressable by coordinates."""

    def __init__(self, entries, own_vid: int):
        # entries: (vid, DoubleLabel) pairs
        self.entries = sorted(entries, key=lambda e: (e[1].x, e[1].y))
        self.id_set = {vid for vid, _ in self.entries}
        self.own_vid = own_vid
        self.own = next(lab for vid, lab in self.entries if vid == own_vid)
        self._by_coord = {(lab.x, lab.y): vid for vid, lab in self.entries}
        self._xs = [lab.x for _, lab in self.entries]
        self._chains = None
        self._vdom = None

    def find(self, x: int, y: int):
        return self._by_coord.get((x, y))


def _dist(lab: DoubleLabel) -> int:
    return -lab.y if lab.y < 0 else lab.y


def _group_min(entries, i, j):
    """The (distance to base, y)-minimal entry of entries[i:j], which
    all share one x (at most two by general position)."""
    best = entries[i]
    for k in range(i + 1, j):
        e = entries[k]
        if (_dist(e[1]), e[1].y) < (_dist(best[1]), best[1].y):
            best = e
    return best


def _local_dominators(link: DoubleLink, tx: int):
    """Near and far dominator toward x-coordinate tx, from labels alone.

    Mirrors the global definition: candidates are the closed
    neighborhood, the far side includes tx itself, ties break toward
    the base line. fd is None when the far side is empty. The winners
    always sit in the x-group adjacent to tx on their side, so two
    bisections suffice on the x-sorted entries.
    """
    entries, xs = link.entries, link._xs
    if tx > link.own.x:
        i = bisect.bisect_left(xs, tx)
        nd = _group_min(entries, bisect.bisect_left(xs, xs[i - 1]), i)
        fd = _group_min(entries, i, bisect.bisect_right(xs, xs[i])) \
            if i < len(entries) else None
    else:
        i = bisect.bisect_right(xs, tx)
        nd = _group_min(entries, i, bisect.bisect_right(xs, xs[i]))
        fd = _group_min(entries, bisect.bisect_left(xs, xs[i - 1]), i) \
            if i > 0 else None
    return nd, fd


def _local_vertical_dominators(link: DoubleLink):
    """Bottom and top dominator entries over the closed neighborhood:
    the (distance to base, x)-minimal entries below and above the base
    line, an empty side copying the other. Cached per link."""
    if link._vdom is None:
        below = [e for e in link.entries if e[1].y < 0]
        above = [e for e in link.entries if e[1].y > 0]
        bd = min(below, key=lambda e: (_dist(e[1]), e[1].x)) if below else None
        td = min(above, key=lambda e: (_dist(e[1]), e[1].x)) if above else None
        if bd is None:
            bd = td
        if td is None:
            td = bd
        link._vdom = (bd, td)
    return link._vdom


def _local_chains(link: DoubleLink):
    """Greedy interval-extension chains over the neighbor labels.

    Left chain: repeatedly pick, among neighbors whose interval starts
    strictly left of the current one, the leftmost vertex (ties toward
    the base). Right chain mirrored. Both start at the own label.
    Cached per link.
    """
    if link._chains is not None:
        return link._chains
    own = (link.own_vid, link.own)
    nbr = [e for e in link.entries if e[0] != link.own_vid]
    chain_a = [own]
    while True:
        cur = chain_a[-1][1]
        cands = [e for e in nbr if e[1].ilo < cur.ilo]
        if not cands:
            break
        chain_a.append(min(cands, key=lambda e: (e[1].x, _dist(e[1]), e[1].y)))
    chain_b = [own]
    while True:
        cur = chain_b[-1][1]
        cands = [e for e in nbr if e[1].ihi > cur.ihi]
        if not cands:
            break
        chain_b.append(min(cands, key=lambda e: (-e[1].x, _dist(e[1]), e[1].y)))
    link._chains = (chain_a, chain_b)
    return link._chains


def route_step_double(link: DoubleLink, table: DoubleTable,
                      target: DoubleLabel, header):
    """One routing hop: (next vertex id, outgoing header).

    Pure function of the four local inputs. The header is None or a
    coordinate pair naming a vertex that must be visible here.
    """
    hit = link.find(target.x, target.y)
    if hit is not None:
        return hit, None
    own = link.own
    if header is not None:
        hx, hy = header
        if (hx, hy) == (own.x, own.y):
            header = None    # the named vertex is this one: discard
        else:
            nxt = link.find(hx, hy)
            if nxt is None:
                raise HeaderProtocolError(
                    f"header names ({hx},{hy}), which is not visible here")
            return nxt, None

    tx = target.x
    # case 1: target inside the own interval
    if own.ilo <= tx <= own.ihi:
        nd, fd = _local_dominators(link, tx)
        pick = fd if fd is not None else nd
        if pick[0] == link.own_vid:
            raise RoutingError(
                f"dominator toward x={tx} degenerated to the current vertex")
        return pick[0], None

    # case 2: target inside the level-2 interval
    chain_a, chain_b = _local_chains(link)
    if tx < own.ilo:
        if tx >= chain_a[-1][1].ilo:
            for vid, lab in chain_a[1:]:
                if lab.ilo <= tx:
                    return vid, None
    else:
        if tx <= chain_b[-1][1].ihi:
            for vid, lab in chain_b[1:]:
                if lab.ihi >= tx:
                    return vid, None

    bd, td = _local_vertical_dominators(link)
    # case 3: target inside the level-3 interval
    if table.i2bd_lo <= tx <= table.i2bd_hi:
        return bd[0], None
    if table.i2td_lo <= tx <= table.i2td_hi:
        return td[0], None

    # case 4: beyond the level-3 interval; aim for the level-2 bottom
    # dominator and record it in the header
    pick = bd if table.bit_bottom else td
    if pick[0] == link.own_vid:
        raise RoutingError(
            "vertical dominator degenerated to the current vertex")
    return pick[0], (table.bd2x, table.bd2y)


class DoubleScheme:
    kind = "double"

    def __init__(self, n, labels, tables, links):
        self.n = n
        self._labels = labels
        self._tables = tables
        self._links = links
        w = (n - 1).bit_length()
        # fixed-width fields: w+1 bits fit any coordinate rank plus sign
        self.max_label_bits = 4 * (w + 1)
        self.max_table_bits = 6 * (w + 1) + 1
        self.max_header_bits = 2 * (w + 1)

    def label_of(self, v: int) -> DoubleLabel:
        return self._labels[v]

    def table_of(self, v: int) -> DoubleTable:
        return self._tables[v]

    def link_of(self, v: int) -> DoubleLink:
        return self._links[v]

    def neighbor_ids(self, v: int):
        return sorted(i for i in self._links[v].id_set if i != v)

    def step(self, link, table, target, header):
        return route_step_double(link, table, target, header)


def _check_normalized(h):
    m = h.n // 2
    if sorted({int(x) for x in h.xs}) != list(range(m)):
        raise SchemeBuildError("x coordinates are not normalized ranks")
    neg = sorted({int(y) for y in h.ys if y < 0})
    pos = sorted({int(y) for y in h.ys if y > 0})
    if neg != list(range(-len(neg), 0)) or pos != list(range(1, len(pos) + 1)):
        raise SchemeBuildError("y coordinates are not normalized ranks")


def preprocess_double(h, g) -> DoubleScheme:
    """Build labels, tables, and link tables for a double histogram.

    Requires normalized coordinates. Verifies, per vertex, that the
    locally computable quantities match their global definitions: the
    bottom/top dominators found among neighbors, the level-2 interval
    reached by the extension chains, and the level-3 interval covered
    by the two tabled level-2 intervals. Any mismatch aborts the build.
    """
    if h.kind != "double":
        raise SchemeBuildError(f"need a double histogram, got {h.kind}")
    _check_normalized(h)
    n = h.n
    lm = g.lm
    labels = [DoubleLabel(int(h.xs[v]), int(h.ys[v]),
                          int(lm.l_x[v]), int(lm.r_x[v])) for v in range(n)]
    links = []
    for v in range(n):
        entries = [(int(u), labels[int(u)]) for u in g.neighbors[v]]
        entries.append((v, labels[v]))
        links.append(DoubleLink(entries, v))

    tables = []
    for v in range(n):
        bds, tds = lmk.k_dominators(g, v, 2)
        bd1, td1 = bds[1], tds[1]
        lbd, ltd = _local_vertical_dominators(links[v])
        if lbd[0] != bd1 or ltd[0] != td1:
            raise SchemeBuildError(
                f"local bottom/top dominators at {v} diverge from the "
                f"global ones ({lbd[0]},{ltd[0]}) vs ({bd1},{td1})")
        lo2, hi2 = lmk.ik_bounds(g, v, 2)
        closed = [labels[int(u)] for u in g.neighbors[v]] + [labels[v]]
        if min(l.ilo for l in closed) != lo2 or \
                max(l.ihi for l in closed) != hi2:
            raise SchemeBuildError(
                f"level-2 interval of {v} is not the neighborhood extreme")
        i2bd = lmk.ik_bounds(g, bd1, 2)
        i2td = lmk.ik_bounds(g, td1, 2)
        lo3, hi3 = lmk.ik_bounds(g, v, 3)
        if min(i2bd[0], i2td[0]) != lo3 or max(i2bd[1], i2td[1]) != hi3:
            raise SchemeBuildError(
                f"level-3 interval of {v} is not the union of the "
                f"dominators' level-2 intervals")
        pi_b, _ = lmk.canonical_paths(g, v, 2)
        if len(pi_b) == 1 or pi_b[1] == bd1:
            bit = True
        elif pi_b[1] == td1:
            bit = False
        else:
            raise SchemeBuildError(
                f"canonical bottom path at {v} starts off the dominators")
        bd2 = bds[2]
        tables.append(DoubleTable(i2bd[0], i2bd[1], i2td[0], i2td[1],
                                  int(h.xs[bd2]), int(h.ys[bd2]), bit))
    return DoubleScheme(n, labels, tables, links)


def dump_scheme(scheme: DoubleScheme) -> str:
    """Self-contained text dump: one row per vertex with coordinates,
    interval bounds, table fields, the bit, and the neighbor ids."""
    lines = [f"scheme double {scheme.n}"]
    for v in range(scheme.n):
        lab = scheme.label_of(v)
        tab = scheme.table_of(v)
        nbrs = " ".join(str(i) for i in scheme.neighbor_ids(v))
        lines.append(
            f"{v} | {lab.x} {lab.y} | {lab.ilo} {lab.ihi} | "
            f"{tab.i2bd_lo} {tab.i2bd_hi} {tab.i2td_lo} {tab.i2td_hi} "
            f"{tab.bd2x} {tab.bd2y} | {1 if tab.bit_bottom else 0} | {nbrs}")
    return "\n".join(lines) + "\n"


def parse_dump(text: str) -> DoubleScheme:
    rows = [ln.strip() for ln in text.splitlines()
            if ln.strip() and not ln.strip().startswith("#")]
    head = rows[0].split()
    if head[:2] != ["scheme", "double"] or len(head) != 3:
        raise ValueError("not a double scheme dump")
    n = int(head[2])
    if len(rows) - 1 != n:
        raise ValueError(f"expected {n} rows, got {len(rows) - 1}")
    labels = [None] * n
    tables = [None] * n
    nbrs = [None] * n
    for row in rows[1:]:
        parts = [p.strip() for p in row.split("|")]
        if len(parts) != 6:
            raise ValueError(f"malformed row: {row!r}")
        v = int(parts[0])
        x, y = (int(a) for a in parts[1].split())
        ilo, ihi = (int(a) for a in parts[2].split())
        labels[v] = DoubleLabel(x, y, ilo, ihi)
        f = [int(a) for a in parts[3].split()]
        if len(f) != 6:
            raise ValueError(f"expected 6 table fields: {row!r}")
        tables[v] = DoubleTable(f[0], f[1], f[2], f[3], f[4], f[5],
                                parts[4] == "1")
        nbrs[v] = [int(a) for a in parts[5].split()]
    links = []
    for v in range(n):
        entries = [(u, labels[u]) for u in nbrs[v]] + [(v, labels[v])]
        links.append(DoubleLink(entries, v))
    return DoubleScheme(n, labels, tables, links)
