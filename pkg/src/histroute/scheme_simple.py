"""Stretch-1 compact routing on simple histograms.

Labels are vertex ids, extended with the breakpoint id for reflex and
base vertices. The per-vertex routing table is a single bit saying
which of the two interval ends sits higher (closer to the base). The
step function needs only the closed-neighborhood link table, that bit,
and the target's label, and always advances along a shortest path.
"""

import bisect
import dataclasses

from . import landmarks as lmk
from .engine import RoutingError, SchemeBuildError


@dataclasses.dataclass(frozen=True)
class SimpleLabel:
    vid: int
    br: int | None = None   # breakpoint id, present iff reflex or base vertex


class SimpleLink:
    """Sorted labels of the closed neighborhood, with the own entry marked."""

    def __init__(self, entries, own_vid: int):
        self.entries = sorted(entries, key=lambda e: e.vid)
        self.ids = [e.vid for e in self.entries]
        self.id_set = set(self.ids)
        self._br = {e.vid: e.br for e in self.entries}
        self.own = next(e for e in self.entries if e.vid == own_vid)

    def br_of(self, vid: int):
        return self._br.get(vid)


def route_step_simple(link: SimpleLink, higher_left: bool,
                      target: SimpleLabel) -> int:
    """One routing hop. Pure function of the three local inputs."""
    tid = target.vid
    if tid in link.id_set:
        return tid
    ids = link.ids
    lo, hi = ids[0], ids[-1]
    if not lo <= tid <= hi:
        # target outside the interval: move to the higher interval end
        return lo if higher_left else hi
    own_id = link.own.vid
    i = bisect.bisect_left(ids, tid)
    if tid > own_id:
        nd, fd = ids[i - 1], ids[i]
    else:
        nd, fd = ids[i], ids[i - 1]
    if nd == own_id:
        raise RoutingError(f"near dominator degenerated to self at {own_id}")
    b = link.br_of(nd)
    if b is None:
        raise RoutingError(f"neighbor {nd} lacks a breakpoint id")
    if min(nd, b) <= tid <= max(nd, b):
        return nd
    return fd


class SimpleScheme:
    kind = "simple"

    def __init__(self, n, labels, bits, links):
        self.n = n
        self._labels = labels
        self._bits = bits
        self._links = links
        w = (n - 1).bit_length()
        self.max_label_bits = max(
            w * (2 if lab.br is not None else 1) for lab in labels)
        self.max_table_bits = 1
        self.max_header_bits = 0

    def label_of(self, v: int) -> SimpleLabel:
        return self._labels[v]

    def table_of(self, v: int) -> bool:
        return self._bits[v]

    def link_of(self, v: int) -> SimpleLink:
        return self._links[v]

    def neighbor_ids(self, v: int):
        own = self._links[v].own.vid
        return [i for i in self._links[v].ids if i != own]

    def step(self, link, table, target, header):
        return route_step_simple(link, table, target), None


def preprocess_simple(h, g) -> SimpleScheme:
    """Build labels, table bits, and link tables for a simple histogram.

    Aborts when the id-interval property fails for some vertex: the
    vertices inside I(v) must be exactly the contiguous id range from
    l(v) to r(v), and those two must be the extreme ids of the closed
    neighborhood. Both hold for valid simple histograms; the check
    guards against geometry bugs rather than bad inputs.
    """
    if h.kind != "simple":
        raise SchemeBuildError(f"need a simple histogram, got {h.kind}")
    n = h.n
    lm = g.lm
    for v in range(n):
        lvid, rvid = int(lm.l_vid[v]), int(lm.r_vid[v])
        if lvid < 0 or rvid < 0:
            raise SchemeBuildError(f"non-vertex landmark at {v}")
        members = sorted(int(u) for u in lmk.interval_vertices(g, v))
        if members != list(range(lvid, rvid + 1)):
            raise SchemeBuildError(
                f"I({v}) is not the id range [{lvid},{rvid}]")
        closed = [int(u) for u in g.neighbors[v]] + [v]
        if min(closed) != lvid or max(closed) != rvid:
            raise SchemeBuildError(
                f"closed neighborhood of {v} does not end at the landmarks")

    labels = []
    for v in range(n):
        br = lmk.breakpoint_of(g, v)
        labels.append(SimpleLabel(v, br))
    bits = [bool(lm.l_y[v] > lm.r_y[v]) for v in range(n)]
    links = []
    for v in range(n):
        entries = [labels[int(u)] for u in g.neighbors[v]] + [labels[v]]
        links.append(SimpleLink(entries, v))
    return SimpleScheme(n, labels, bits, links)


def dump_scheme(scheme: SimpleScheme) -> str:
    """Self-contained text dump: one row per vertex with label fields,
    the table bit, and the neighbor ids."""
    lines = [f"scheme simple {scheme.n}"]
    for v in range(scheme.n):
        lab = scheme.label_of(v)
        fields = str(lab.vid) if lab.br is None else f"{lab.vid} {lab.br}"
        nbrs = " ".join(str(i) for i in scheme.neighbor_ids(v))
        bit = 1 if scheme.table_of(v) else 0
        lines.append(f"{v} | {fields} | {bit} | {nbrs}")
    return "\n".join(lines) + "\n"


def parse_dump(text: str) -> SimpleScheme:
    rows = [ln.strip() for ln in text.splitlines()
            if ln.strip() and not ln.strip().startswith("#")]
    head = rows[0].split()
    if head[:2] != ["scheme", "simple"] or len(head) != 3:
        raise ValueError("not a simple scheme dump")
    n = int(head[2])
    if len(rows) - 1 != n:
        raise ValueError(f"expected {n} rows, got {len(rows) - 1}")
    labels = [None] * n
    bits = [False] * n
    nbrs = [None] * n
    for row in rows[1:]:
        parts = [p.strip() for p in row.split("|")]
        if len(parts) != 4:
            raise ValueError(f"malformed row: {row!r}")
        v = int(parts[0])
        fields = [int(x) for x in parts[1].split()]
        labels[v] = SimpleLabel(fields[0],
                                fields[1] if len(fields) > 1 else None)
        bits[v] = parts[2] == "1"
        nbrs[v] = [int(x) for x in parts[3].split()]
    links = []
    for v in range(n):
        entries = [labels[u] for u in nbrs[v]] + [labels[v]]
        links.append(SimpleLink(entries, v))
    return SimpleScheme(n, labels, bits, links)
