"""Oriented knot and link diagrams from PD codes.

A PD code lists one 4-tuple per crossing: the edge labels around the
crossing counterclockwise, starting from the incoming under-edge.  Edge
labels run consecutively along each component (wrapping at the end of the
component's range), which is what encodes orientation.  The crossing sign
falls out of the numbering: when the over-strand leaves through the second
tuple entry the crossing is positive, when through the fourth it is
negative.

Arcs (over-strand runs between consecutive under-passes) are computed by
merging the two over-edges at every crossing and are labelled 1..q in
order of their smallest edge label.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
import os
import re
from importlib import resources

from .errors import DiagramError, PdSyntaxError, RegistryError


@dataclass(frozen=True)
class PdCode:
    """Raw PD data: a tuple of 4-tuples of edge labels."""

    crossings: tuple[tuple[int, int, int, int], ...]

    def __str__(self) -> str:
        inner = ",".join("X[%d,%d,%d,%d]" % c for c in self.crossings)
        return f"PD[{inner}]"

    def __len__(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class Crossing:
    """One crossing in arc terms.  sign is +1 or -1."""

    sign: int
    under_in: int
    over: int
    under_out: int

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "under_in": self.under_in,
            "over": self.over,
            "under_out": self.under_out,
        }


@dataclass(frozen=True)
class Diagram:
    """An oriented diagram with arcs labelled 1..q."""

    name: str
    arcs: tuple[int, ...]
    crossings: tuple[Crossing, ...]
    components: int

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "arcs": list(self.arcs),
            "crossings": [c.to_json() for c in self.crossings],
            "components": self.components,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        return cls(
            name=data["name"],
            arcs=tuple(data["arcs"]),
            crossings=tuple(
                Crossing(c["sign"], c["under_in"], c["over"], c["under_out"])
                for c in data["crossings"]
            ),
            components=data["components"],
        )


# ---------------------------------------------------------------------------
# PD text
# ---------------------------------------------------------------------------

_WS = re.compile(r"\s+")


def parse_pd(text: str) -> PdCode:
    """Parse 'PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]'.  Whitespace-insensitive."""
    stripped = _WS.sub("", text)
    if not stripped.startswith("PD["):
        raise PdSyntaxError("expected 'PD[' prefix", position=0)
    if not stripped.endswith("]"):
        raise PdSyntaxError("expected closing ']'", position=len(text))
    body = stripped[3:-1]
    if body == "":
        return PdCode(())
    crossings = []
    pos = 0
    while pos < len(body):
        mt = re.match(r"X\[(-?\d+),(-?\d+),(-?\d+),(-?\d+)\]", body[pos:])
        if mt is None:
            raise PdSyntaxError(
                f"expected X[a,b,c,d] near {body[pos:pos + 16]!r}", position=pos + 3
            )
        labels = tuple(int(g) for g in mt.groups())
        if any(v <= 0 for v in labels):
            raise PdSyntaxError(f"edge labels must be positive: {labels}", position=pos + 3)
        crossings.append(labels)
        pos += mt.end()
        if pos < len(body):
            if body[pos] != ",":
                raise PdSyntaxError("expected ',' between crossings", position=pos + 3)
            pos += 1
            if pos == len(body):
                raise PdSyntaxError("trailing comma", position=pos + 3)
    return PdCode(tuple(crossings))


def render_pd(pd: PdCode) -> str:
    return str(pd)


# ---------------------------------------------------------------------------
# Building diagrams
# ---------------------------------------------------------------------------


def _edge_components(pd: PdCode) -> list[list[int]]:
    """Partition edge labels into link components (each a sorted label list)."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for a, b, c, d in pd.crossings:
        for e in (a, b, c, d):
            parent.setdefault(e, e)
    for a, b, c, d in pd.crossings:
        union(a, c)
        union(b, d)
    groups: dict[int, list[int]] = {}
    for e in parent:
        groups.setdefault(find(e), []).append(e)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def build_diagram(pd: PdCode, name: str = "") -> Diagram:
    """Derive arcs, orientations and signs from a PD code.

    Rejects codes whose edge labels do not describe a coherent oriented
    diagram: a label not appearing exactly twice, component labels that are
    not consecutive, or over/under edges inconsistent with the numbering.
    """
    if len(pd) == 0:
        return Diagram(name=name, arcs=(), crossings=(), components=1)

    counts: dict[int, int] = {}
    for quad in pd.crossings:
        for e in quad:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, n in counts.items() if n != 2)
    if bad:
        raise DiagramError(f"edge labels must appear exactly twice: {bad}")

    comps = _edge_components(pd)
    succ: dict[int, int] = {}
    for labels in comps:
        lo, hi = labels[0], labels[-1]
        if labels != list(range(lo, hi + 1)):
            raise DiagramError(
                f"component edge labels are not consecutive: {labels}"
            )
        for e in labels:
            succ[e] = e + 1 if e < hi else lo

    # Arc classes: over-strand edges merge at each crossing.
    arc_parent: dict[int, int] = {e: e for e in succ}

    def find_arc(x: int) -> int:
        while arc_parent[x] != x:
            arc_parent[x] = arc_parent[arc_parent[x]]
            x = arc_parent[x]
        return x

    crossings: list[Crossing] = []
    raw: list[tuple[int, ...]] = []
    for idx, (a, b, c, d) in enumerate(pd.crossings):
        if succ[a] != c:
            raise DiagramError(
                f"crossing {idx}: under-strand must run {a} -> {succ[a]}, got {c}"
            )
        # Over-strand direction.  When both readings are consistent (a
        # two-edge component crossing only as over-strand) we pick positive.
        if succ[d] == b:
            sign = 1
        elif succ[b] == d:
            sign = -1
        else:
            raise DiagramError(
                f"crossing {idx}: over-edges {b},{d} are not consecutive"
            )
        ra, rb = find_arc(b), find_arc(d)
        if ra != rb:
            arc_parent[ra] = rb
        raw.append((sign, a, b, c))

    # A component that never passes under would leave a closed-loop arc; the
    # relation rows cannot see it, so reject outright.
    under_edges = {quad[0] for quad in pd.crossings}
    for labels in comps:
        if not any(e in under_edges for e in labels):
            raise DiagramError(
                f"component with edges {labels} never passes under a crossing"
            )

    classes: dict[int, list[int]] = {}
    for e in succ:
        classes.setdefault(find_arc(e), []).append(e)
    ordered = sorted((min(v) for v in classes.values()))
    arc_id = {}
    for i, smallest in enumerate(ordered, start=1):
        arc_id[smallest] = i
    edge_arc = {e: arc_id[min(classes[find_arc(e)])] for e in succ}

    for sign, a, b, c in raw:
        crossings.append(
            Crossing(sign=sign, under_in=edge_arc[a], over=edge_arc[b], under_out=edge_arc[c])
        )
    return Diagram(
        name=name,
        arcs=tuple(range(1, len(classes) + 1)),
        crossings=tuple(crossings),
        components=len(comps),
    )


def arc_of_edge(pd: PdCode) -> dict[int, int]:
    """Map each edge label to the arc id build_diagram assigns it."""
    parent: dict[int, int] = {}
    for quad in pd.crossings:
        for e in quad:
            parent.setdefault(e, e)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, b, _, dd in pd.crossings:
        rb, rd = find(b), find(dd)
        if rb != rd:
            parent[rb] = rd
    classes: dict[int, list[int]] = {}
    for e in parent:
        classes.setdefault(find(e), []).append(e)
    rank = {m: i + 1 for i, m in enumerate(sorted(min(v) for v in classes.values()))}
    out: dict[int, int] = {}
    for edges in classes.values():
        aid = rank[min(edges)]
        for e in edges:
            out[e] = aid
    return out


def validate(d: Diagram) -> list[str]:
    """Return a list of invariant violations; empty means valid."""
    problems: list[str] = []
    arcs = set(d.arcs)
    if sorted(d.arcs) != list(d.arcs):
        problems.append("arc labels are not sorted")
    if d.components < 1:
        problems.append("component count must be >= 1")
    ins: dict[int, int] = {a: 0 for a in d.arcs}
    outs: dict[int, int] = {a: 0 for a in d.arcs}
    for i, c in enumerate(d.crossings):
        if c.sign not in (1, -1):
            problems.append(f"crossing {i}: sign {c.sign} is not +-1")
        for role, arc in (("under_in", c.under_in), ("over", c.over), ("under_out", c.under_out)):
            if arc not in arcs:
                problems.append(f"crossing {i}: {role} references unknown arc {arc}")
        if c.under_in in ins:
            ins[c.under_in] += 1
        if c.under_out in outs:
            outs[c.under_out] += 1
    for a in d.arcs:
        if ins.get(a) != 1:
            problems.append(f"arc {a} is under_in of {ins.get(a, 0)} crossings, expected 1")
        if outs.get(a) != 1:
            problems.append(f"arc {a} is under_out of {outs.get(a, 0)} crossings, expected 1")
    if d.crossings and len(d.arcs) != len(d.crossings):
        problems.append(
            f"{len(d.arcs)} arcs for {len(d.crossings)} crossings"
        )
    return problems


def relabel_arcs(d: Diagram, first: list[int]) -> Diagram:
    """Renumber arcs so the ids in `first` become 1, 2, ... in that order.

    Remaining arcs keep their relative order after the reserved block.
    """
    if len(set(first)) != len(first) or not set(first) <= set(d.arcs):
        raise DiagramError("arc relabel list must be distinct existing arcs")
    order = list(first) + [a for a in d.arcs if a not in set(first)]
    new_id = {old: i + 1 for i, old in enumerate(order)}
    return replace(
        d,
        arcs=tuple(range(1, len(d.arcs) + 1)),
        crossings=tuple(
            Crossing(c.sign, new_id[c.under_in], new_id[c.over], new_id[c.under_out])
            for c in d.crossings
        ),
    )


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

ENV_REGISTRY = "QF_REGISTRY"

_NAME_LINE = re.compile(r"^(?P<name>[^=\s]+)\s*=\s*(?P<pd>PD\[.*\])\s*$")


def parse_registry_text(text: str) -> dict[str, PdCode]:
    """Parse 'name = PD[...]' lines; '#' starts a comment; blanks ignored."""
    out: dict[str, PdCode] = {}
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        mt = _NAME_LINE.match(line)
        if mt is None:
            raise RegistryError(f"registry line {ln}: expected 'name = PD[...]'")
        name = mt.group("name")
        if name in out:
            raise RegistryError(f"registry line {ln}: duplicate name {name!r}")
        out[name] = parse_pd(mt.group("pd"))
    return out


def _builtin_registry_text() -> str:
    return resources.files("qfox").joinpath("data/registry.txt").read_text()


def load_registry(path: str | None = None) -> dict[str, PdCode]:
    """Load the named-diagram registry.

    Order of precedence: explicit path argument, the QF_REGISTRY
    environment variable, then the registry shipped with the package.
    """
    if path is None:
        path = os.environ.get(ENV_REGISTRY)
    if path is None:
        return parse_registry_text(_builtin_registry_text())
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_registry_text(fh.read())
    except OSError as exc:
        raise RegistryError(f"cannot read registry {path!r}: {exc}") from exc


def _normalize_name(name: str) -> str:
    return name.replace("{", "_").replace("}", "").replace("(", "_").replace(
        ")", ""
    ).replace(",", "_").replace("-", "m").lower()


def get_diagram(name: str, registry: dict[str, PdCode] | None = None) -> Diagram:
    """Look up a registered diagram by name (brace/paren variants accepted)."""
    reg = load_registry() if registry is None else registry
    if name in reg:
        return build_diagram(reg[name], name=name)
    wanted = _normalize_name(name)
    for key, pd in reg.items():
        if _normalize_name(key) == wanted:
            return build_diagram(pd, name=key)
    raise RegistryError(
        f"unknown diagram {name!r}; registry has: {', '.join(sorted(reg))}"
    )
