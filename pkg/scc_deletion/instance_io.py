"""
Instance files, solution files and bench sidecars

Graph format (line based, LF endings):

    c free-form comment
    p mdigraph <n> <m>
    a <u> <v>          (exactly m lines, 1 <= u, v <= n)

Arc ids follow line order; a repeated line is a parallel arc and ``a v v`` is
a self-loop. Ids in files are 1-based and become 0-based internally.
"""

from __future__ import annotations

import json
import logging
import re
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .graph import Mode, MultiDigraph

logger = logging.getLogger(__name__)

HEADER_TAG = "mdigraph"
# ASCII digits with an optional leading minus; no "+", "_" or non-ASCII digits
_INTEGER = re.compile(r"-?[0-9]+")


def _int(token: str, line: int, what: str) -> int:
    if not _INTEGER.fullmatch(token):
        raise InputError(f"{what} {token!r} is not an integer", line)
    return int(token)


def parse_graph(text: str) -> MultiDigraph:
    """Parse the instance format; every error carries the offending line number."""
    n: int | None = None
    m = 0
    header_line = 0
    arcs: list[tuple[int, int]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "p":
            if n is not None:
                raise InputError("duplicate header", number)
            if len(fields) != 4 or fields[1] != HEADER_TAG:
                raise InputError(f"expected 'p {HEADER_TAG} <n> <m>', got {line!r}", number)
            n = _int(fields[2], number, "vertex count")
            m = _int(fields[3], number, "arc count")
            if n < 0 or m < 0:
                raise InputError("vertex and arc counts must be non-negative", number)
            header_line = number
        elif fields[0] == "a":
            if n is None:
                raise InputError("arc line before the header", number)
            if len(fields) != 3:
                raise InputError(f"expected 'a <u> <v>', got {line!r}", number)
            u = _int(fields[1], number, "tail")
            v = _int(fields[2], number, "head")
            for endpoint in (u, v):
                if not 1 <= endpoint <= n:
                    raise InputError(f"vertex id {endpoint} outside 1..{n}", number)
            if len(arcs) == m:
                raise InputError(f"more than the {m} arcs announced in the header", number)
            arcs.append((u - 1, v - 1))
        else:
            raise InputError(f"unknown line type {fields[0]!r}", number)

    if n is None:
        raise InputError("missing 'p mdigraph' header")
    if len(arcs) != m:
        raise InputError(f"header announces {m} arcs, found {len(arcs)}", header_line)
    return MultiDigraph(n, arcs)


def serialize_graph(g: MultiDigraph) -> str:
    """Header, then surviving arcs in arc-id order. Masked vertices stay as isolated ids."""
    lines = [f"p {HEADER_TAG} {g.n} {g.num_arcs}"]
    lines.extend(f"a {u + 1} {v + 1}" for _, u, v in g.arcs())
    return "\n".join(lines) + "\n"


def read_graph(path: Path) -> MultiDigraph:
    """Parse an instance file."""
    return parse_graph(path.read_text(encoding="utf-8"))


def write_graph(path: Path, g: MultiDigraph) -> None:
    """Write ``g`` in the instance format with LF line endings."""
    path.write_text(serialize_graph(g), encoding="utf-8", newline="\n")


# =============================================================================
# Arc triples and solution files
# =============================================================================


def arc_triples(g: MultiDigraph, arc_ids: Iterable[int]) -> list[tuple[int, int, int]]:
    """``(u, v, j)`` with 1-based endpoints: arc is the j-th (0-based) u -> v arc by id."""
    occurrence: dict[int, int] = {}
    counts: dict[tuple[int, int], int] = {}
    for arc_id in range(g.num_arc_ids):
        pair = g.endpoints(arc_id)
        occurrence[arc_id] = counts.get(pair, 0)
        counts[pair] = occurrence[arc_id] + 1
    triples = []
    for arc_id in sorted(arc_ids):
        u, v = g.endpoints(arc_id)
        triples.append((u + 1, v + 1, occurrence[arc_id]))
    return triples


def arc_from_triple(g: MultiDigraph, u: int, v: int, j: int, line: int | None = None) -> int:
    """Inverse of :func:`arc_triples` for one triple."""
    seen = 0
    for arc_id in range(g.num_arc_ids):
        if g.endpoints(arc_id) == (u - 1, v - 1):
            if seen == j:
                return arc_id
            seen += 1
    raise InputError(f"there is no occurrence {j} of arc ({u}, {v})", line)


def parse_solution(text: str, g: MultiDigraph, mode: Mode) -> frozenset[int]:
    """One 1-based vertex id per line, or ``u v j`` triples for arc problems."""
    chosen: set[int] = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        if mode is Mode.VERTEX:
            if len(fields) != 1:
                raise InputError(f"expected one vertex id, got {line!r}", number)
            v = _int(fields[0], number, "vertex id")
            if not 1 <= v <= g.n:
                raise InputError(f"vertex id {v} outside 1..{g.n}", number)
            chosen.add(v - 1)
        else:
            if len(fields) != 3:
                raise InputError(f"expected 'u v j', got {line!r}", number)
            u, v, j = (_int(f, number, "triple entry") for f in fields)
            chosen.add(arc_from_triple(g, u, v, j, number))
    return frozenset(chosen)


def format_solution(g: MultiDigraph, solution: Iterable[int], mode: Mode) -> str:
    """Solution file text accepted by :func:`parse_solution`."""
    if mode is Mode.VERTEX:
        lines = [str(v + 1) for v in sorted(solution)]
    else:
        lines = [f"{u} {v} {j}" for u, v, j in arc_triples(g, solution)]
    return "".join(line + "\n" for line in lines)


# =============================================================================
# Bench sidecars
# =============================================================================


@dataclass(frozen=True)
class Sidecar:
    """Expected result stored next to ``<name>.txt`` as ``<name>.json``."""

    problem: str
    k: int
    s: int | None
    feasible: bool

    def to_dict(self) -> dict[str, object]:
        return {"problem": self.problem, "k": self.k, "s": self.s, "feasible": self.feasible}


def sidecar_path(instance_path: Path) -> Path:
    return instance_path.with_suffix(".json")


def read_sidecar(instance_path: Path) -> Sidecar:
    """Load the sidecar next to ``instance_path``."""
    path = sidecar_path(instance_path)
    if not path.exists():
        raise InputError(f"missing sidecar {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return Sidecar(
            problem=str(data["problem"]),
            k=int(data["k"]),
            s=None if data.get("s") is None else int(data["s"]),
            feasible=bool(data["feasible"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed sidecar {path}: {e}") from e


def write_sidecar(instance_path: Path, sidecar: Sidecar) -> None:
    sidecar_path(instance_path).write_text(
        json.dumps(sidecar.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
    logger.debug("Wrote sidecar for %s", instance_path.name)
