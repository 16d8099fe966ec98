"""Line-oriented key/value reports shared by the CLI and the golden files."""

from __future__ import annotations

from typing import Sequence

from .config_complex import build_ordered, build_unordered
from .graph_model import OrderedGraph
from .morse import build_field

Rows = list[tuple[str, str]]


def render(rows: Sequence[tuple[str, str]], fmt: str = "human") -> str:
    if fmt == "machine":
        return "\n".join(f"{k.replace(' ', '_')}={v}" for k, v in rows) + "\n"
    return "\n".join(f"{k}: {v}" for k, v in rows) + "\n"


def census_rows(og: OrderedGraph) -> Rows:
    """Cell and critical-cell counts of D_2 and UD_2, with the critical cells listed."""
    rows: Rows = [
        ("vertices", str(og.n_vertices)),
        ("edges", str(len(og.edges))),
        ("order", " ".join(f"{og.label(i)}->{i}" for i in og.vertices)),
        ("deleted", " ".join(f"({x},{y})" for x, y in og.deleted_edges) or "none"),
    ]
    for label, complex in (("D2", build_ordered(og)), ("UD2", build_unordered(og))):
        field = build_field(complex)
        counts = complex.counts()
        crit = field.census()
        rows += [
            ("complex", label),
            ("cells", ", ".join(f"dim{d}={n}" for d, n in enumerate(counts))),
            ("critical", ", ".join(f"dim{d}={n}" for d, n in enumerate(crit))),
            ("euler", f"cells={complex.euler_characteristic()} critical={field.morse_euler_characteristic()}"),
            ("components", str(len(complex.components))),
        ]
        if len(complex.components) > 1:
            rows.append(("note", f"{label} disconnected, {len(complex.components)} components"))
        for d in range(3):
            rows.append((f"critical{d}", " ".join(str(c) for c in field.critical(d)) or "none"))
    return rows
