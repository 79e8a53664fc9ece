"""Shared fixtures."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import pytest

from scc_deletion.graph import MultiDigraph
from scc_deletion.instance_io import serialize_graph

from .strategies import bidirected_clique, cycle, triangle_with_chord, two_triangles_sharing_vertex


@pytest.fixture
def triangle() -> MultiDigraph:
    return cycle(3)


@pytest.fixture
def chorded_triangle() -> MultiDigraph:
    return triangle_with_chord()


@pytest.fixture
def bowtie() -> MultiDigraph:
    return two_triangles_sharing_vertex()


@pytest.fixture
def k4() -> MultiDigraph:
    return bidirected_clique(4)


@pytest.fixture
def write_instance(tmp_path: Path) -> Callable[..., Path]:
    """Write a graph (or raw text) to an instance file under ``tmp_path``."""

    def _write(content: MultiDigraph | str, name: str = "instance.txt") -> Path:
        target = tmp_path / name
        text = content if isinstance(content, str) else serialize_graph(content)
        target.write_text(text, encoding="utf-8")
        return target

    return _write
