"""One-call pipeline from a graph to its metric space."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .spectral import MetricSpace, Spectrum, homogeneous_coordinates, walk_spectrum
from .walk import LazyWalk


@dataclass(frozen=True)
class Analysis:
    walk: LazyWalk
    spectrum: Spectrum
    space: MetricSpace

    @property
    def graph(self) -> Graph:
        return self.walk.graph


def analyze(g: Graph, beta=1.0, *, solver: str = "auto", ordering: str = "tournament") -> Analysis:
    walk = LazyWalk.build(g, beta)
    kwargs = {"ordering": ordering} if solver != "lapack" else {}
    spec = walk_spectrum(walk.T_hat, walk.pi, solver=solver, **kwargs)
    return Analysis(walk, spec, homogeneous_coordinates(spec, walk.pi))
