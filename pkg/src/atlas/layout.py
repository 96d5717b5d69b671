"""Radial focus+context layout with polar fisheye distortion.

The focus sits at the origin and each level-k node lies on the circle
of radius k/L, where L is the view's maximum level. Siblings share
their parent's angular sector at equal angles, ordered by node id, so
the geometry is fully deterministic. Fisheye distortion remaps every
radius r to ((d+1)*r)/(d*r+1) with the angle preserved: d=0 is the
identity, larger d magnifies the focus region and pushes context
toward the rim while keeping 0 and 1 fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError
from .navigation import GraphView

DEFAULT_DISTORTION = 3.0

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LayoutPoint:
    node_id: str
    x: float
    y: float


@dataclass(frozen=True)
class LaidOutView:
    view: GraphView
    points: tuple[LayoutPoint, ...]  # one per node, in view node order
    distortion: float


def radial_layout(view: GraphView) -> LaidOutView:
    """Place a view's nodes on concentric level rings, undistorted."""
    max_level = max((node.level for node in view.nodes), default=0)
    angles = _assign_angles(view)
    points = []
    for node in view.nodes:
        radius = node.level / max_level if max_level > 0 else 0.0
        theta = angles[node.id]
        # Adding 0.0 collapses -0.0 to 0.0 so serialized output is uniform.
        points.append(
            LayoutPoint(
                node_id=node.id,
                x=radius * math.cos(theta) + 0.0,
                y=radius * math.sin(theta) + 0.0,
            )
        )
    return LaidOutView(view=view, points=tuple(points), distortion=0.0)


def fisheye_distort(lay: LaidOutView, d: float) -> LaidOutView:
    """Apply fisheye magnification of strength ``d`` around the origin."""
    if d < 0:
        raise InvalidArgumentError("distortion must be non-negative")
    points = []
    for point in lay.points:
        r = math.hypot(point.x, point.y)
        if r == 0.0:
            points.append(point)
            continue
        r_new = ((d + 1.0) * r) / (d * r + 1.0)
        scale = r_new / r
        points.append(LayoutPoint(node_id=point.node_id, x=point.x * scale, y=point.y * scale))
    return LaidOutView(view=lay.view, points=tuple(points), distortion=d)


def _assign_angles(view: GraphView) -> dict[str, float]:
    """Deterministic angle per node: children split the parent's sector.

    A node's parent is its smallest-id neighbor on the previous level.
    Nodes without one (the focus, extra level-0 nodes, orphans) split
    the full circle among themselves per level.
    """
    by_level: dict[int, list[str]] = {}
    levels: dict[str, int] = {}
    for node in view.nodes:
        by_level.setdefault(node.level, []).append(node.id)
        levels[node.id] = node.level

    adjacent: dict[str, set[str]] = {node.id: set() for node in view.nodes}
    for edge in view.edges:
        adjacent[edge.from_id].add(edge.to_id)
        adjacent[edge.to_id].add(edge.from_id)

    parent: dict[str, str | None] = {}
    children: dict[str, list[str]] = {}
    for node in view.nodes:
        candidates = sorted(
            other for other in adjacent[node.id] if levels[other] == node.level - 1
        )
        parent[node.id] = candidates[0] if candidates else None
        if candidates:
            children.setdefault(candidates[0], []).append(node.id)

    angles: dict[str, float] = {}
    sectors: dict[str, tuple[float, float]] = {}
    for level in sorted(by_level):
        rootless = sorted(nid for nid in by_level[level] if parent[nid] is None)
        for i, nid in enumerate(rootless):
            width = _TWO_PI / len(rootless)
            sectors[nid] = (i * width, (i + 1) * width)
            angles[nid] = i * width
        for parent_id in sorted(children):
            if levels[parent_id] != level - 1:
                continue
            start, end = sectors[parent_id]
            kids = sorted(children[parent_id])
            width = (end - start) / len(kids)
            for i, kid in enumerate(kids):
                sectors[kid] = (start + i * width, start + (i + 1) * width)
                angles[kid] = start + i * width
    return angles
