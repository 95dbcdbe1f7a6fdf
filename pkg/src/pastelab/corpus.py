"""Seeded random pasting schemes: a column-stack seed, then bottom attachments
and edge subdivisions."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .computad import subdivide_edge
from .path_kit import attach_at_bottom
from .scheme_core import PastingScheme, build_theta2

MAX_EDGES = 14


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    scheme: PastingScheme
    history: tuple  # human-readable moves, seed first


def _seed_widths(rng: random.Random, max_faces: int) -> list:
    widths, left = [], max_faces
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(0, min(2, left))
        widths.append(k)
        left -= k
    return widths


def random_scheme(rng: random.Random, max_faces: int, moves: int | None = None) -> tuple:
    """(scheme, history) with at most ``max_faces`` interior faces."""
    widths = _seed_widths(rng, max_faces)
    ps = build_theta2(widths)
    history = [f"columns {widths}"]
    for _ in range(rng.randint(0, 3) if moves is None else moves):
        if rng.random() < 0.5 and ps.num_faces < max_faces:
            cod = ps.cod.vertices
            i, j = sorted(rng.sample(range(len(cod)), 2))
            length = rng.randint(1, 2)
            ps, face = attach_at_bottom(ps, cod[i], cod[j], length)
            history.append(f"attach {face} from {cod[i]} to {cod[j]}")
        elif len(ps.edges) < MAX_EDGES:
            e = rng.choice([x.id for x in ps.edges])
            pieces = rng.randint(2, 3)
            ps, _ = subdivide_edge(ps, e, pieces)
            history.append(f"subdivide {e} into {pieces}")
    assert ps.num_faces <= max_faces
    return ps, tuple(history)


def generate_corpus(seed: int, count: int, max_faces: int) -> list:
    """``count`` schemes from one seeded stream; identical arguments give identical output."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if max_faces < 0:
        raise ValueError("max_faces must be nonnegative")
    rng = random.Random(seed)
    out = []
    for i in range(count):
        ps, history = random_scheme(rng, max_faces)
        out.append(CorpusEntry(f"scheme_{i:03d}", ps, history))
    return out
