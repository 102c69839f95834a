"""Tile-based secure dominating sets meeting the constructive upper bounds.

Tiles are given as 1-based ``(copy offset, row)`` placements and repeated
along the copies of a family instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from secdom.domination import VertexSet
from secdom.errors import UnsupportedFamilyError
from secdom.graphs import Family, FamilyInstance


@dataclass(frozen=True)
class PatternTile:
    width: int
    placements: tuple[tuple[int, int], ...]
    rows: int = 2

    def __post_init__(self) -> None:
        for off, row in self.placements:
            if not (1 <= off <= self.width and 1 <= row <= self.rows):
                raise ValueError(f"placement {(off, row)} outside a {self.width}x{self.rows} tile")

    def at(self, start: int) -> list[tuple[int, int]]:
        """Placements shifted so that the tile's first copy is ``start``."""
        return [(start + off - 1, row) for off, row in self.placements]


LADDER_A = PatternTile(4, ((1, 1), (2, 2), (3, 1)))
LADDER_B = PatternTile(4, ((1, 2), (2, 1), (3, 2)))
PRISM_8 = PatternTile(8, ((2, 1), (3, 2), (5, 1), (5, 2), (7, 1), (8, 2)))
# rows flipped relative to a drawing whose twist sits after copy 4, since
# build_family puts the twist between copy n and copy 1
MOBIUS_PREFIX = PatternTile(4, ((2, 2), (3, 1), (4, 2)))
DIAGONAL_3 = PatternTile(3, ((1, 1), (2, 2), (3, 3)), rows=3)
FULL_COPY = PatternTile(1, ((1, 1), (1, 2), (1, 3)), rows=3)
TAIL_2 = PatternTile(2, ((1, 1), (2, 2), (2, 3)), rows=3)


def ladder_placements(n: int) -> list[tuple[int, int]]:
    """Alternating A/B tiles trimmed to ``n`` copies, size ``ceil((3n+1)/4)``."""
    blocks = -(-n // 4)
    cells: list[tuple[int, int]] = []
    for b in range(blocks):
        tile = LADDER_A if b % 2 == 0 else LADDER_B
        cells.extend(tile.at(4 * b + 1))
    r = n % 4
    if r == 0:
        cells.append((n, 1))
    elif r == 1:
        # drop the first copy and the last two, then renumber
        cells = [(c - 1, row) for c, row in cells if 2 <= c <= n + 1]
    else:
        cells = [(c, row) for c, row in cells if c <= n]
    return cells


def construction_placements(inst: FamilyInstance) -> list[tuple[int, int]]:
    n = inst.n
    fam = inst.family
    if fam is Family.P3xPn:
        raise UnsupportedFamilyError("no tile construction is provided for P3xPn")
    if fam is Family.P2xPn:
        return ladder_placements(n)
    if fam is Family.P2xCn:
        if n % 8 == 0:
            return [cell for k in range(n // 8) for cell in PRISM_8.at(8 * k + 1)]
        # the cycle only adds edges to the ladder, which cannot break security
        return ladder_placements(n)
    if fam is Family.M2n:
        if n % 8 == 4:
            cells = MOBIUS_PREFIX.at(1)
            for k in range((n - 4) // 8):
                cells.extend(PRISM_8.at(5 + 8 * k))
            return cells
        return ladder_placements(n)
    cells = [cell for k in range(n // 3) for cell in DIAGONAL_3.at(3 * k + 1)]
    start = 3 * (n // 3) + 1
    if n % 3 == 1:
        cells.extend(FULL_COPY.at(start))
    elif n % 3 == 2:
        cells.extend(TAIL_2.at(start))
    return cells


def construct_optimal(inst: FamilyInstance) -> VertexSet:
    """Secure dominating set built from the family's repeating tiles.

    Its size equals the closed-form value everywhere except ``P3xCn`` with
    ``n`` in {4, 7}, where it is one larger.
    """
    cells = construction_placements(inst)
    return VertexSet.of((inst.vertex_id(c, r) for c, r in cells), inst.vertex_count)


def witness_payload(inst: FamilyInstance, s: VertexSet) -> dict:
    return {
        "family": inst.family.value,
        "n": inst.n,
        "size": len(s),
        "vertices": [list(inst.copy_row(v)) for v in s.members],
        "ids": list(s.members),
    }


def witness_json(inst: FamilyInstance, s: VertexSet) -> str:
    return json.dumps(witness_payload(inst, s), separators=(",", ":"))
