"""rho-blocks: arrows linked through common relations, and the blockwise
factorization of representation data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .quiver import Presentation, Quiver
from .repvar import Representation


@dataclass(frozen=True)
class Block:
    presentation: Presentation
    arrows: tuple[str, ...]
    vertices: tuple[str, ...]


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    arrow_to_block: Mapping[str, int]
    isolated_vertices: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.blocks)


def rho_blocks(p: Presentation) -> BlockDecomposition:
    q = p.quiver
    parent = {a.name: a.name for a in q.arrows}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in p.relations:
        names = sorted(r.arrows, key=q.arrow_names.index)
        for other in names[1:]:
            ra, rb = find(names[0]), find(other)
            if ra != rb:
                parent[rb] = ra

    order: list[str] = []
    members: dict[str, list[str]] = {}
    for a in q.arrow_names:
        root = find(a)
        if root not in members:
            members[root] = []
            order.append(root)
        members[root].append(a)

    blocks = []
    arrow_to_block = {}
    for k, root in enumerate(order):
        arrows = tuple(members[root])
        touched = {v for a in arrows for v in (q.arrow(a).tail, q.arrow(a).head)}
        vertices = tuple(v for v in q.vertices if v in touched)
        sub_q = Quiver(vertices, tuple(q.arrow(a) for a in arrows))
        rels = tuple(r for r in p.relations if r.arrows and find(next(iter(r.arrows))) == root)
        sub = Presentation(sub_q, rels, p.provenance, f"{p.name}-block{k}")
        blocks.append(Block(sub, arrows, vertices))
        for a in arrows:
            arrow_to_block[a] = k
    used = {v for b in blocks for v in b.vertices}
    isolated = tuple(v for v in q.vertices if v not in used)
    return BlockDecomposition(tuple(blocks), arrow_to_block, isolated)


def _block(dec: BlockDecomposition, index: int) -> Block:
    if not 0 <= index < len(dec.blocks):
        raise IndexError(f"block index {index} out of range (0..{len(dec.blocks) - 1})")
    return dec.blocks[index]


def project_dimension(dim: Mapping[str, int], index: int, dec: BlockDecomposition) -> dict[str, int]:
    return {v: dim[v] for v in _block(dec, index).vertices}


def project_rep(m: Representation, index: int, dec: BlockDecomposition) -> Representation:
    b = _block(dec, index)
    return Representation(
        b.presentation, m.field, project_dimension(m.dim, index, dec),
        {a: m.matrices[a] for a in b.arrows})


def assemble_rep(p: Presentation, dec: BlockDecomposition, parts: Sequence[Representation],
                 isolated_dim: Mapping[str, int] | None = None) -> Representation:
    """Inverse of the blockwise projection: glue block representations back together."""
    if len(parts) != len(dec.blocks):
        raise ValueError(f"expected {len(dec.blocks)} block representations, got {len(parts)}")
    if not parts and isolated_dim is None:
        raise ValueError("nothing to assemble")
    field = parts[0].field if parts else None
    dim: dict[str, int] = {}
    mats = {}
    for part in parts:
        if part.field != field:
            raise ValueError("block representations over different fields")
        for v, x in part.dim.items():
            if dim.setdefault(v, x) != x:
                raise ValueError(f"blocks disagree on the dimension at {v}")
        mats.update(part.matrices)
    for v in dec.isolated_vertices:
        dim[v] = (isolated_dim or {}).get(v, 0)
    if field is None:
        from .linalg import Field

        field = Field.rationals()
    return Representation(p, field, dim, mats)
