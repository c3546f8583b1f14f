"""Representations of the 2x3 bipartite star quiver over Q(w).

A representation is an invertible n x n base-change matrix B between two
decompositions of the same space: a source decomposition into blocks of
sizes (a, b) and a sink decomposition into blocks of sizes (x, y, z).
Base changes inside the five blocks act by

    B  |->  diag(N1, N2, N3) . B . diag(M1, M2)^{-1}

and two representations are isomorphic exactly when they lie in the same
orbit of that action.  The transpose involution sends B to (B^{-1})^tr.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cyclotomic import CycRat, ZERO
from .linalg import (
    CycMatrix,
    ShapeError,
    block_diag,
)

__all__ = [
    "DimVector",
    "QuiverRep",
    "GLAlphaElement",
    "IsomorphismSearch",
    "is_simple_dimvector",
    "act",
    "tau_quiver",
    "hom_space",
    "find_isomorphism",
    "are_isomorphic",
]


@dataclass(frozen=True, order=True)
class DimVector:
    """Eigenspace dimension vector (a, b; x, y, z)."""

    a: int
    b: int
    x: int
    y: int
    z: int

    def __post_init__(self):
        if min(self.a, self.b, self.x, self.y, self.z) < 0:
            raise ValueError(f"negative entry in dimension vector {self}")

    @property
    def n(self) -> int:
        return self.a + self.b

    def is_balanced(self) -> bool:
        return self.a + self.b == self.x + self.y + self.z

    @property
    def source_blocks(self) -> tuple:
        return (self.a, self.b)

    @property
    def sink_blocks(self) -> tuple:
        return (self.x, self.y, self.z)

    def __str__(self) -> str:
        return f"({self.a},{self.b};{self.x},{self.y},{self.z})"

    @classmethod
    def parse(cls, text: str) -> "DimVector":
        parts = [p.strip() for p in text.replace(";", ",").split(",")]
        if len(parts) != 5:
            raise ValueError(f"expected 5 comma-separated entries, got {text!r}")
        return cls(*(int(p) for p in parts))

    def to_obj(self) -> dict:
        return {"a": self.a, "b": self.b, "x": self.x, "y": self.y, "z": self.z}

    @classmethod
    def from_obj(cls, obj: dict) -> "DimVector":
        return cls(int(obj["a"]), int(obj["b"]), int(obj["x"]),
                   int(obj["y"]), int(obj["z"]))


def is_simple_dimvector(d: DimVector) -> bool:
    """Whether a simple representation with these dimensions exists.

    For x*y*z != 0 the condition is max(x,y,z) <= min(a,b); the remaining
    simple dimension vectors are the one-dimensional ones and the
    two-dimensional ones with a = b = 1 and one sink dimension zero.
    """
    if not d.is_balanced():
        return False
    if d.x and d.y and d.z:
        return max(d.x, d.y, d.z) <= min(d.a, d.b)
    if d.n == 1:
        return True
    if d.n == 2:
        return d.a == d.b == 1 and sorted(d.sink_blocks) == [0, 1, 1]
    return False


class QuiverRep:
    """A dimension vector plus its invertible base-change matrix B.

    B is annotated with row blocks (x, y, z) and column blocks (a, b).
    Invertibility is relied on by every consumer; it is raised lazily by
    the elimination routines if violated.
    """

    __slots__ = ("dims", "B")

    def __init__(self, dims: DimVector, B: CycMatrix):
        if not dims.is_balanced():
            raise ShapeError(f"unbalanced dimension vector {dims}")
        if B.shape != (dims.n, dims.n):
            raise ShapeError(f"matrix {B.shape} does not match {dims} (n={dims.n})")
        self.dims = dims
        self.B = B.with_blocks(dims.sink_blocks, dims.source_blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuiverRep):
            return NotImplemented
        return self.dims == other.dims and self.B == other.B

    def __hash__(self):
        return hash((self.dims, self.B))

    def __repr__(self) -> str:
        return f"QuiverRep(dims={self.dims}, B={self.B!r})"

    def to_obj(self) -> dict:
        return {"dims": self.dims.to_obj(), "B": self.B.to_obj()}

    @classmethod
    def from_obj(cls, obj: dict) -> "QuiverRep":
        return cls(DimVector.from_obj(obj["dims"]), CycMatrix.from_obj(obj["B"]))


@dataclass(frozen=True)
class GLAlphaElement:
    """Blockwise base change (M1, M2; N1, N2, N3), one block per vertex."""

    M1: CycMatrix
    M2: CycMatrix
    N1: CycMatrix
    N2: CycMatrix
    N3: CycMatrix

    def blocks(self) -> tuple:
        return (self.M1, self.M2, self.N1, self.N2, self.N3)

    def source_matrix(self) -> CycMatrix:
        return block_diag([self.M1, self.M2])

    def sink_matrix(self) -> CycMatrix:
        return block_diag([self.N1, self.N2, self.N3])

    def is_invertible(self) -> bool:
        return all(blk.det() != ZERO for blk in self.blocks())

    def is_zero(self) -> bool:
        return all(blk.is_zero() for blk in self.blocks())

    def compose(self, other: "GLAlphaElement") -> "GLAlphaElement":
        return GLAlphaElement(*(s @ o for s, o in zip(self.blocks(), other.blocks())))

    def inverse(self) -> "GLAlphaElement":
        return GLAlphaElement(*(blk.inverse() for blk in self.blocks()))

    def scale(self, c: CycRat) -> "GLAlphaElement":
        return GLAlphaElement(*(blk.scale(c) for blk in self.blocks()))

    def add(self, other: "GLAlphaElement") -> "GLAlphaElement":
        return GLAlphaElement(*(s + o for s, o in zip(self.blocks(), other.blocks())))

    @classmethod
    def identity(cls, dims: DimVector) -> "GLAlphaElement":
        return cls(*(CycMatrix.identity(s)
                     for s in dims.source_blocks + dims.sink_blocks))

    def to_obj(self) -> dict:
        return {name: blk.to_obj() for name, blk in
                zip(("M1", "M2", "N1", "N2", "N3"), self.blocks())}

    @classmethod
    def from_obj(cls, obj: dict) -> "GLAlphaElement":
        return cls(*(CycMatrix.from_obj(obj[name])
                     for name in ("M1", "M2", "N1", "N2", "N3")))


def act(g: GLAlphaElement, V: QuiverRep) -> QuiverRep:
    """Base-change action: B -> diag(N1,N2,N3) . B . diag(M1,M2)^{-1}."""
    d = V.dims
    expected = (d.a, d.b, d.x, d.y, d.z)
    for blk, size in zip(g.blocks(), expected):
        if blk.shape != (size, size):
            raise ShapeError(f"group element block {blk.shape} does not fit {d}")
    m_inv = block_diag([g.M1.inverse(), g.M2.inverse()])
    newB = g.sink_matrix() @ V.B @ m_inv
    return QuiverRep(d, newB)


def tau_quiver(V: QuiverRep) -> QuiverRep:
    """Transpose involution on quiver data: B -> (B^{-1})^tr."""
    return QuiverRep(V.dims, V.B.inverse().transpose())


def hom_space(V: QuiverRep, W: QuiverRep) -> list:
    """Basis of the space of quiver morphisms V -> W.

    A morphism is a block tuple (M1, M2, N1, N2, N3), not necessarily
    invertible, satisfying diag(N1,N2,N3) . V.B = W.B . diag(M1,M2).
    Since V.B is invertible the sink side is determined by the source
    side: N = W.B . diag(M) . V.B^{-1} must be block diagonal, which is a
    linear condition on the entries of (M1, M2).  The returned basis is
    deterministic (reduced echelon form of that condition).
    """
    if V.dims != W.dims:
        raise ShapeError(f"dimension vectors differ: {V.dims} vs {W.dims}")
    d = V.dims
    n = d.n
    v_inv = V.B.inverse()
    wb = W.B
    src_sizes = d.source_blocks
    src_offs = (0, d.a)
    snk_sizes = d.sink_blocks
    snk_offs = (0, d.x, d.x + d.y)

    # Column layout: M1 entries row-major, then M2 entries row-major.
    def unknown_columns():
        for size, off in zip(src_sizes, src_offs):
            for k in range(size):
                for l in range(size):
                    yield off + k, off + l

    columns = list(unknown_columns())
    m_count = len(columns)

    snk_block_of = []
    for idx, size in enumerate(snk_sizes):
        snk_block_of.extend([idx] * size)

    # One constraint per entry of N sitting off the sink block diagonal.
    v_cols = [[v_inv.entries[l][c] for l in range(n)] for c in range(n)]
    rows = []
    for r in range(n):
        wrow = wb.entries[r]
        for c in range(n):
            if snk_block_of[r] == snk_block_of[c]:
                continue
            vcol = v_cols[c]
            rows.append([wrow[k] * vcol[l] for (k, l) in columns])
    system = CycMatrix._raw(len(rows), m_count, rows)
    kernel = system.nullspace()

    basis = []
    for vec in kernel:
        flat = [vec.entries[i][0] for i in range(m_count)]
        m_blocks = []
        pos = 0
        for size in src_sizes:
            blk = [flat[pos + i * size : pos + (i + 1) * size] for i in range(size)]
            m_blocks.append(CycMatrix._raw(size, size, blk))
            pos += size * size
        prod = wb @ block_diag(m_blocks) @ v_inv
        n_blocks = []
        for size, off in zip(snk_sizes, snk_offs):
            blk = [[prod.entries[off + i][off + j] for j in range(size)]
                   for i in range(size)]
            n_blocks.append(CycMatrix._raw(size, size, blk))
        basis.append(GLAlphaElement(m_blocks[0], m_blocks[1], *n_blocks))
    return basis


@dataclass(frozen=True)
class IsomorphismSearch:
    """Outcome of a witness search: the witness (if any), the dimension of
    the hom space, and whether a nonzero hom space defeated the search
    (possible only for non-stable representations)."""

    witness: GLAlphaElement | None
    hom_dim: int
    inconclusive: bool


def find_isomorphism(V: QuiverRep, W: QuiverRep,
                     rng: random.Random | None = None) -> IsomorphismSearch:
    """Search the hom space for an invertible element.

    An invertible morphism g satisfies act(g, V) == W exactly, so any hit
    is a certified isomorphism witness.  For stable representations the
    hom space has dimension 0 or 1 and the first basis vector decides; for
    others up to 8 seeded random combinations of the basis are tried, and
    failure is flagged inconclusive rather than reported as a definitive
    "not isomorphic".
    """
    basis = hom_space(V, W)
    hom_dim = len(basis)
    for g in basis:
        if g.is_invertible():
            if act(g, V) != W:  # pragma: no cover - guaranteed by linear algebra
                raise AssertionError("invertible hom element is not a witness")
            return IsomorphismSearch(g, hom_dim, False)
    if hom_dim <= 1:
        # scaling cannot make a singular tuple invertible, so an exhausted
        # one-dimensional hom space is a definitive negative
        return IsomorphismSearch(None, hom_dim, False)
    rng = rng if rng is not None else random.Random(0)
    for _ in range(8):
        combo = basis[0].scale(CycRat(rng.randint(-4, 4), rng.randint(-4, 4)))
        for elt in basis[1:]:
            c = CycRat(rng.randint(-4, 4), rng.randint(-4, 4))
            combo = combo.add(elt.scale(c))
        if combo.is_invertible():
            if act(combo, V) != W:  # pragma: no cover
                raise AssertionError("invertible hom element is not a witness")
            return IsomorphismSearch(combo, hom_dim, False)
    return IsomorphismSearch(None, hom_dim, True)


def are_isomorphic(V: QuiverRep, W: QuiverRep,
                   rng: random.Random | None = None) -> GLAlphaElement | None:
    """Witness g with act(g, V) == W, or None.

    Exact for stable representations.  For non-stable ones a None answer
    can be inconclusive; use find_isomorphism to see the flag.
    """
    return find_isomorphism(V, W, rng).witness
