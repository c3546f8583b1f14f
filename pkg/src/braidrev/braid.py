"""Braid words on two generators and representations of the three-string
braid group built from quiver data.

The construction takes an invertible base-change matrix B with blocks
(x, y, z) by (a, b) and produces the generator images

    X1 = B^{-1} D B J        X2 = J B^{-1} D B

with D = diag(1_x, w^2 1_y, w 1_z) and J = diag(1_a, -1_b).  The central
scalar of the group is pinned to 1 throughout, so (X1 X2)^3 = I and
(X1 X2 X1)^2 = I hold exactly and all arithmetic stays in Q(w).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _modp
from .cyclotomic import CycRat, ONE, RHO, RHO2, ZERO
from .linalg import CycMatrix, ShapeError, block_diag
from .quiver import DimVector, QuiverRep

__all__ = [
    "BraidWord",
    "BraidSyntaxError",
    "parse_braid",
    "reverse_braid",
    "EIGHT_SEVENTEEN",
    "B3Rep",
    "build_rep",
    "tau_rep",
    "evaluate",
    "trace_of",
    "is_simple",
    "recover_dimvector",
]


class BraidSyntaxError(ValueError):
    """Malformed braid word; ``position`` is the offending text offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class BraidWord:
    """Freely reduced word in the generators s1, s2.

    ``syllables`` is a sequence of (generator, exponent) pairs with
    generator in {1, 2}, nonzero exponents, and distinct adjacent
    generators.
    """

    syllables: tuple

    def __post_init__(self):
        prev = None
        for gen, exp in self.syllables:
            if gen not in (1, 2) or exp == 0 or gen == prev:
                raise ValueError(f"word {self.syllables} is not freely reduced")
            prev = gen

    def __len__(self) -> int:
        return len(self.syllables)

    def exponent_sum(self) -> int:
        return sum(exp for _, exp in self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return ""
        return " ".join(
            f"s{gen}" if exp == 1 else f"s{gen}^{exp}" for gen, exp in self.syllables
        )


def _reduce_syllables(raw) -> tuple:
    stack = []
    for gen, exp in raw:
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged:
                stack.append((gen, merged))
        elif exp:
            stack.append((gen, exp))
    return tuple(stack)


def parse_braid(text: str) -> BraidWord:
    """Parse ``("s1"|"s2")("^" integer)?`` terms, whitespace optional.

    The empty string parses to the empty word.  The result is freely
    reduced: adjacent syllables on the same generator are merged and
    cancelled.
    """
    raw = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        if text[i] != "s":
            raise BraidSyntaxError(f"expected 's1' or 's2', saw {text[i]!r}", i)
        if i + 1 >= n or text[i + 1] not in "12":
            raise BraidSyntaxError("generator must be s1 or s2", i)
        gen = int(text[i + 1])
        i += 2
        exp = 1
        if i < n and text[i] == "^":
            start = i + 1
            j = start
            if j < n and text[j] in "+-":
                j += 1
            while j < n and text[j].isdigit():
                j += 1
            if j == start or (j == start + 1 and not text[start].isdigit()):
                raise BraidSyntaxError("exponent expected after '^'", i)
            exp = int(text[start:j])
            if exp == 0:
                raise BraidSyntaxError("zero exponent is not allowed", start)
            i = j
        raw.append((gen, exp))
    return BraidWord(_reduce_syllables(raw))


def reverse_braid(word: BraidWord) -> BraidWord:
    """Reverse the order of the letters; exponents are unchanged."""
    return BraidWord(tuple(reversed(word.syllables)))


# The braid whose closure is the knot 8_17, the smallest non-invertible
# knot; its trace gap against the reversed word is the detection statistic.
EIGHT_SEVENTEEN = parse_braid("s1^-2 s2 s1^-1 s2 s1^-1 s2^2")


class B3Rep:
    """Pair of invertible matrices (X1, X2) satisfying the braid relation
    with central scalar 1.  Generator inverses are cached because braid
    words are short but exact inversion is the expensive step."""

    __slots__ = ("n", "X1", "X2", "dims", "_inv1", "_inv2")

    def __init__(self, X1: CycMatrix, X2: CycMatrix, dims: DimVector | None = None):
        if not X1.is_square() or X1.shape != X2.shape:
            raise ShapeError("generator images must be square of equal size")
        self.n = X1.rows
        self.X1 = X1
        self.X2 = X2
        self.dims = dims
        self._inv1 = None
        self._inv2 = None

    def generator_inverse(self, gen: int) -> CycMatrix:
        if gen == 1:
            if self._inv1 is None:
                self._inv1 = self.X1.inverse()
            return self._inv1
        if self._inv2 is None:
            self._inv2 = self.X2.inverse()
        return self._inv2

    def check_relations(self) -> None:
        """Raise unless the braid and pinned central relations hold exactly."""
        ident = CycMatrix.identity(self.n)
        x12 = self.X1 @ self.X2
        s = x12 @ self.X1
        if s != self.X2 @ self.X1 @ self.X2:
            raise ValueError("braid relation X1 X2 X1 = X2 X1 X2 fails")
        if x12 @ x12 @ x12 != ident:
            raise ValueError("central relation (X1 X2)^3 = I fails")
        if s @ s != ident:
            raise ValueError("central relation (X1 X2 X1)^2 = I fails")

    def __eq__(self, other) -> bool:
        if not isinstance(other, B3Rep):
            return NotImplemented
        return self.X1 == other.X1 and self.X2 == other.X2

    def __repr__(self) -> str:
        return f"B3Rep(n={self.n}, dims={self.dims})"

    def to_obj(self) -> dict:
        return {"n": self.n, "X1": self.X1.to_obj(), "X2": self.X2.to_obj()}

    @classmethod
    def from_obj(cls, obj: dict) -> "B3Rep":
        rep = cls(CycMatrix.from_obj(obj["X1"]), CycMatrix.from_obj(obj["X2"]))
        if rep.n != int(obj.get("n", rep.n)):
            raise ValueError("declared size does not match matrices")
        return rep


def build_rep(V: QuiverRep) -> B3Rep:
    """Generator images recovered from the base-change matrix."""
    d = V.dims
    D = block_diag(
        [
            CycMatrix.identity(d.x),
            CycMatrix.scalar(d.y, RHO2),
            CycMatrix.scalar(d.z, RHO),
        ]
    )
    J = _sign_matrix(d)
    core = V.B.inverse() @ D @ V.B
    return B3Rep(core @ J, J @ core, dims=d)


def _sign_matrix(d: DimVector) -> CycMatrix:
    return CycMatrix.diagonal([ONE] * d.a + [CycRat(-1)] * d.b)


def tau_rep(phi: B3Rep) -> B3Rep:
    """Transpose involution on representations: (X1, X2) -> (X1^tr, X2^tr)."""
    return B3Rep(phi.X1.transpose(), phi.X2.transpose(), dims=phi.dims)


def _power(phi: B3Rep, gen: int, exp: int) -> CycMatrix:
    base = (phi.X1 if gen == 1 else phi.X2) if exp > 0 else phi.generator_inverse(gen)
    k = abs(exp)
    result = None
    square = base
    while k:
        if k & 1:
            result = square if result is None else result @ square
        k >>= 1
        if k:
            square = square @ square
    return result


def evaluate(phi: B3Rep, word: BraidWord) -> CycMatrix:
    """Image of a braid word; the empty word maps to the identity."""
    acc = CycMatrix.identity(phi.n)
    for gen, exp in word.syllables:
        acc = acc @ _power(phi, gen, exp)
    return acc


def trace_of(phi: B3Rep, word: BraidWord) -> CycRat:
    return evaluate(phi, word).trace()


def is_simple(phi: B3Rep) -> bool:
    """Whether the matrices generate the full n x n algebra.

    The span of {I, X1, X2} is closed under left multiplication by the
    generators until its dimension stalls; the representation is simple
    iff the final dimension is n^2 (the algebra generated by invertible
    matrices contains their inverses, so words in X1, X2 suffice).

    A reduction mod p can only lower the span dimension, so full rank mod
    p certifies simplicity; anything less falls back to the exact
    computation.
    """
    for p, rho_img in _modp.PRIMES:
        a1 = _modp.matrix_mod(phi.X1, p, rho_img)
        a2 = _modp.matrix_mod(phi.X2, p, rho_img)
        if a1 is None or a2 is None:
            continue
        if _modp.burnside_rank_mod(a1, a2, p) == phi.n * phi.n:
            return True
        break
    return _burnside_rank_exact(phi) == phi.n * phi.n


def _burnside_rank_exact(phi: B3Rep) -> int:
    n = phi.n
    full = n * n
    pivots: list[int] = []
    rows: list[list] = []

    def insert(mat: CycMatrix) -> bool:
        vec = [v for row in mat.entries for v in row]
        for piv, row in zip(pivots, rows):
            c = vec[piv]
            if c:
                for j in range(piv, full):
                    if row[j]:
                        vec[j] = vec[j] - c * row[j]
        piv = next((j for j, v in enumerate(vec) if v), None)
        if piv is None:
            return False
        inv = vec[piv].inverse()
        rows.append([inv * v if v else ZERO for v in vec])
        pivots.append(piv)
        return True

    queue = []
    for seed in (CycMatrix.identity(n), phi.X1, phi.X2):
        if insert(seed):
            queue.append(seed)
    while queue and len(rows) < full:
        mat = queue.pop()
        for gen in (phi.X1, phi.X2):
            child = gen @ mat
            if insert(child):
                queue.append(child)
                if len(rows) == full:
                    break
    return len(rows)


def recover_dimvector(phi: B3Rep) -> DimVector:
    """Eigenspace dimensions read off the order-2 and order-3 elements.

    S = X1 X2 X1 has eigenvalues +1, -1 with multiplicities a, b; the
    order-3 element T = X1 X2 has eigenvalues 1, w, w^2 with
    multiplicities x, y, z.  Multiplicities are kernel dimensions, i.e.
    size minus rank, computed exactly.
    """
    n = phi.n
    t = phi.X1 @ phi.X2
    s = t @ phi.X1
    ident = CycMatrix.identity(n)

    a = n - (s - ident).rank()
    b = n - (s + ident).rank()
    x = n - (t - ident).rank()
    y = n - (t - CycMatrix.scalar(n, RHO)).rank()
    z = n - (t - CycMatrix.scalar(n, RHO2)).rank()
    if a + b != n or x + y + z != n:
        raise ValueError(
            f"matrices are not a central-scalar-1 pair: eigenvalue "
            f"multiplicities ({a},{b};{x},{y},{z}) do not fill dimension {n}"
        )
    return DimVector(a, b, x, y, z)
