"""Block-shift n-ary matrices: polyadization of binary matrix structures.

A block-shift matrix of arity n holds n-1 blocks B_1..B_{n-1}; in the dense
d x d embedding, block i sits in block-row i and block-column i+1, with the
last block wrapping to column 1, and everything else is zero. Dense products
of exactly n such matrices (more generally, of k of them with k = 1 mod n-1)
land back on the same support, which is why the family carries an n-ary
product but no binary one. Putting n-1 square representatives of a binary
matrix group into this shape therefore turns the binary structure into an
n-ary one; all the machinery for that construction lives here: the n-fold
blockwise product, the dense-product oracle, querelements, the n-ary
identity, multiplicative characters, and idempotents.
"""

from __future__ import annotations

from functools import reduce
from typing import Callable, Sequence

from .matrices import Matrix, ShapeError, _require_keys
from .scalars import NotInvertibleError


class PatternError(ValueError):
    """A dense matrix has support outside the designated block positions."""


class BlockShiftMatrix:
    """Arity n plus n-1 blocks with cyclically compatible dimensions.

    Block i (0-based) has shape dims[i] x dims[(i+1) % (n-1)]. For n=2 there
    is a single square block and every operation degenerates to its binary
    analog.
    """

    __slots__ = ("arity", "blocks")

    def __init__(self, arity: int, blocks: Sequence[Matrix]):
        blocks = tuple(blocks)
        if arity < 2:
            raise ShapeError(f"arity must be >= 2, got {arity}")
        if len(blocks) != arity - 1:
            raise ShapeError(f"arity {arity} needs {arity - 1} blocks, got {len(blocks)}")
        ring = blocks[0].ring
        m = arity - 1
        for i, b in enumerate(blocks):
            if b.ring != ring:
                raise ShapeError("all blocks must share one scalar ring")
            expected_cols = blocks[(i + 1) % m].rows
            if b.cols != expected_cols:
                raise ShapeError(
                    f"block {i + 1} is {b.rows}x{b.cols} but block {((i + 1) % m) + 1} "
                    f"has {expected_cols} rows (cyclic dimension mismatch)"
                )
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("BlockShiftMatrix is immutable")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.rows for b in self.blocks)

    @property
    def ring(self):
        return self.blocks[0].ring

    @property
    def uniform_block_size(self) -> int | None:
        """Common block size p when all blocks are square and equal, else None."""
        sizes = {(b.rows, b.cols) for b in self.blocks}
        if len(sizes) == 1:
            r, c = next(iter(sizes))
            if r == c:
                return r
        return None

    def __eq__(self, other):
        return (
            isinstance(other, BlockShiftMatrix)
            and self.arity == other.arity
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.arity, self.blocks))

    def __add__(self, other):
        """Blockwise sum: the binary addition of the matrix ring view."""
        if not isinstance(other, BlockShiftMatrix):
            return NotImplemented
        if self.arity != other.arity or self.dims != other.dims:
            raise ShapeError("can only add block-shift matrices of the same shape")
        return BlockShiftMatrix(self.arity, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return BlockShiftMatrix(self.arity, [-b for b in self.blocks])

    def __sub__(self, other):
        if not isinstance(other, BlockShiftMatrix):
            return NotImplemented
        return self + (-other)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def to_dense(self) -> Matrix:
        """The d x d embedding, zero outside the designated block positions."""
        ring = self.ring
        dims = self.dims
        m = self.arity - 1
        offsets = _offsets(dims)
        d = offsets[-1]
        zero = ring.zero()
        rows = [[zero] * d for _ in range(d)]
        for i, block in enumerate(self.blocks):
            j = (i + 1) % m
            r0, c0 = offsets[i], offsets[j]
            for r in range(block.rows):
                for c in range(block.cols):
                    rows[r0 + r][c0 + c] = block.entry(r, c)
        return Matrix.from_rows(ring, rows)

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "dims": list(self.dims),
            "blocks": [b.to_json() for b in self.blocks],
        }

    @classmethod
    def from_json(cls, ring, obj) -> "BlockShiftMatrix":
        _require_keys(obj, {"arity", "dims", "blocks"})
        arity = obj["arity"]
        if not isinstance(arity, int):
            raise ShapeError("arity must be an integer")
        blocks = [Matrix.from_json(ring, b) for b in obj["blocks"]]
        result = cls(arity, blocks)
        if list(result.dims) != obj["dims"]:
            raise ShapeError(f"declared dims {obj['dims']} do not match blocks {list(result.dims)}")
        return result

    def __repr__(self):
        return f"BlockShiftMatrix(arity={self.arity}, dims={self.dims})"


def _offsets(dims: Sequence[int]) -> list[int]:
    out = [0]
    for d in dims:
        out.append(out[-1] + d)
    return out


def from_blocks(arity: int, blocks: Sequence[Matrix]) -> BlockShiftMatrix:
    """Validate and wrap n-1 blocks as a block-shift matrix of the given arity."""
    return BlockShiftMatrix(arity, blocks)


def polyadize(arity: int, representatives: Sequence[Matrix]) -> BlockShiftMatrix:
    """Turn n-1 square p x p representatives of a binary structure n-ary.

    The result is the block-shift matrix carrying the representatives in
    order; its dense size is (n-1)p.
    """
    reps = list(representatives)
    if len(reps) != arity - 1:
        raise ShapeError(f"arity {arity} needs {arity - 1} representatives, got {len(reps)}")
    p = reps[0].rows
    for b in reps:
        if not b.is_square or b.rows != p:
            raise ShapeError("all representatives must be square and of equal size")
    return BlockShiftMatrix(arity, reps)


def unique_polyadize(arity: int, b: Matrix) -> BlockShiftMatrix:
    """Polyadize with all n-1 blocks equal; an n-ary-binary homomorphism.

    Products of n of these map to the plain n-fold binary product of the
    underlying matrices.
    """
    if not b.is_square:
        raise ShapeError("unique polyadization needs a square matrix")
    return BlockShiftMatrix(arity, [b] * (arity - 1))


def nary_identity(arity: int, block_size: int, ring) -> BlockShiftMatrix:
    """The n-ary identity: every block is the p x p identity."""
    eye = Matrix.identity(ring, block_size)
    return BlockShiftMatrix(arity, [eye] * (arity - 1))


def polyadic_zero(arity: int, dims: Sequence[int], ring) -> BlockShiftMatrix:
    """All-zero blocks; the polyadic zero of the matrix ring view."""
    m = arity - 1
    dims = list(dims)
    if len(dims) != m:
        raise ShapeError(f"arity {arity} needs {m} dims, got {len(dims)}")
    return BlockShiftMatrix(
        arity, [Matrix.zeros(ring, dims[i], dims[(i + 1) % m]) for i in range(m)]
    )


def nary_product(factors: Sequence[BlockShiftMatrix]) -> BlockShiftMatrix:
    """Blockwise n-fold product: result block i is the cyclic chain

        B_i' B_{i+1}'' B_{i+2}''' ... (n factors, block index advancing by one
        per factor, wrapping modulo n-1),

    which is exactly the block content of the dense n-fold product.
    """
    if not factors:
        raise ShapeError("empty factor list")
    n = factors[0].arity
    if len(factors) != n:
        raise ShapeError(f"arity {n} product needs exactly {n} factors, got {len(factors)}")
    dims = factors[0].dims
    for f in factors:
        if f.arity != n or f.dims != dims:
            raise ShapeError("all factors must share arity and dims")
    m = n - 1
    blocks = []
    for i in range(m):
        acc = factors[0].blocks[i]
        for t in range(1, n):
            acc = acc * factors[t].blocks[(i + t) % m]
        blocks.append(acc)
    return BlockShiftMatrix(n, blocks)


def dense_nary_product(factors: Sequence[BlockShiftMatrix]) -> BlockShiftMatrix:
    """Oracle route: multiply the dense embeddings and re-extract the blocks."""
    if not factors:
        raise ShapeError("empty factor list")
    n = factors[0].arity
    if len(factors) != n:
        raise ShapeError(f"arity {n} product needs exactly {n} factors, got {len(factors)}")
    dense = reduce(lambda a, b: a * b, (f.to_dense() for f in factors))
    return from_dense(n, factors[0].dims, dense)


def from_dense(arity: int, dims: Sequence[int], dense: Matrix) -> BlockShiftMatrix:
    """Extract the blocks of a dense matrix on the block-shift support.

    Raises PatternError when any entry outside the designated blocks is
    nonzero.
    """
    m = arity - 1
    dims = list(dims)
    offsets = _offsets(dims)
    d = offsets[-1]
    if (dense.rows, dense.cols) != (d, d):
        raise ShapeError(f"dense matrix must be {d}x{d}, got {dense.rows}x{dense.cols}")
    ring = dense.ring
    blocks = []
    allowed = set()
    for i in range(m):
        j = (i + 1) % m
        r0, c0 = offsets[i], offsets[j]
        entries = []
        for r in range(dims[i]):
            for c in range(dims[j]):
                allowed.add((r0 + r, c0 + c))
                entries.append(dense.entry(r0 + r, c0 + c))
        blocks.append(Matrix(ring, dims[i], dims[j], entries))
    for r in range(d):
        for c in range(d):
            if (r, c) not in allowed and not ring.is_zero(dense.entry(r, c)):
                raise PatternError(f"nonzero entry at ({r}, {c}) is off the block-shift support")
    return BlockShiftMatrix(arity, blocks)


def product_pattern(k: int, arity: int) -> bool:
    """Whether a k-fold dense product of arity-n block-shift matrices lands
    back on the block-shift support: true iff k = 1 (mod n-1)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return (k - 1) % (arity - 1) == 0


def querelement(q: BlockShiftMatrix) -> BlockShiftMatrix:
    """The unique solution of the n-ary division law for invertible blocks.

    Block i of the result is the product of the inverses of all the *other*
    blocks, taken in descending cyclic order starting just below i:

        quer_i = B_{i-1}^-1 ... B_1^-1 B_{n-1}^-1 ... B_{i+1}^-1.

    Substituting the result at any one of the n slots of the n-ary product,
    with the original at the remaining n-1 slots, reproduces the original.
    """
    n = q.arity
    m = n - 1
    p = q.uniform_block_size
    if p is None:
        raise ShapeError("querelement needs square blocks of equal size")
    inverses = [b.inverse() for b in q.blocks]
    quer_blocks = []
    for i in range(m):
        order = list(range(i - 1, -1, -1)) + list(range(m - 1, i, -1))
        acc = Matrix.identity(q.ring, p)
        for j in order:
            acc = acc * inverses[j]
        quer_blocks.append(acc)
    return BlockShiftMatrix(n, quer_blocks)


def polyadized_character(q: BlockShiftMatrix, chi: Callable[[Matrix], object]):
    """(-1)^n times the product of a binary multiplicative character over the
    blocks; an n-ary-binary homomorphism when the scalars commute."""
    ring = q.ring
    if not ring.commutative:
        raise ShapeError(f"character needs a commutative scalar ring, not {ring!r}")
    value = ring.one()
    for b in q.blocks:
        value = value * chi(b)
    return value if q.arity % 2 == 0 else -value


def character_determinant_report(q: BlockShiftMatrix) -> dict:
    """Compare the det-based polyadized character with the determinant of the
    dense embedding. The two agree only for some (arity, block size)
    combinations, so this is informational and never asserted."""
    char = polyadized_character(q, lambda b: b.determinant())
    dense_det = q.to_dense().determinant()
    return {
        "character": q.ring.format(char),
        "dense_determinant": q.ring.format(dense_det),
        "equal": char == dense_det,
    }


def is_nary_idempotent(q: BlockShiftMatrix) -> bool:
    """Whether the n-fold product of q with itself returns q."""
    return nary_product([q] * q.arity) == q


def make_idempotent(arity: int, free_blocks: Sequence[Matrix]) -> BlockShiftMatrix:
    """Complete n-2 free invertible blocks to an n-ary idempotent.

    The last block is forced: the cyclic block product must be the identity,
    so B_{n-1} = (B_1 ... B_{n-2})^-1.
    """
    free = list(free_blocks)
    if arity < 3:
        raise ShapeError("building an idempotent from free blocks needs arity >= 3")
    if len(free) != arity - 2:
        raise ShapeError(f"arity {arity} needs {arity - 2} free blocks, got {len(free)}")
    p = free[0].rows
    for b in free:
        if not b.is_square or b.rows != p:
            raise ShapeError("free blocks must be square and of equal size")
    prod = reduce(lambda a, b: a * b, free)
    return BlockShiftMatrix(arity, free + [prod.inverse()])
