"""Semisimple n-ary matrix forms combining shift and diagonal block structure.

Two nested layouts are implemented:

* ``ShiftDiag`` (first kind): an outer block-shift matrix whose n-1 blocks are
  each block-diagonal with k square components; component j has one fixed
  size q_j across all shift slots, so the outer blocks are all p x p with
  p = sum(q_j).
* ``DiagShift`` (second kind): an outer block-diagonal matrix with k
  components, each of which is itself an inner block-shift matrix whose n-1
  blocks may be nonsquare.

Both families are closed under their n-fold product and under binary
addition, and the two dense supports generically differ, which is what keeps
the two kinds structurally distinct. Their binary sum in the ternary,
two-component, equal-size case is the 8-block P-matrix, closed under the
triple product and addition.
"""

from __future__ import annotations

from typing import Sequence

from .blockshift import BlockShiftMatrix, PatternError, nary_product
from .matrices import Matrix, ShapeError, _require_keys


def _block_diag(ring, mats: Sequence[Matrix]) -> Matrix:
    total_r = sum(m.rows for m in mats)
    total_c = sum(m.cols for m in mats)
    zero = ring.zero()
    rows = [[zero] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for m in mats:
        for r in range(m.rows):
            for c in range(m.cols):
                rows[r0 + r][c0 + c] = m.entry(r, c)
        r0 += m.rows
        c0 += m.cols
    return Matrix.from_rows(ring, rows)


class ShiftDiag:
    """First kind: block-shift outside, block-diagonal inside.

    ``blocks[i][j]`` is the square q_j x q_j component j of shift slot i+1;
    the grid has n-1 rows and k columns.
    """

    __slots__ = ("arity", "blocks")

    def __init__(self, arity: int, blocks: Sequence[Sequence[Matrix]]):
        grid = tuple(tuple(row) for row in blocks)
        if arity < 2:
            raise ShapeError(f"arity must be >= 2, got {arity}")
        if len(grid) != arity - 1:
            raise ShapeError(f"arity {arity} needs {arity - 1} shift slots, got {len(grid)}")
        k = len(grid[0])
        if k < 1 or any(len(row) != k for row in grid):
            raise ShapeError("every shift slot needs the same positive number of components")
        ring = grid[0][0].ring
        sizes = [grid[0][j].rows for j in range(k)]
        for row in grid:
            for j, mat in enumerate(row):
                if mat.ring != ring:
                    raise ShapeError("all components must share one scalar ring")
                if not mat.is_square or mat.rows != sizes[j]:
                    raise ShapeError(
                        f"component {j + 1} must be square of size {sizes[j]}, "
                        f"got {mat.rows}x{mat.cols}"
                    )
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "blocks", grid)

    def __setattr__(self, name, value):
        raise AttributeError("ShiftDiag is immutable")

    @property
    def num_components(self) -> int:
        return len(self.blocks[0])

    @property
    def component_sizes(self) -> tuple[int, ...]:
        return tuple(m.rows for m in self.blocks[0])

    @property
    def ring(self):
        return self.blocks[0][0].ring

    def shape(self):
        return (self.arity, self.num_components, self.component_sizes)

    def as_blockshift(self) -> BlockShiftMatrix:
        """The outer view: each shift slot assembled into one diagonal block."""
        return BlockShiftMatrix(
            self.arity, [_block_diag(self.ring, row) for row in self.blocks]
        )

    def to_dense(self) -> Matrix:
        return self.as_blockshift().to_dense()

    def __eq__(self, other):
        return (
            isinstance(other, ShiftDiag)
            and self.arity == other.arity
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.arity, self.blocks))

    def __add__(self, other):
        if not isinstance(other, ShiftDiag):
            return NotImplemented
        if self.shape() != other.shape():
            raise ShapeError("can only add equal-shape structures")
        return ShiftDiag(
            self.arity,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.blocks, other.blocks)],
        )

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "kind": "shift-diag",
            "component_sizes": list(self.component_sizes),
            "blocks": [[m.to_json() for m in row] for row in self.blocks],
        }

    @classmethod
    def from_json(cls, ring, obj) -> "ShiftDiag":
        _require_keys(obj, {"arity", "kind", "component_sizes", "blocks"})
        if obj["kind"] != "shift-diag":
            raise ShapeError(f"expected kind shift-diag, got {obj['kind']!r}")
        grid = [[Matrix.from_json(ring, m) for m in row] for row in obj["blocks"]]
        result = cls(obj["arity"], grid)
        if list(result.component_sizes) != obj["component_sizes"]:
            raise ShapeError("declared component_sizes do not match blocks")
        return result

    def __repr__(self):
        return f"ShiftDiag(arity={self.arity}, sizes={self.component_sizes})"


def shiftdiag_nary_product(factors: Sequence[ShiftDiag]) -> ShiftDiag:
    """n-fold product computed per component: within each component j the
    shift slots chain cyclically, exactly as in the plain block-shift case."""
    if not factors:
        raise ShapeError("empty factor list")
    n = factors[0].arity
    if len(factors) != n:
        raise ShapeError(f"arity {n} product needs exactly {n} factors, got {len(factors)}")
    shape = factors[0].shape()
    for f in factors:
        if f.shape() != shape:
            raise ShapeError("all factors must share arity, component count, and sizes")
    m = n - 1
    k = factors[0].num_components
    grid = []
    for i in range(m):
        row = []
        for j in range(k):
            acc = factors[0].blocks[i][j]
            for t in range(1, n):
                acc = acc * factors[t].blocks[(i + t) % m][j]
            row.append(acc)
        grid.append(row)
    return ShiftDiag(n, grid)


class DiagShift:
    """Second kind: block-diagonal outside, block-shift inside.

    ``components[j]`` is the tuple of n-1 inner blocks of component j+1;
    inner block i has shape p_i x p_{i+1} with the index wrapping, and the
    inner sizes may differ between components.
    """

    __slots__ = ("arity", "components")

    def __init__(self, arity: int, components: Sequence[Sequence[Matrix]]):
        comps = tuple(tuple(c) for c in components)
        if arity < 2:
            raise ShapeError(f"arity must be >= 2, got {arity}")
        if not comps:
            raise ShapeError("need at least one component")
        ring = comps[0][0].ring
        m = arity - 1
        for j, comp in enumerate(comps):
            if len(comp) != m:
                raise ShapeError(f"component {j + 1} needs {m} inner blocks, got {len(comp)}")
            for i, b in enumerate(comp):
                if b.ring != ring:
                    raise ShapeError("all components must share one scalar ring")
                expected = comp[(i + 1) % m].rows
                if b.cols != expected:
                    raise ShapeError(
                        f"component {j + 1}: inner block {i + 1} is {b.rows}x{b.cols} "
                        f"but the next block has {expected} rows"
                    )
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("DiagShift is immutable")

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def inner_sizes(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(b.rows for b in comp) for comp in self.components)

    @property
    def component_sizes(self) -> tuple[int, ...]:
        return tuple(sum(sizes) for sizes in self.inner_sizes)

    @property
    def ring(self):
        return self.components[0][0].ring

    def shape(self):
        return (self.arity, self.inner_sizes)

    def component_blockshifts(self) -> list[BlockShiftMatrix]:
        return [BlockShiftMatrix(self.arity, comp) for comp in self.components]

    def to_dense(self) -> Matrix:
        return _block_diag(self.ring, [b.to_dense() for b in self.component_blockshifts()])

    def __eq__(self, other):
        return (
            isinstance(other, DiagShift)
            and self.arity == other.arity
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.arity, self.components))

    def __add__(self, other):
        if not isinstance(other, DiagShift):
            return NotImplemented
        if self.shape() != other.shape():
            raise ShapeError("can only add equal-shape structures")
        return DiagShift(
            self.arity,
            [[a + b for a, b in zip(ca, cb)] for ca, cb in zip(self.components, other.components)],
        )

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "kind": "diag-shift",
            "components": [[b.to_json() for b in comp] for comp in self.components],
        }

    @classmethod
    def from_json(cls, ring, obj) -> "DiagShift":
        _require_keys(obj, {"arity", "kind", "components"})
        if obj["kind"] != "diag-shift":
            raise ShapeError(f"expected kind diag-shift, got {obj['kind']!r}")
        comps = [[Matrix.from_json(ring, b) for b in comp] for comp in obj["components"]]
        return cls(obj["arity"], comps)

    def __repr__(self):
        return f"DiagShift(arity={self.arity}, inner_sizes={self.inner_sizes})"


def diagshift_nary_product(factors: Sequence[DiagShift]) -> DiagShift:
    """n-fold product computed per component via the inner block-shift chain."""
    if not factors:
        raise ShapeError("empty factor list")
    n = factors[0].arity
    if len(factors) != n:
        raise ShapeError(f"arity {n} product needs exactly {n} factors, got {len(factors)}")
    shape = factors[0].shape()
    for f in factors:
        if f.shape() != shape:
            raise ShapeError("all factors must share arity and inner sizes")
    k = factors[0].num_components
    comps = []
    for j in range(k):
        product = nary_product([BlockShiftMatrix(n, f.components[j]) for f in factors])
        comps.append(product.blocks)
    return DiagShift(n, comps)


# Cell support of the 4x4 block grid of the P-matrix (0-based).
_P_LAYOUT = {
    (0, 1): "ahat1", (0, 2): "a1",
    (1, 0): "ahat2", (1, 3): "a2",
    (2, 0): "b1", (2, 3): "bhat1",
    (3, 1): "b2", (3, 2): "bhat2",
}

_P_FIELDS = ("a1", "a2", "b1", "b2", "ahat1", "ahat2", "bhat1", "bhat2")


class PMatrix:
    """Binary sum of a ternary two-component first-kind and second-kind
    structure with equal q x q components: eight blocks on a 4x4 block grid.

        .   ahat1  a1    .
        ahat2  .   .     a2
        b1     .   .     bhat1
        .    b2    bhat2 .
    """

    __slots__ = _P_FIELDS

    def __init__(self, a1, a2, b1, b2, ahat1, ahat2, bhat1, bhat2):
        mats = (a1, a2, b1, b2, ahat1, ahat2, bhat1, bhat2)
        q = a1.rows
        for m in mats:
            if m.ring != a1.ring:
                raise ShapeError("all eight blocks must share one scalar ring")
            if not m.is_square or m.rows != q:
                raise ShapeError(f"all eight blocks must be {q}x{q}")
        for name, m in zip(_P_FIELDS, mats):
            object.__setattr__(self, name, m)

    def __setattr__(self, name, value):
        raise AttributeError("PMatrix is immutable")

    @property
    def q(self) -> int:
        return self.a1.rows

    @property
    def ring(self):
        return self.a1.ring

    @classmethod
    def from_kinds(cls, first: ShiftDiag, second: DiagShift) -> "PMatrix":
        """Assemble from one structure of each kind; their dense sum is the
        dense form of the result."""
        if first.arity != 3 or second.arity != 3:
            raise ShapeError("the P-matrix form needs arity 3")
        if first.num_components != 2 or second.num_components != 2:
            raise ShapeError("the P-matrix form needs exactly 2 components")
        q = first.component_sizes[0]
        if first.component_sizes != (q, q) or second.inner_sizes != ((q, q), (q, q)):
            raise ShapeError("the P-matrix form needs all component blocks of one size q")
        return cls(
            a1=first.blocks[0][0], a2=first.blocks[0][1],
            b1=first.blocks[1][0], b2=first.blocks[1][1],
            ahat1=second.components[0][0], ahat2=second.components[0][1],
            bhat1=second.components[1][0], bhat2=second.components[1][1],
        )

    def block(self, name: str) -> Matrix:
        return getattr(self, name)

    def to_dense(self) -> Matrix:
        ring = self.ring
        q = self.q
        zero = ring.zero()
        rows = [[zero] * (4 * q) for _ in range(4 * q)]
        for (br, bc), name in _P_LAYOUT.items():
            m = self.block(name)
            for r in range(q):
                for c in range(q):
                    rows[br * q + r][bc * q + c] = m.entry(r, c)
        return Matrix.from_rows(ring, rows)

    def __eq__(self, other):
        return isinstance(other, PMatrix) and all(
            self.block(n) == other.block(n) for n in _P_FIELDS
        )

    def __hash__(self):
        return hash(tuple(self.block(n) for n in _P_FIELDS))

    def __add__(self, other):
        if not isinstance(other, PMatrix):
            return NotImplemented
        if self.q != other.q or self.ring != other.ring:
            raise ShapeError("can only add P-matrices of the same size and ring")
        return PMatrix(**{n: self.block(n) + other.block(n) for n in _P_FIELDS})

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "blocks": {n: self.block(n).to_json() for n in _P_FIELDS},
        }

    @classmethod
    def from_json(cls, ring, obj) -> "PMatrix":
        _require_keys(obj, {"q", "blocks"})
        blocks = obj["blocks"]
        _require_keys(blocks, set(_P_FIELDS))
        mats = {n: Matrix.from_json(ring, blocks[n]) for n in _P_FIELDS}
        result = cls(**mats)
        if result.q != obj["q"]:
            raise ShapeError(f"declared q={obj['q']} does not match blocks of size {result.q}")
        return result

    def __repr__(self):
        return f"PMatrix(q={self.q})"


def pmatrix_from_dense(q: int, dense: Matrix) -> PMatrix:
    """Extract the eight blocks; off-support nonzeros raise PatternError."""
    d = 4 * q
    if (dense.rows, dense.cols) != (d, d):
        raise ShapeError(f"dense matrix must be {d}x{d}, got {dense.rows}x{dense.cols}")
    ring = dense.ring
    mats = {}
    for (br, bc), name in _P_LAYOUT.items():
        entries = [dense.entry(br * q + r, bc * q + c) for r in range(q) for c in range(q)]
        mats[name] = Matrix(ring, q, q, entries)
    for r in range(d):
        for c in range(d):
            if (r // q, c // q) not in _P_LAYOUT and not ring.is_zero(dense.entry(r, c)):
                raise PatternError(f"nonzero entry at ({r}, {c}) is off the P support")
    return PMatrix(**mats)


def pmatrix_ternary_product(a: PMatrix, b: PMatrix, c: PMatrix) -> PMatrix:
    """Dense triple product, re-extracted. Closure is a theorem for this
    layout, so an off-support entry would mean an implementation bug; it
    surfaces as PatternError."""
    if not (a.q == b.q == c.q):
        raise ShapeError("factors must share the block size q")
    dense = a.to_dense() * b.to_dense() * c.to_dense()
    return pmatrix_from_dense(a.q, dense)


def _support(m: Matrix) -> frozenset:
    return frozenset(
        (r, c)
        for r in range(m.rows)
        for c in range(m.cols)
        if not m.ring.is_zero(m.entry(r, c))
    )


def patterns_distinct(arity: int, num_components: int, sizes: Sequence[int]) -> bool:
    """Whether the dense supports of the two kinds differ for these shapes.

    Both embeddings are materialized with all-ones blocks of the given
    component sizes (the second kind takes square inner blocks of the same
    sizes, which makes the total dimensions match) and their nonzero
    supports are compared.
    """
    from .scalars import QQ

    sizes = list(sizes)
    if len(sizes) != num_components or any(s < 1 for s in sizes):
        raise ShapeError("sizes must list one positive size per component")
    m = arity - 1
    ones = {s: Matrix(QQ, s, s, [QQ.one()] * (s * s)) for s in set(sizes)}
    first = ShiftDiag(arity, [[ones[s] for s in sizes] for _ in range(m)])
    second = DiagShift(arity, [[ones[s]] * m for s in sizes])
    return _support(first.to_dense()) != _support(second.to_dense())
