"""Ready-made polyadic structures over exact scalars.

Three families, each built by placing binary representatives into the
block-shift shape:

* the 4-ary rotation family: triples of exact angle turns, whose 4-fold
  product adds the twelve turns in a shifted pattern (noncommutative even
  though binary rotations commute);
* the 4-ary general linear family on invertible 2x2 complex-rational blocks,
  with closed-form querelements and the determinant character;
* the ternary supergroup on invertible 2x2 Grassmann supermatrices of
  standard form, with querelement (B2^-1, B1^-1).

Angles are rational turns so that every rotation identity is an exact check;
a float rotation-matrix bridge exists only to connect to the dense matrix
picture and to the benchmark.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .blockshift import BlockShiftMatrix, polyadize, nary_product
from .matrices import Matrix, ShapeError, SuperMatrix
from .scalars import CC, ComplexRational, GrassmannAlgebra, NotInvertibleError
from .shiftdeform import ShiftTuple, Turn, nu_s
from .verify import NaryStructure


@dataclass(frozen=True)
class So2Poly:
    """A 4-ary rotation: three exact angle turns (alpha, beta, gamma)."""

    turns: tuple[Turn, Turn, Turn]

    def __post_init__(self):
        turns = tuple(self.turns)
        if len(turns) != 3 or not all(isinstance(t, Turn) for t in turns):
            raise ValueError("So2Poly needs exactly three Turn components")
        object.__setattr__(self, "turns", turns)

    @staticmethod
    def of(alpha, beta, gamma) -> "So2Poly":
        return So2Poly((Turn.of(alpha), Turn.of(beta), Turn.of(gamma)))

    def __str__(self):
        return "Q(" + ", ".join(str(t) for t in self.turns) + ")"


def so2_nary_product(a: So2Poly, b: So2Poly, c: So2Poly, d: So2Poly) -> So2Poly:
    """4-fold product of 4-ary rotations, as shifted turn sums:

        (a1+b2+c3+a4, b1+c2+a3+b4, c1+a2+b3+c4)   (mod 1 componentwise).

    Noncommutative: swapping two distinct factors changes the result.
    """
    (a1, b1, c1), (a2, b2, c2) = a.turns, b.turns
    (a3, b3, c3), (a4, b4, c4) = c.turns, d.turns
    return So2Poly((a1 + b2 + c3 + a4, b1 + c2 + a3 + b4, c1 + a2 + b3 + c4))


def so2_quer(a: So2Poly) -> So2Poly:
    """Querelement: (-beta-gamma, -alpha-gamma, -alpha-beta) mod 1."""
    alpha, beta, gamma = a.turns
    return So2Poly((-(beta + gamma), -(alpha + gamma), -(alpha + beta)))


def so2_is_identity(e: So2Poly) -> bool:
    """Identity family: the three turns sum to zero mod 1."""
    alpha, beta, gamma = e.turns
    return not (alpha + beta + gamma)


def so2_to_shift_tuple(a: So2Poly) -> ShiftTuple:
    return ShiftTuple(a.turns)


def so2_from_shift_tuple(t: ShiftTuple) -> So2Poly:
    if t.m != 3:
        raise ValueError("a 4-ary rotation needs a 3-tuple of turns")
    return So2Poly(tuple(t.components))


def so2_product_via_shift_tuples(factors: Sequence[So2Poly]) -> So2Poly:
    """The same product computed through the deformed tuple sum; used as an
    independent route in tests."""
    return so2_from_shift_tuple(nu_s(4, [so2_to_shift_tuple(f) for f in factors]))


def so2_rotation_float(turn: Turn):
    """Dense 2x2 float rotation matrix for one turn."""
    import math

    import numpy as np

    angle = turn.radians()
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def so2_dense_float(a: So2Poly):
    """Dense 6x6 float embedding of a 4-ary rotation."""
    import numpy as np

    out = np.zeros((6, 6))
    blocks = [so2_rotation_float(t) for t in a.turns]
    out[0:2, 2:4] = blocks[0]
    out[2:4, 4:6] = blocks[1]
    out[4:6, 0:2] = blocks[2]
    return out


def random_so2(rng: random.Random, max_denominator: int = 24) -> So2Poly:
    def turn():
        den = rng.randint(1, max_denominator)
        return Turn(Fraction(rng.randrange(den), den))

    return So2Poly((turn(), turn(), turn()))


def so2_structure() -> NaryStructure:
    """The 4-ary rotation family wrapped for the verification engine."""
    return NaryStructure(
        arity=4,
        domain="4-ary rotations over exact turns",
        product=lambda args: so2_nary_product(*args),
        sampler=random_so2,
        serialize=lambda q: [str(t) for t in q.turns],
    )


def so2_binary_structure() -> NaryStructure:
    """Plain binary rotations (single turns, product = turn addition)."""
    return NaryStructure(
        arity=2,
        domain="binary rotations over exact turns",
        product=lambda args: args[0] + args[1],
        sampler=lambda rng: Turn(Fraction(rng.randrange(24), 24)),
        serialize=str,
    )


# --- 4-ary general linear family on 2x2 complex-rational blocks ---------


def _quadruple(values) -> tuple[ComplexRational, ...]:
    vals = tuple(CC.coerce(v) for v in values)
    if len(vals) != 4:
        raise ValueError(f"a block needs 4 parameters (a, b, c, d), got {len(vals)}")
    return vals


def gl2_block(quadruple) -> Matrix:
    a, b, c, d = _quadruple(quadruple)
    return Matrix.from_rows(CC, [[a, b], [c, d]])


def gl2_instance(quadruples: Sequence) -> BlockShiftMatrix:
    """The 12-parameter 4-ary element built from three invertible 2x2 blocks."""
    quads = [_quadruple(q) for q in quadruples]
    if len(quads) != 3:
        raise ValueError(f"the 4-ary general linear family needs 3 blocks, got {len(quads)}")
    for i, (a, b, c, d) in enumerate(quads):
        if not (a * d - b * c):
            raise NotInvertibleError(f"block {i + 1} has vanishing determinant")
    return polyadize(4, [gl2_block(q) for q in quads])


def gl2_quer_closed_form(quadruples: Sequence) -> tuple[Matrix, Matrix, Matrix]:
    """Entrywise closed forms of the three querelement blocks.

    Written out as explicit degree-2 polynomials over the twelve parameters
    divided by the determinant pairs, independently of the generic
    inverse-chain construction, so the two routes can be compared exactly.
    """
    quads = [_quadruple(q) for q in quadruples]
    if len(quads) != 3:
        raise ValueError("need 3 blocks")
    (a1, b1, c1, d1), (a2, b2, c2, d2), (a3, b3, c3, d3) = quads
    det1 = a1 * d1 - b1 * c1
    det2 = a2 * d2 - b2 * c2
    det3 = a3 * d3 - b3 * c3
    inv32 = (det3 * det2).inverse()
    inv13 = (det1 * det3).inverse()
    inv21 = (det2 * det1).inverse()
    quer1 = Matrix.from_rows(CC, [
        [inv32 * (b3 * c2 + d3 * d2), inv32 * (-(b3 * a2) - d3 * b2)],
        [inv32 * (-(a3 * c2) - c3 * d2), inv32 * (a3 * a2 + c3 * b2)],
    ])
    quer2 = Matrix.from_rows(CC, [
        [inv13 * (b1 * c3 + d1 * d3), inv13 * (-(b1 * a3) - d1 * b3)],
        [inv13 * (-(a1 * c3) - c1 * d3), inv13 * (a1 * a3 + c1 * b3)],
    ])
    quer3 = Matrix.from_rows(CC, [
        [inv21 * (b2 * c1 + d2 * d1), inv21 * (-(b2 * a1) - d2 * b1)],
        [inv21 * (-(a2 * c1) - c2 * d1), inv21 * (a2 * a1 + c2 * b1)],
    ])
    return quer1, quer2, quer3


def gl2_idempotent_equations(q: BlockShiftMatrix) -> tuple:
    """The four entrywise constraints a 4-ary idempotent's 2x2 blocks satisfy.

    Returns the values of the two diagonal polynomials (which must equal 1)
    followed by the two off-diagonal ones (which must vanish), expanded
    term by term rather than computed through a matrix product.
    """
    if q.arity != 4 or q.uniform_block_size != 2:
        raise ShapeError("the entrywise idempotent constraints are for arity 4, 2x2 blocks")
    (a1, b1), (c1, d1) = q.blocks[0].to_rows()
    (a2, b2), (c2, d2) = q.blocks[1].to_rows()
    (a3, b3), (c3, d3) = q.blocks[2].to_rows()
    diag_one = a1 * a2 * a3 + a1 * b2 * c3 + a3 * b1 * c2 + b1 * c3 * d2
    diag_two = a2 * b3 * c1 + b2 * c1 * d3 + b3 * c2 * d1 + d1 * d2 * d3
    off_one = a1 * a2 * b3 + a1 * b2 * d3 + b1 * b3 * c2 + b1 * d2 * d3
    off_two = a2 * a3 * c1 + a3 * c2 * d1 + b2 * c1 * c3 + c3 * d1 * d2
    return diag_one, diag_two, off_one, off_two


def random_gl2_quadruple(rng: random.Random, bound: int = 5) -> tuple:
    from .verify import random_complex

    while True:
        a, b, c, d = (random_complex(rng, bound) for _ in range(4))
        if a * d - b * c:
            return (a, b, c, d)


def random_gl2_instance(rng: random.Random, bound: int = 5) -> BlockShiftMatrix:
    return gl2_instance([random_gl2_quadruple(rng, bound) for _ in range(3)])


def gl2_structure() -> NaryStructure:
    return NaryStructure(
        arity=4,
        domain="4-ary general linear family on 2x2 complex-rational blocks",
        product=nary_product,
        sampler=random_gl2_instance,
        serialize=lambda q: q.to_json(),
    )


# --- ternary supergroup on 2x2 Grassmann supermatrices ------------------


def gl11_supermatrix(algebra: GrassmannAlgebra, params) -> SuperMatrix:
    """Standard-form (1|1) supermatrix [[a, alpha], [beta, b]] from a
    4-parameter tuple with a, b even and alpha, beta odd."""
    a, b, alpha, beta = (algebra.coerce(v) for v in params)
    sm = SuperMatrix(1, 1, Matrix.from_rows(algebra, [[a, alpha], [beta, b]]))
    if not sm.is_standard_form():
        raise ShapeError("parameters violate the (even | odd) parity grading")
    return sm


def gl11_instance(algebra: GrassmannAlgebra, params1, params2) -> BlockShiftMatrix:
    """The 8-parameter ternary supergroup element on two invertible blocks."""
    blocks = []
    for i, params in enumerate((params1, params2)):
        sm = gl11_supermatrix(algebra, params)
        if not algebra.is_invertible(sm.matrix.entry(0, 0)) or not algebra.is_invertible(
            sm.matrix.entry(1, 1)
        ):
            raise NotInvertibleError(f"block {i + 1} has a diagonal entry with zero body")
        blocks.append(sm.matrix)
    return polyadize(3, blocks)


def gl11_component_relations(factor1, factor2, factor3) -> dict:
    """The eight parameter relations of a ternary product, expanded term by
    term in the original factor order (Grassmann products do not commute).

    Each ``factor`` is a pair of 4-parameter tuples (a, b, alpha, beta); the
    returned dict maps parameter names of the product to their values, for
    comparison against the blockwise matrix product.
    """
    (a1p, b1p, al1p, be1p), (a2p, b2p, al2p, be2p) = factor1
    (a1q, b1q, al1q, be1q), (a2q, b2q, al2q, be2q) = factor2
    (a1r, b1r, al1r, be1r), (a2r, b2r, al2r, be2r) = factor3
    return {
        "a1": al1p * be2q * a1r + a1p * al2q * be1r + al1p * b2q * be1r + a1p * a2q * a1r,
        "b1": be1p * a2q * al1r + be1p * al2q * b1r + b1p * be2q * al1r + b1p * b2q * b1r,
        "alpha1": al1p * be2q * al1r + a1p * a2q * al1r + a1p * al2q * b1r + al1p * b2q * b1r,
        "beta1": be1p * al2q * be1r + be1p * a2q * a1r + b1p * be2q * a1r + b1p * b2q * be1r,
        "a2": al2p * be1q * a2r + a2p * al1q * be2r + al2p * b1q * be2r + a2p * a1q * a2r,
        "b2": be2p * a1q * al2r + be2p * al1q * b2r + b2p * be1q * al2r + b2p * b1q * b2r,
        "alpha2": al2p * be1q * al2r + a2p * a1q * al2r + a2p * al1q * b2r + al2p * b1q * b2r,
        "beta2": be2p * al1q * be2r + be2p * a1q * a2r + b2p * be1q * a2r + b2p * b1q * be2r,
    }


def gl11_params_of(q: BlockShiftMatrix):
    """Read back the two 4-parameter tuples (a, b, alpha, beta) of an instance."""
    if q.arity != 3 or q.uniform_block_size != 2:
        raise ShapeError("expected a ternary instance with 2x2 blocks")
    out = []
    for block in q.blocks:
        out.append((block.entry(0, 0), block.entry(1, 1), block.entry(0, 1), block.entry(1, 0)))
    return tuple(out)


def random_even(algebra: GrassmannAlgebra, rng: random.Random,
                invertible: bool = False, bound: int = 5):
    from .verify import random_grassmann

    while True:
        x = random_grassmann(algebra, rng, bound=bound, parity="even")
        if not invertible or algebra.is_invertible(x):
            return x


def random_odd(algebra: GrassmannAlgebra, rng: random.Random, bound: int = 5):
    from .verify import random_grassmann

    return random_grassmann(algebra, rng, bound=bound, parity="odd")


def random_gl11_params(algebra: GrassmannAlgebra, rng: random.Random, bound: int = 5):
    return (
        random_even(algebra, rng, invertible=True, bound=bound),
        random_even(algebra, rng, invertible=True, bound=bound),
        random_odd(algebra, rng, bound=bound),
        random_odd(algebra, rng, bound=bound),
    )


def random_gl11_instance(algebra: GrassmannAlgebra, rng: random.Random, bound: int = 5):
    return gl11_instance(
        algebra, random_gl11_params(algebra, rng, bound), random_gl11_params(algebra, rng, bound)
    )


def gl11_structure(algebra: GrassmannAlgebra | None = None) -> NaryStructure:
    algebra = algebra or GrassmannAlgebra(4)
    return NaryStructure(
        arity=3,
        domain=f"ternary supergroup on 2x2 matrices over {algebra.name}",
        product=nary_product,
        sampler=lambda rng: random_gl11_instance(algebra, rng),
        serialize=lambda q: q.to_json(),
    )
