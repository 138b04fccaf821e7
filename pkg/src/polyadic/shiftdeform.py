"""Shift-deformed n-ary addition on m-tuples over an exact additive group.

Carriers are plain ints, ``Fraction``s, or ``Turn``s (rationals mod 1, i.e.
exact angles measured in full turns). The n-ary operation adds the arguments
after rotating the i-th one i-1 steps; it is totally associative exactly when
the tuple length is m = n-1, and in that case every tuple has a querelement
and the zero-sum tuples form an infinite family of identities.

Two rotation conventions are in play and both are exposed deliberately:

* ``cyclic_shift`` rotates entries one slot to the right, (a, b, c) -> (c, a, b);
  this is the shift operator in its own right.
* the deformed sum ``nu_s`` advances entries the opposite way (slot j of the
  rotated tuple reads slot j+k of the original), because that is the rotation
  under which tuples of rotation angles compose exactly like the matching
  block-shift matrix products (see catalog.so2_nary_product).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import ParseError


@dataclass(frozen=True)
class Turn:
    """An exact angle in units of full turns, reduced into [0, 1)."""

    value: Fraction

    def __post_init__(self):
        v = self.value
        if not isinstance(v, Fraction):
            v = Fraction(v)
        object.__setattr__(self, "value", v % 1)

    @staticmethod
    def of(value) -> "Turn":
        return Turn(Fraction(value))

    @staticmethod
    def parse(text: str) -> "Turn":
        try:
            return Turn(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad turn literal {text!r}") from exc

    def __add__(self, other):
        if not isinstance(other, Turn):
            return NotImplemented
        return Turn(self.value + other.value)

    def __sub__(self, other):
        if not isinstance(other, Turn):
            return NotImplemented
        return Turn(self.value - other.value)

    def __neg__(self):
        return Turn(-self.value)

    def __bool__(self):
        return bool(self.value)

    def radians(self) -> float:
        import math

        return 2.0 * math.pi * float(self.value)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class ShiftTuple:
    """An m-tuple over one additive carrier; the element type of the deformed
    n-ary group on the (n-1)-th direct power."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a shift tuple needs at least one component")

    @property
    def m(self) -> int:
        return len(self.components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _advanced(components: tuple, k: int) -> tuple:
    """Rotate so slot j of the result reads slot j+k of the input (wrapping)."""
    m = len(components)
    k %= m
    return components[k:] + components[:k]


def cyclic_shift(a: ShiftTuple) -> ShiftTuple:
    """One right rotation: the last entry wraps to the front, (a,b,c) -> (c,a,b).

    Applying it m times returns the original tuple.
    """
    return ShiftTuple(_advanced(a.components, a.m - 1))


def _zero_like(components: tuple) -> tuple:
    return tuple(c - c for c in components)


def nu_s(arity: int, args: Sequence[ShiftTuple]) -> ShiftTuple:
    """The deformed n-ary sum: argument i enters advanced by i-1 slots.

    All arguments must share the tuple length m; total associativity
    additionally needs m = arity-1, which this function does not force (the
    non-associative shapes are useful as counterexamples).
    """
    args = list(args)
    if len(args) != arity:
        raise ValueError(f"arity {arity} sum needs exactly {arity} arguments, got {len(args)}")
    m = args[0].m
    if any(a.m != m for a in args):
        raise ValueError("all arguments must share the tuple length")
    total = list(args[0].components)
    for i in range(1, arity):
        rotated = _advanced(args[i].components, i)
        total = [x + y for x, y in zip(total, rotated)]
    return ShiftTuple(tuple(total))


def quer_tuple(arity: int, a: ShiftTuple) -> ShiftTuple:
    """The unique querelement: minus the sum of the rotations 1..n-2 of a.

    Substituted at any slot of the deformed sum, with a at the others, it
    reproduces a. Needs m = arity-1 and a carrier with negation.
    """
    if a.m != arity - 1:
        raise ValueError(f"querelement needs tuple length {arity - 1}, got {a.m}")
    total = list(_zero_like(a.components))
    for k in range(1, arity - 1):
        rotated = _advanced(a.components, k)
        total = [x + y for x, y in zip(total, rotated)]
    return ShiftTuple(tuple(-x for x in total))


def is_identity_tuple(arity: int, e: ShiftTuple) -> bool:
    """Whether e is a polyadic identity: the rotations 0..n-2 of e sum to zero.

    Every such tuple is neutral at any slot and is an n-ary idempotent.
    """
    if e.m != arity - 1:
        raise ValueError(f"identity check needs tuple length {arity - 1}, got {e.m}")
    total = list(e.components)
    for k in range(1, arity - 1):
        rotated = _advanced(e.components, k)
        total = [x + y for x, y in zip(total, rotated)]
    return tuple(total) == _zero_like(e.components)


@dataclass(frozen=True)
class AssociativityWitness:
    """Outcome of a randomized total-associativity search."""

    arity: int
    m: int
    holds: bool
    trials_run: int
    factors: tuple | None = None
    placements: tuple | None = None

    def to_json(self) -> dict:
        obj = {
            "arity": self.arity,
            "m": self.m,
            "holds": self.holds,
            "trials_run": self.trials_run,
        }
        if not self.holds:
            obj["counterexample"] = {
                "factors": [list(map(str, f.components)) for f in self.factors],
                "placements": list(self.placements),
            }
        return obj


def associativity_witness(
    arity: int, m: int, trials: int, seed: int = 0, low: int = -20, high: int = 20
) -> AssociativityWitness:
    """Search random integer m-tuples for a placement-dependent double sum.

    Each trial draws 2*arity-1 tuples and evaluates the double sum with the
    inner sum at each of the arity slots. For m = arity-1 all placements
    agree and the search reports holds; otherwise a counterexample normally
    turns up within a few trials and is returned.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    for trial in range(trials):
        factors = [
            ShiftTuple(tuple(rng.randint(low, high) for _ in range(m)))
            for _ in range(2 * arity - 1)
        ]
        results = []
        for j in range(arity):
            inner = nu_s(arity, factors[j : j + arity])
            outer = nu_s(arity, factors[:j] + [inner] + factors[j + arity :])
            results.append(outer)
        for j in range(1, arity):
            if results[j] != results[0]:
                return AssociativityWitness(
                    arity, m, False, trial + 1, tuple(factors), (0, j)
                )
    return AssociativityWitness(arity, m, True, trials)
