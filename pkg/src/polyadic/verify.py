"""Randomized checking of polyadic axioms, with reproducible reports.

An ``NaryStructure`` bundles an arity, a total n-ary product, and an optional
element sampler; the checkers draw bounded random elements, test a law at
every slot placement, and return a ``VerificationReport``. Reports are
deterministic given (seed, trials): per-trial seeds are pre-derived from the
master seed, so results are bit-for-bit identical whether trials run
sequentially or on a thread pool. A failed check always carries a
counterexample next to the seed that reproduces it.

The structures of interest are infinite, so randomized trials over bounded
elements (matrix entries with small numerators and denominators) are the
honest verification mode; nothing here claims a proof.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .blockshift import BlockShiftMatrix
from .matrices import Matrix
from .scalars import CC, QQ, ComplexRational, GrassmannAlgebra, NotInvertibleError


@dataclass
class NaryStructure:
    """A set with one total n-ary product, as seen by the checkers.

    ``product`` takes a sequence of exactly ``arity`` elements. ``sampler``
    draws one random element from an rng; ``equal`` defaults to ==;
    ``serialize`` renders an element for JSON reports.
    """

    arity: int
    domain: str
    product: Callable[[Sequence[Any]], Any]
    sampler: Optional[Callable[[random.Random], Any]] = None
    equal: Optional[Callable[[Any, Any], bool]] = None
    serialize: Optional[Callable[[Any], Any]] = None

    def eq(self, a, b) -> bool:
        return self.equal(a, b) if self.equal else a == b

    def dump(self, x):
        return self.serialize(x) if self.serialize else str(x)

    def _need_sampler(self):
        if self.sampler is None:
            raise ValueError(f"structure {self.domain!r} has no sampler")


@dataclass
class VerificationReport:
    """One checked axiom: outcome, counterexample if any, and reproducibility
    data (seed and trial count)."""

    check: str
    arity: int
    trials: int
    seed: int
    result: str
    counterexample: Any = None
    wall_time_s: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.result == "pass"

    def to_json(self) -> dict:
        obj = {
            "check": self.check,
            "arity": self.arity,
            "trials": self.trials,
            "seed": self.seed,
            "result": self.result,
            "counterexample": self.counterexample,
        }
        if self.details:
            obj["details"] = self.details
        return obj


def _run_trials(trials: int, seed: int, trial_fn, parallel: bool = False):
    """Run `trial_fn(rng)` for each pre-derived trial seed; return the
    lowest-index counterexample payload, or None if every trial passed."""
    master = random.Random(seed)
    trial_seeds = [master.randrange(2**63) for _ in range(trials)]

    def one(ts):
        return trial_fn(random.Random(ts))

    if parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(one, trial_seeds))
    else:
        results = []
        for ts in trial_seeds:
            outcome = one(ts)
            results.append(outcome)
            if outcome is not None:
                break
    for outcome in results:
        if outcome is not None:
            return outcome
    return None


def _report(check, s, trials, seed, payload, started, **details) -> VerificationReport:
    return VerificationReport(
        check=check,
        arity=s.arity,
        trials=trials,
        seed=seed,
        result="pass" if payload is None else "fail",
        counterexample=payload,
        wall_time_s=time.perf_counter() - started,
        details=details,
    )


def check_total_associativity(
    s: NaryStructure, trials: int = 200, seed: int = 0, parallel: bool = False
) -> VerificationReport:
    """Draw 2n-1 elements per trial and compare the double product with the
    inner product at each of the n placements."""
    s._need_sampler()
    n = s.arity
    started = time.perf_counter()

    def trial(rng):
        xs = [s.sampler(rng) for _ in range(2 * n - 1)]
        base = None
        for j in range(n):
            inner = s.product(xs[j : j + n])
            outer = s.product(xs[:j] + [inner] + xs[j + n :])
            if base is None:
                base = outer
            elif not s.eq(outer, base):
                return {
                    "factors": [s.dump(x) for x in xs],
                    "placements": [0, j],
                    "results": [s.dump(base), s.dump(outer)],
                }
        return None

    payload = _run_trials(trials, seed, trial, parallel)
    return _report("total-associativity", s, trials, seed, payload, started)


def check_querelement(
    s: NaryStructure,
    quer: Callable[[Any], Any],
    trials: int = 200,
    seed: int = 0,
    parallel: bool = False,
) -> VerificationReport:
    """For sampled a, substitute quer(a) at every one of the n slots (with a
    everywhere else) and require the product to reproduce a."""
    s._need_sampler()
    n = s.arity
    started = time.perf_counter()

    def trial(rng):
        a = s.sampler(rng)
        abar = quer(a)
        for pos in range(n):
            args = [a] * n
            args[pos] = abar
            result = s.product(args)
            if not s.eq(result, a):
                return {
                    "element": s.dump(a),
                    "querelement": s.dump(abar),
                    "position": pos,
                    "result": s.dump(result),
                }
        return None

    payload = _run_trials(trials, seed, trial, parallel)
    return _report("querelement-law", s, trials, seed, payload, started)


def polyadic_power(s: NaryStructure, a, ell: int):
    """The ell-th polyadic power: fold the product ell times over
    ell*(n-1)+1 copies of a."""
    if ell < 1:
        raise ValueError("polyadic power needs ell >= 1")
    x = a
    for _ in range(ell):
        x = s.product([x] + [a] * (s.arity - 1))
    return x


def check_idempotent(s: NaryStructure, a) -> VerificationReport:
    """Whether the product of n copies of a returns a."""
    started = time.perf_counter()
    result = s.product([a] * s.arity)
    payload = None
    if not s.eq(result, a):
        payload = {"element": s.dump(a), "result": s.dump(result)}
    return _report("idempotent", s, 1, 0, payload, started)


def check_identity(
    s: NaryStructure, e, trials: int = 200, seed: int = 0, parallel: bool = False
) -> VerificationReport:
    """Neutrality of e: for sampled a, the product with a at any one slot and
    e at the other n-1 slots returns a."""
    s._need_sampler()
    n = s.arity
    started = time.perf_counter()

    def trial(rng):
        a = s.sampler(rng)
        for pos in range(n):
            args = [e] * n
            args[pos] = a
            result = s.product(args)
            if not s.eq(result, a):
                return {
                    "element": s.dump(a),
                    "identity": s.dump(e),
                    "position": pos,
                    "result": s.dump(result),
                }
        return None

    payload = _run_trials(trials, seed, trial, parallel)
    return _report("identity-law", s, trials, seed, payload, started)


def check_commutative(
    s: NaryStructure, trials: int = 200, seed: int = 0, parallel: bool = False
) -> VerificationReport:
    """Invariance of the product under sampled permutations of the argument
    polyad."""
    s._need_sampler()
    n = s.arity
    started = time.perf_counter()

    def trial(rng):
        xs = [s.sampler(rng) for _ in range(n)]
        base = s.product(xs)
        for _ in range(3):
            perm = list(range(n))
            rng.shuffle(perm)
            permuted = s.product([xs[i] for i in perm])
            if not s.eq(permuted, base):
                return {
                    "factors": [s.dump(x) for x in xs],
                    "permutation": perm,
                    "results": [s.dump(base), s.dump(permuted)],
                }
        return None

    payload = _run_trials(trials, seed, trial, parallel)
    return _report("commutativity", s, trials, seed, payload, started)


def check_nilpotent(
    s: NaryStructure, zero, a, max_ell: int, seed: int = 0, zero_law_samples: int = 8
) -> Optional[int]:
    """Least ell <= max_ell with the ell-th polyadic power of a equal to the
    polyadic zero, or None when no such power shows up.

    First spot-checks that ``zero`` really absorbs: the product with zero at
    any slot and sampled elements elsewhere must return zero.
    """
    n = s.arity
    if s.sampler is not None and zero_law_samples > 0:
        rng = random.Random(seed)
        for _ in range(zero_law_samples):
            others = [s.sampler(rng) for _ in range(n - 1)]
            for pos in range(n):
                args = list(others)
                args.insert(pos, zero)
                if not s.eq(s.product(args), zero):
                    raise ValueError("the supplied element fails the polyadic-zero law")
    x = a
    for ell in range(1, max_ell + 1):
        x = s.product([x] + [a] * (n - 1))
        if s.eq(x, zero):
            return ell
    return None


# --- bounded random samplers --------------------------------------------


def random_fraction(rng: random.Random, bound: int = 9) -> Fraction:
    """Uniform small fraction; numerator and denominator stay within bound."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_complex(rng: random.Random, bound: int = 9) -> ComplexRational:
    return ComplexRational(random_fraction(rng, bound), random_fraction(rng, bound))


def random_grassmann(
    algebra: GrassmannAlgebra,
    rng: random.Random,
    bound: int = 9,
    parity: Optional[str] = None,
    density: float = 0.4,
) -> "object":
    """Random element: each basis monomial of the requested parity appears
    with probability ``density`` and a random complex-rational coefficient."""
    from itertools import combinations

    n = algebra.num_generators
    terms = {}
    for size in range(n + 1):
        if parity == "even" and size % 2 == 1:
            continue
        if parity == "odd" and size % 2 == 0:
            continue
        for combo in combinations(range(1, n + 1), size):
            if rng.random() < density:
                terms[combo] = random_complex(rng, bound)
    return algebra.element(terms)


def random_scalar(ring, rng: random.Random, bound: int = 9):
    if isinstance(ring, GrassmannAlgebra):
        return random_grassmann(ring, rng, bound)
    if ring == QQ:
        return random_fraction(rng, bound)
    if ring == CC:
        return random_complex(rng, bound)
    raise TypeError(f"no sampler for ring {ring!r}")


def random_matrix(ring, rows: int, cols: int, rng: random.Random, bound: int = 9) -> Matrix:
    return Matrix(ring, rows, cols, [random_scalar(ring, rng, bound) for _ in range(rows * cols)])


def random_invertible_matrix(ring, size: int, rng: random.Random, bound: int = 9) -> Matrix:
    while True:
        m = random_matrix(ring, size, size, rng, bound)
        try:
            m.inverse()
        except NotInvertibleError:
            continue
        return m


def random_blockshift(
    ring,
    arity: int,
    rng: random.Random,
    block_size: int | None = None,
    dims: Sequence[int] | None = None,
    invertible: bool = False,
    bound: int = 9,
) -> BlockShiftMatrix:
    """Random block-shift matrix, square uniform blocks by default.

    Pass ``dims`` for nonsquare cyclic shapes; ``invertible`` retries until
    every block has an inverse (square uniform shapes only).
    """
    m = arity - 1
    if dims is not None:
        dims = list(dims)
        blocks = [
            random_matrix(ring, dims[i], dims[(i + 1) % m], rng, bound) for i in range(m)
        ]
        return BlockShiftMatrix(arity, blocks)
    p = block_size or 2
    if invertible:
        blocks = [random_invertible_matrix(ring, p, rng, bound) for _ in range(m)]
    else:
        blocks = [random_matrix(ring, p, p, rng, bound) for _ in range(m)]
    return BlockShiftMatrix(arity, blocks)


def blockshift_structure(
    ring, arity: int, block_size: int = 2, invertible: bool = False, bound: int = 9
) -> NaryStructure:
    """The family of block-shift matrices of one shape, wrapped for checking."""
    from .blockshift import nary_product

    return NaryStructure(
        arity=arity,
        domain=f"block-shift arity {arity}, {block_size}x{block_size} blocks over {ring!r}",
        product=nary_product,
        sampler=lambda rng: random_blockshift(
            ring, arity, rng, block_size=block_size, invertible=invertible, bound=bound
        ),
        serialize=lambda q: q.to_json(),
    )


def unique_blockshift_structure(
    ring, arity: int, block_size: int = 2, bound: int = 9
) -> NaryStructure:
    """The all-blocks-equal subfamily: the image of the binary structure under
    unique polyadization. The all-identity element is neutral at every
    placement here (on the full family only at the end placements, since
    interior factors see their blocks advanced cyclically)."""
    from .blockshift import nary_product, unique_polyadize

    return NaryStructure(
        arity=arity,
        domain=(
            f"unique-polyadized arity {arity}, {block_size}x{block_size} blocks over {ring!r}"
        ),
        product=nary_product,
        sampler=lambda rng: unique_polyadize(
            arity, random_matrix(ring, block_size, block_size, rng, bound)
        ),
        serialize=lambda q: q.to_json(),
    )


def random_shiftdiag(ring, arity: int, sizes: Sequence[int], rng: random.Random, bound: int = 5):
    from .decomposition import ShiftDiag

    return ShiftDiag(
        arity,
        [[random_matrix(ring, s, s, rng, bound) for s in sizes] for _ in range(arity - 1)],
    )


def random_diagshift(
    ring, arity: int, inner_sizes: Sequence[Sequence[int]], rng: random.Random, bound: int = 5
):
    from .decomposition import DiagShift

    m = arity - 1
    comps = []
    for sizes in inner_sizes:
        sizes = list(sizes)
        comps.append(
            [random_matrix(ring, sizes[i], sizes[(i + 1) % m], rng, bound) for i in range(m)]
        )
    return DiagShift(arity, comps)


def random_pmatrix(ring, q: int, rng: random.Random, bound: int = 5):
    from .decomposition import PMatrix, _P_FIELDS

    return PMatrix(**{name: random_matrix(ring, q, q, rng, bound) for name in _P_FIELDS})
