"""Exact scalar domains: rationals, complex rationals, finite Grassmann algebras.

Nothing here ever rounds. Ring descriptor objects (``QQ``, ``CC``,
``GrassmannAlgebra(n)``) carry zero/one, parsing and printing of the text
forms, and inversion, so matrix code stays generic over the coefficient
domain. All values are immutable after construction.

Text forms:
    rational          "p/q" or "p"
    complex rational  "p/q+r/s*i" (either part may be dropped, "i" alone is 1*i)
    grassmann         terms joined by "+"/"-", each "coeff*t1*t3" with the
                      coefficient parenthesized when it contains a sign of its
                      own, e.g. "(1/2+1/3*i)*t1*t2 + 3"
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union


class NotInvertibleError(ZeroDivisionError):
    """The element has no multiplicative inverse in its ring."""


class ParseError(ValueError):
    """A scalar literal does not match the expected text form."""


RationalLike = Union[int, Fraction, str]


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


@dataclass(frozen=True)
class ComplexRational:
    """Complex number with exact rational real and imaginary parts."""

    real: Fraction = Fraction(0)
    imag: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.real, Fraction):
            object.__setattr__(self, "real", Fraction(self.real))
        if not isinstance(self.imag, Fraction):
            object.__setattr__(self, "imag", Fraction(self.imag))

    def __add__(self, other):
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return ComplexRational(self.real + other.real, self.imag + other.imag)

    def __sub__(self, other):
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return ComplexRational(self.real - other.real, self.imag - other.imag)

    def __neg__(self):
        return ComplexRational(-self.real, -self.imag)

    def __mul__(self, other):
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return ComplexRational(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    def __truediv__(self, other):
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return self * other.inverse()

    def __bool__(self) -> bool:
        return bool(self.real) or bool(self.imag)

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.real, -self.imag)

    def inverse(self) -> "ComplexRational":
        norm = self.real * self.real + self.imag * self.imag
        if not norm:
            raise NotInvertibleError("division by zero")
        return ComplexRational(self.real / norm, -self.imag / norm)

    def to_complex(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __str__(self) -> str:
        if not self.imag:
            return str(self.real)
        imag = f"{self.imag}*i"
        if not self.real:
            return imag
        if self.imag > 0:
            return f"{self.real}+{imag}"
        return f"{self.real}-{-self.imag}*i"

    def __repr__(self) -> str:
        return f"ComplexRational({self.real!r}, {self.imag!r})"


CC_ZERO = ComplexRational(Fraction(0), Fraction(0))
CC_ONE = ComplexRational(Fraction(1), Fraction(0))
CC_I = ComplexRational(Fraction(0), Fraction(1))


def parse_complex(text: str) -> ComplexRational:
    """Parse "p/q+r/s*i" with either part optional; "i" alone means 1*i."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty complex literal")
    pieces = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*/(":
            pieces.append(s[start:i])
            start = i
    pieces.append(s[start:])
    real = Fraction(0)
    imag = Fraction(0)
    for piece in pieces:
        if piece in ("i", "+i"):
            imag += 1
        elif piece == "-i":
            imag -= 1
        elif piece.endswith("*i"):
            imag += parse_rational(piece[:-2])
        elif piece.endswith("i"):
            raise ParseError(f"bad imaginary term {piece!r} in {text!r}")
        else:
            real += parse_rational(piece)
    return ComplexRational(real, imag)


def _merge_indices(left: tuple[int, ...], right: tuple[int, ...]):
    """Merge two sorted generator-index tuples.

    Returns (sign, merged) where sign counts the transpositions needed to
    interleave ``right`` into ``left``; returns (0, ()) when an index repeats
    (the product vanishes by nilpotency).
    """
    merged = []
    sign = 1
    i, j = 0, 0
    while i < len(left) and j < len(right):
        if left[i] == right[j]:
            return 0, ()
        if left[i] < right[j]:
            merged.append(left[i])
            i += 1
        else:
            # right[j] jumps over the remaining len(left)-i factors
            if (len(left) - i) % 2 == 1:
                sign = -sign
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return sign, tuple(merged)


class GrassmannElement:
    """Element of the algebra on anticommuting generators t1..tN.

    Stored sparsely: ``terms`` maps a sorted tuple of generator indices to its
    nonzero complex-rational coefficient. The empty tuple carries the body
    (the generator-free part); everything else is the nilpotent soul.
    """

    __slots__ = ("num_generators", "terms")

    def __init__(self, num_generators: int, terms: Mapping[tuple[int, ...], ComplexRational]):
        cleaned = {}
        for key, coeff in terms.items():
            key = tuple(key)
            if list(key) != sorted(set(key)):
                raise ValueError(f"generator indices must be strictly increasing, got {key}")
            if key and (key[0] < 1 or key[-1] > num_generators):
                raise ValueError(f"generator index out of range 1..{num_generators}: {key}")
            if coeff:
                cleaned[key] = coeff
        object.__setattr__(self, "num_generators", num_generators)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("GrassmannElement is immutable")

    def _check_compatible(self, other: "GrassmannElement"):
        if self.num_generators != other.num_generators:
            raise ValueError(
                f"mismatched generator counts: {self.num_generators} vs {other.num_generators}"
            )

    def _coerce(self, other):
        if isinstance(other, GrassmannElement):
            return other
        if isinstance(other, ComplexRational):
            return GrassmannElement(self.num_generators, {(): other})
        if isinstance(other, (int, Fraction)):
            return GrassmannElement(self.num_generators, {(): ComplexRational(Fraction(other))})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, CC_ZERO) + coeff
        return GrassmannElement(self.num_generators, terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return GrassmannElement(
            self.num_generators, {k: -c for k, c in self.terms.items()}
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check_compatible(other)
        acc: dict[tuple[int, ...], ComplexRational] = {}
        for lk, lc in self.terms.items():
            for rk, rc in other.terms.items():
                sign, key = _merge_indices(lk, rk)
                if sign == 0:
                    continue
                coeff = lc * rc
                if sign < 0:
                    coeff = -coeff
                acc[key] = acc.get(key, CC_ZERO) + coeff
        return GrassmannElement(self.num_generators, acc)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        return (
            isinstance(other, GrassmannElement)
            and self.num_generators == other.num_generators
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_generators, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def body(self) -> ComplexRational:
        return self.terms.get((), CC_ZERO)

    def soul(self) -> "GrassmannElement":
        return GrassmannElement(
            self.num_generators, {k: c for k, c in self.terms.items() if k}
        )

    def parity(self) -> str:
        """"even", "odd", or "mixed"; the zero element counts as even."""
        sizes = {len(k) % 2 for k in self.terms}
        if sizes <= {0}:
            return "even"
        if sizes == {1}:
            return "odd"
        return "mixed"

    def even_part(self) -> "GrassmannElement":
        return GrassmannElement(
            self.num_generators, {k: c for k, c in self.terms.items() if len(k) % 2 == 0}
        )

    def odd_part(self) -> "GrassmannElement":
        return GrassmannElement(
            self.num_generators, {k: c for k, c in self.terms.items() if len(k) % 2 == 1}
        )

    def inverse(self) -> "GrassmannElement":
        """Multiplicative inverse, defined exactly when the body is nonzero.

        With a = body*(1 + u) and u nilpotent, the inverse is the finite
        geometric series body^-1 * sum_k (-u)^k, which terminates after at
        most num_generators steps.
        """
        body = self.body()
        if not body:
            raise NotInvertibleError("element with zero body is not invertible")
        body_inv = body.inverse()
        u = self.soul() * body_inv
        one = GrassmannElement(self.num_generators, {(): CC_ONE})
        acc = one
        power = one
        for _ in range(self.num_generators):
            power = power * (-u)
            if not power:
                break
            acc = acc + power
        return acc * body_inv

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            coeff = str(self.terms[key])
            if any(ch in "+-" for ch in coeff[1:]):
                coeff = f"({coeff})"
            if key:
                parts.append("*".join([coeff] + [f"t{i}" for i in key]))
            else:
                parts.append(coeff)
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def __repr__(self) -> str:
        return f"<grassmann[{self.num_generators}] {self}>"


class RationalField:
    """Descriptor for exact rational scalars backed by fractions.Fraction."""

    commutative = True
    name = "rational"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, bool) or isinstance(value, float):
            raise TypeError(f"refusing inexact value {value!r}")
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def is_zero(self, x) -> bool:
        return not x

    def is_invertible(self, x) -> bool:
        return bool(x)

    def invert(self, x) -> Fraction:
        if not x:
            raise NotInvertibleError("division by zero")
        return 1 / x

    def parse(self, text: str) -> Fraction:
        return parse_rational(text)

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "QQ"


class ComplexRationalField:
    """Descriptor for exact complex rationals."""

    commutative = True
    name = "complex-rational"

    def zero(self) -> ComplexRational:
        return CC_ZERO

    def one(self) -> ComplexRational:
        return CC_ONE

    def coerce(self, value) -> ComplexRational:
        if isinstance(value, bool) or isinstance(value, float):
            raise TypeError(f"refusing inexact value {value!r}")
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, (int, Fraction)):
            return ComplexRational(Fraction(value))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def is_zero(self, x) -> bool:
        return not x

    def is_invertible(self, x) -> bool:
        return bool(x)

    def invert(self, x) -> ComplexRational:
        return x.inverse()

    def parse(self, text: str) -> ComplexRational:
        return parse_complex(text)

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, ComplexRationalField)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "CC"


class GrassmannAlgebra:
    """Descriptor for the Grassmann algebra on a fixed number of generators.

    The generator count is fixed per instance; elements from algebras with
    different counts never mix. Not commutative (odd elements anticommute),
    so determinant-style operations are refused downstream.
    """

    commutative = False

    def __init__(self, num_generators: int):
        if num_generators < 1:
            raise ValueError("a Grassmann algebra needs at least 1 generator")
        self.num_generators = num_generators

    @property
    def name(self) -> str:
        return f"grassmann:{self.num_generators}"

    def zero(self) -> GrassmannElement:
        return GrassmannElement(self.num_generators, {})

    def one(self) -> GrassmannElement:
        return GrassmannElement(self.num_generators, {(): CC_ONE})

    def constant(self, value) -> GrassmannElement:
        if isinstance(value, (int, Fraction)):
            value = ComplexRational(Fraction(value))
        return GrassmannElement(self.num_generators, {(): value})

    def generator(self, index: int) -> GrassmannElement:
        if not 1 <= index <= self.num_generators:
            raise ValueError(f"generator index {index} out of range 1..{self.num_generators}")
        return GrassmannElement(self.num_generators, {(index,): CC_ONE})

    def element(self, terms: Mapping[tuple[int, ...], ComplexRational]) -> GrassmannElement:
        return GrassmannElement(self.num_generators, terms)

    def coerce(self, value) -> GrassmannElement:
        if isinstance(value, bool) or isinstance(value, float):
            raise TypeError(f"refusing inexact value {value!r}")
        if isinstance(value, GrassmannElement):
            if value.num_generators != self.num_generators:
                raise ValueError(
                    f"element has {value.num_generators} generators, algebra has {self.num_generators}"
                )
            return value
        if isinstance(value, (int, Fraction, ComplexRational)):
            return self.constant(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def is_zero(self, x) -> bool:
        return not x

    def is_invertible(self, x) -> bool:
        return bool(x.body())

    def invert(self, x) -> GrassmannElement:
        return x.inverse()

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str) -> GrassmannElement:
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty grassmann literal")
        pieces = []
        depth = 0
        start = 0
        for i, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth < 0:
                    raise ParseError(f"unbalanced parentheses in {text!r}")
            elif ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "+-*/(":
                pieces.append(s[start:i])
                start = i
        if depth != 0:
            raise ParseError(f"unbalanced parentheses in {text!r}")
        pieces.append(s[start:])
        total = self.zero()
        for piece in pieces:
            total = total + self._parse_term(piece)
        return total

    def _parse_term(self, piece: str) -> GrassmannElement:
        sign = 1
        while piece and piece[0] in "+-":
            if piece[0] == "-":
                sign = -sign
            piece = piece[1:]
        if not piece:
            raise ParseError("dangling sign in grassmann literal")
        factors = []
        depth = 0
        start = 0
        for i, ch in enumerate(piece):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "*" and depth == 0:
                factors.append(piece[start:i])
                start = i + 1
        factors.append(piece[start:])
        value = self.constant(CC_ONE if sign > 0 else -CC_ONE)
        for factor in factors:
            if not factor:
                raise ParseError(f"empty factor in term {piece!r}")
            if factor[0] == "t" and factor[1:].isdigit():
                value = value * self.generator(int(factor[1:]))
            elif factor == "i":
                value = value * self.constant(CC_I)
            elif factor.startswith("(") and factor.endswith(")"):
                value = value * self.constant(parse_complex(factor[1:-1]))
            else:
                value = value * self.constant(parse_complex(factor))
        return value

    def __eq__(self, other):
        return isinstance(other, GrassmannAlgebra) and self.num_generators == other.num_generators

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"GrassmannAlgebra({self.num_generators})"


QQ = RationalField()
CC = ComplexRationalField()
