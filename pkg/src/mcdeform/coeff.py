"""Exact coefficient arithmetic.

The coefficient rings are R+ = k[q_1..q_N] and its localization
R = k[q_1^{+-1}..q_N^{+-1}], with deg(q_j) a positive rational lambda_j.
A polynomial is a dict mapping exponent tuples to nonzero Fractions; the
zero polynomial has no terms.  Two gradings matter:

  * the rational degree of a monomial, sum_j e_j*lambda_j, and
  * its word length sum_j e_j, which realizes the decreasing filtration
    Q_{>=p} (terms of word length >= p).

Word length is what makes curvature series and gauge flows terminate: a
d-fold product of word-length->=1 elements has word length >= d, so all
computations are exact modulo Q_{>=K} after finitely many arities.

All scalars are exact rationals; there is no floating-point mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError, ModeError, ValidationError

RPLUS = "Rplus"
RLOC = "Rlocalized"

Monomial = tuple[int, ...]


def frac_from_json(obj) -> Fraction:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) for x in obj)):
        raise InputError(f"rational must be a [numerator, denominator] pair of ints, got {obj!r}")
    num, den = obj
    if den <= 0:
        raise InputError(f"rational denominator must be positive, got {den}")
    return Fraction(num, den)


def frac_to_json(x: Fraction) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Positive generator of the group Z*a + Z*b inside Q."""
    a, b = abs(Fraction(a)), abs(Fraction(b))
    if a == 0:
        return b
    if b == 0:
        return a
    from math import gcd, lcm
    return Fraction(gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


@dataclass(frozen=True)
class RingSpec:
    """Parameters of the coefficient ring: number of divisor components N,
    the degrees lambda_j of the variables q_j, the monotonicity constant
    kappa, and the filtration constant C used by the level-action
    functionals."""

    n: int
    lam: tuple[Fraction, ...]
    kappa: Fraction
    c_const: Fraction

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"N must be >= 1, got {self.n}")
        if len(self.lam) != self.n:
            raise ValidationError(f"expected {self.n} lambda values, got {len(self.lam)}")
        if any(l <= 0 for l in self.lam):
            raise ValidationError("every lambda_j must be positive")
        if self.kappa <= 0:
            raise ValidationError("kappa must be positive")

    @property
    def hypothesis_flag(self) -> bool:
        return all(l <= 2 for l in self.lam)

    def degree_step(self) -> Fraction:
        """Positive generator of the subgroup of Q spanned by the lambda_j."""
        g = Fraction(0)
        for l in self.lam:
            g = frac_gcd(g, l)
        return g

    @staticmethod
    def from_json(obj) -> "RingSpec":
        try:
            n = obj["N"]
            lam = tuple(frac_from_json(x) for x in obj["lambda"])
            kappa = frac_from_json(obj["kappa"])
            c_const = frac_from_json(obj["C"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed ring spec: {exc}") from exc
        if not isinstance(n, int):
            raise InputError("ring spec N must be an integer")
        return RingSpec(n, lam, kappa, c_const)

    def to_json(self):
        return {
            "N": self.n,
            "lambda": [frac_to_json(l) for l in self.lam],
            "kappa": frac_to_json(self.kappa),
            "C": frac_to_json(self.c_const),
        }


def qdegree(m: Monomial, spec: RingSpec) -> Fraction:
    if len(m) != spec.n:
        raise ValidationError(f"monomial has {len(m)} exponents, ring has N={spec.n}")
    return sum((Fraction(e) * l for e, l in zip(m, spec.lam)), Fraction(0))


def word_length(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) != len(b):
        raise ValidationError("monomial length mismatch")
    return tuple(x + y for x, y in zip(a, b))


def _check_mode(m: Monomial, mode: str) -> None:
    if mode == RPLUS:
        if any(e < 0 for e in m):
            raise ModeError(f"negative exponent {m} not allowed in {RPLUS} mode")
    elif mode != RLOC:
        raise ValidationError(f"unknown ring mode {mode!r}")


class NovPoly:
    """Sparse exact polynomial in the q_j.  Immutable by convention: no
    method mutates self or its term dict."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: Mapping[Monomial, Fraction], mode: str):
        clean: dict[Monomial, Fraction] = {}
        width = None
        for m, c in terms.items():
            m = tuple(int(e) for e in m)
            c = Fraction(c)
            if c == 0:
                continue
            if width is None:
                width = len(m)
            elif len(m) != width:
                raise ValidationError("inconsistent monomial lengths in polynomial")
            _check_mode(m, mode)
            clean[m] = c
        if mode not in (RPLUS, RLOC):
            raise ValidationError(f"unknown ring mode {mode!r}")
        self.terms = clean
        self.mode = mode

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(mode: str = RPLUS) -> "NovPoly":
        return NovPoly({}, mode)

    @staticmethod
    def unit(n: int, mode: str = RPLUS) -> "NovPoly":
        return NovPoly({(0,) * n: Fraction(1)}, mode)

    @staticmethod
    def monomial(exps: Iterable[int], mode: str = RPLUS, coeff=1) -> "NovPoly":
        return NovPoly({tuple(exps): Fraction(coeff)}, mode)

    @staticmethod
    def const(n: int, coeff, mode: str = RPLUS) -> "NovPoly":
        return NovPoly({(0,) * n: Fraction(coeff)}, mode)

    # -- predicates --------------------------------------------------

    def is_zero(self, mod_words: int | None = None) -> bool:
        if mod_words is None:
            return not self.terms
        return all(word_length(m) >= mod_words for m in self.terms)

    def word_min(self) -> int | None:
        """Smallest word length among terms; None for the zero polynomial."""
        if not self.terms:
            return None
        return min(word_length(m) for m in self.terms)

    def qdegree_homogeneous(self, spec: RingSpec) -> Fraction | None:
        """Common rational degree of all terms; None if zero, error if mixed."""
        degs = {qdegree(m, spec) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValidationError(f"polynomial is not degree-homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    # -- arithmetic --------------------------------------------------

    def _merge_mode(self, other: "NovPoly") -> str:
        if self.mode != other.mode:
            raise ModeError(f"ring mode mismatch: {self.mode} vs {other.mode}")
        return self.mode

    def __add__(self, other: "NovPoly") -> "NovPoly":
        mode = self._merge_mode(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        p = NovPoly.zero(mode)
        p.terms = out
        return p

    def __neg__(self) -> "NovPoly":
        p = NovPoly.zero(self.mode)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other: "NovPoly") -> "NovPoly":
        return self + (-other)

    def __mul__(self, other: "NovPoly") -> "NovPoly":
        mode = self._merge_mode(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        p = NovPoly.zero(mode)
        p.terms = out
        return p

    def scale(self, c) -> "NovPoly":
        c = Fraction(c)
        p = NovPoly.zero(self.mode)
        if c != 0:
            p.terms = {m: c * v for m, v in self.terms.items()}
        return p

    def truncate(self, k: int | None) -> "NovPoly":
        """Drop all terms of word length >= k (no-op for k=None)."""
        if k is None:
            return self
        p = NovPoly.zero(self.mode)
        p.terms = {m: c for m, c in self.terms.items() if word_length(m) < k}
        return p

    def localized(self) -> "NovPoly":
        p = NovPoly.zero(RLOC)
        p.terms = dict(self.terms)
        return p

    # -- misc --------------------------------------------------------

    def items_sorted(self):
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, NovPoly) and self.terms == other.terms and self.mode == other.mode

    def __hash__(self):
        return hash((self.mode, tuple(self.items_sorted())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.items_sorted():
            mono = "*".join(f"q{i + 1}^{e}" for i, e in enumerate(m) if e != 0)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    def to_json(self):
        return [{"monomial": list(m), "coeff": frac_to_json(c)} for m, c in self.items_sorted()]

    @staticmethod
    def from_json(obj, mode: str) -> "NovPoly":
        terms: dict[Monomial, Fraction] = {}
        for t in obj:
            m = tuple(t["monomial"])
            terms[m] = terms.get(m, Fraction(0)) + frac_from_json(t["coeff"])
        return NovPoly(terms, mode)


@dataclass(frozen=True)
class SphereClass:
    """A sphere class recorded through its intersection numbers with the
    divisor components and its doubled first Chern number.  Validation
    enforces 2c1 = sum_j lambda_j * (A . D_j) exactly."""

    intersections: tuple[int, ...]
    c1_doubled: int

    def validate(self, spec: RingSpec) -> None:
        if len(self.intersections) != spec.n:
            raise ValidationError("sphere class has wrong number of intersection numbers")
        weighted = sum((Fraction(e) * l for e, l in zip(self.intersections, spec.lam)), Fraction(0))
        if weighted != self.c1_doubled:
            raise ValidationError(
                f"inconsistent sphere class: sum lambda_j*(A.D_j) = {weighted} "
                f"but 2c1 = {self.c1_doubled}")

    def __add__(self, other: "SphereClass") -> "SphereClass":
        return SphereClass(tuple(a + b for a, b in zip(self.intersections, other.intersections)),
                           self.c1_doubled + other.c1_doubled)


def novikov_image(a: SphereClass, spec: RingSpec, mode: str = RLOC) -> Monomial:
    """Monomial image q^{A.D} of a sphere class under the ring homomorphism
    from the sphere-class group ring."""
    a.validate(spec)
    m = tuple(a.intersections)
    _check_mode(m, mode)
    return m


def action_of_class(a: SphereClass, spec: RingSpec) -> Fraction:
    """Symplectic area of the class: 2*kappa*c1(A) = kappa * qdegree(q^{A.D})."""
    a.validate(spec)
    return spec.kappa * qdegree(tuple(a.intersections), spec)
