"""Graded generator bases and elements with exact coefficients.

A generator carries a (Q + Z/2)-degree, a nonnegative integer level (its
Hamiltonian weight), an exact rational action, and an optional t-decoration
of homological degree -1 (t^2 = 0 is structural: t_exp is 0 or 1 and the
t-partner of "x" is the separate generator "t.x").  The `degree` field is
the degree of the undecorated generator; `total_degree` subtracts t_exp.

Two functionals drive all filtration arguments:

    p_functional(x) = C*level + action/kappa - degree.qpart
    f_functional(x) = C*level + action/kappa

Both read the undecorated degree, so a generator and its t-partner have the
same value.  Formal divisor generators (kind j >= 1) are pinned to degree
2 - lambda_j, parity 0, level 0, action -kappa*lambda_j, which makes their
p_functional value exactly -2 for every choice of ring parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import (NovPoly, RingSpec, RPLUS, frac_from_json, frac_to_json,
                    qdegree, word_length)
from .errors import InputError, ValidationError

T_PREFIX = "t."


@dataclass(frozen=True, order=True)
class Degree:
    qpart: Fraction
    parity: int

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValidationError(f"parity must be 0 or 1, got {self.parity}")

    def add(self, other: "Degree") -> "Degree":
        return Degree(self.qpart + other.qpart, (self.parity + other.parity) % 2)

    def shift(self, q, parity_flip: int) -> "Degree":
        return Degree(self.qpart + Fraction(q), (self.parity + parity_flip) % 2)

    def key(self) -> str:
        return f"{self.qpart}|{self.parity}"


def operation_shift(d: int) -> Degree:
    """Degree shift 3-2d of a d-ary operation (always odd parity)."""
    return Degree(Fraction(3 - 2 * d), 1)


DIFFERENTIAL_SHIFT = Degree(Fraction(1), 1)


@dataclass(frozen=True)
class Generator:
    gid: str
    degree: Degree
    formal: int | None      # None for an orbit generator, else the component index j >= 1
    level: int
    action: Fraction
    t_exp: int = 0

    @property
    def is_formal(self) -> bool:
        return self.formal is not None

    @property
    def total_degree(self) -> Degree:
        if self.t_exp:
            return Degree(self.degree.qpart - 1, (self.degree.parity + 1) % 2)
        return self.degree

    @property
    def base_id(self) -> str:
        return self.gid[len(T_PREFIX):] if self.t_exp else self.gid

    def to_json(self):
        return {
            "id": self.gid,
            "qdeg": frac_to_json(self.degree.qpart),
            "parity": self.degree.parity,
            "kind": "orbit" if self.formal is None else {"formal": self.formal},
            "level": self.level,
            "action": frac_to_json(self.action),
            "t_exp": self.t_exp,
        }

    @staticmethod
    def from_json(obj) -> "Generator":
        try:
            kind = obj["kind"]
            if kind == "orbit":
                formal = None
            elif isinstance(kind, dict) and set(kind) == {"formal"}:
                formal = int(kind["formal"])
            else:
                raise InputError(f"bad generator kind {kind!r}")
            return Generator(
                gid=str(obj["id"]),
                degree=Degree(frac_from_json(obj["qdeg"]), int(obj["parity"])),
                formal=formal,
                level=int(obj["level"]),
                action=frac_from_json(obj["action"]),
                t_exp=int(obj.get("t_exp", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed generator: {exc}") from exc


def p_functional(x: Generator, spec: RingSpec) -> Fraction:
    return spec.c_const * x.level + x.action / spec.kappa - x.degree.qpart


def f_functional(x: Generator, spec: RingSpec) -> Fraction:
    return spec.c_const * x.level + x.action / spec.kappa


def sh_index_from_cap(capped_index, u_dot_dlambda) -> Fraction:
    return Fraction(capped_index) + Fraction(u_dot_dlambda)


def sh_action_from_cap(capped_action, u_dot_dlambda, spec: RingSpec) -> Fraction:
    return Fraction(capped_action) + spec.kappa * Fraction(u_dot_dlambda)


class GradedBasis:
    """Ordered list of generators.  The list order is the canonical order
    used for storing structure constants and for all deterministic output."""

    def __init__(self, gens, spec: RingSpec | None = None,
                 parity_consistency: bool = False):
        self.gens: tuple[Generator, ...] = tuple(gens)
        self.spec = spec
        self.by_id: dict[str, Generator] = {}
        self._index: dict[str, int] = {}
        for i, g in enumerate(self.gens):
            if g.gid in self.by_id:
                raise ValidationError(f"duplicate generator id {g.gid!r}")
            self.by_id[g.gid] = g
            self._index[g.gid] = i
        self._validate(parity_consistency)

    def _validate(self, parity_consistency: bool) -> None:
        for g in self.gens:
            if g.t_exp not in (0, 1):
                raise ValidationError(f"{g.gid}: t_exp must be 0 or 1")
            if g.t_exp != (1 if g.gid.startswith(T_PREFIX) else 0):
                raise ValidationError(
                    f"{g.gid}: t-decorated generators must be named '{T_PREFIX}<base>' "
                    f"and undecorated ones must not be")
            if g.t_exp:
                base = self.by_id.get(g.base_id)
                if base is None:
                    raise ValidationError(f"{g.gid}: missing undecorated partner {g.base_id!r}")
                if (base.degree, base.formal, base.level, base.action) != \
                        (g.degree, g.formal, g.level, g.action):
                    raise ValidationError(
                        f"{g.gid}: t-partner data disagrees with {g.base_id!r}")
            if g.is_formal:
                if g.level != 0:
                    raise ValidationError(f"{g.gid}: formal generators have level 0")
                if self.spec is not None:
                    j = g.formal
                    if not (1 <= j <= self.spec.n):
                        raise ValidationError(f"{g.gid}: formal index {j} out of range")
                    lam = self.spec.lam[j - 1]
                    if g.degree != Degree(2 - lam, 0):
                        raise ValidationError(
                            f"{g.gid}: formal generator must have degree {2 - lam}, parity 0")
                    if g.action != -self.spec.kappa * lam:
                        raise ValidationError(
                            f"{g.gid}: formal generator must have action {-self.spec.kappa * lam}")
            else:
                if g.level < 1:
                    raise ValidationError(f"{g.gid}: orbit generators have level >= 1")
                if parity_consistency and g.degree.qpart.denominator == 1:
                    if g.degree.qpart % 2 != g.degree.parity:
                        raise ValidationError(
                            f"{g.gid}: parity {g.degree.parity} inconsistent with "
                            f"integer degree {g.degree.qpart}")

    def index(self, gid: str) -> int:
        try:
            return self._index[gid]
        except KeyError:
            raise ValidationError(f"unknown generator id {gid!r}") from None

    def __contains__(self, gid: str) -> bool:
        return gid in self.by_id

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def canonical(self, gids) -> tuple[str, ...]:
        return tuple(sorted(gids, key=self.index))

    def formal_gens(self, t_exp: int | None = 0):
        return [g for g in self.gens
                if g.is_formal and (t_exp is None or g.t_exp == t_exp)]

    def to_json(self):
        return [g.to_json() for g in self.gens]


def _merge_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Element:
    """Finite combination sum_x p_x(q) * x of generators with polynomial
    coefficients.  `trunc` tags the word-length order below which the
    element is exact (None = exact at every order)."""

    __slots__ = ("basis", "terms", "trunc")

    def __init__(self, basis: GradedBasis, terms=None, trunc: int | None = None):
        self.basis = basis
        clean: dict[str, NovPoly] = {}
        for gid, poly in (terms or {}).items():
            if gid not in basis:
                raise ValidationError(f"unknown generator id {gid!r} in element")
            if not poly.is_zero():
                clean[gid] = poly
        self.terms = clean
        self.trunc = trunc

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(basis: GradedBasis, trunc: int | None = None) -> "Element":
        return Element(basis, {}, trunc)

    @staticmethod
    def from_gen(basis: GradedBasis, gid: str, poly: NovPoly | None = None,
                 coeff=1, mode: str = RPLUS) -> "Element":
        if poly is None:
            n = basis.spec.n if basis.spec is not None else 0
            poly = NovPoly.const(n, coeff, mode)
        return Element(basis, {gid: poly})

    # -- linear structure --------------------------------------------

    def _same_basis(self, other: "Element") -> None:
        if self.basis is not other.basis:
            raise ValidationError("elements live over different bases")

    def __add__(self, other: "Element") -> "Element":
        self._same_basis(other)
        out = dict(self.terms)
        for gid, poly in other.terms.items():
            s = out.get(gid)
            s = poly if s is None else s + poly
            if s.is_zero():
                out.pop(gid, None)
            else:
                out[gid] = s
        e = Element.zero(self.basis, _merge_trunc(self.trunc, other.trunc))
        e.terms = out
        return e

    def __neg__(self) -> "Element":
        e = Element.zero(self.basis, self.trunc)
        e.terms = {gid: -p for gid, p in self.terms.items()}
        return e

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = Fraction(c)
        e = Element.zero(self.basis, self.trunc)
        if c != 0:
            e.terms = {gid: p.scale(c) for gid, p in self.terms.items()}
        return e

    def scale_poly(self, poly: NovPoly) -> "Element":
        e = Element.zero(self.basis, self.trunc)
        for gid, p in self.terms.items():
            s = p * poly
            if not s.is_zero():
                e.terms[gid] = s
        return e

    def truncate(self, k: int | None) -> "Element":
        e = Element.zero(self.basis, _merge_trunc(self.trunc, k))
        for gid, p in self.terms.items():
            s = p.truncate(k)
            if not s.is_zero():
                e.terms[gid] = s
        return e

    # -- queries -----------------------------------------------------

    def is_zero(self, mod_words: int | None = None) -> bool:
        return all(p.is_zero(mod_words) for p in self.terms.values())

    def term_count(self, mod_words: int | None = None) -> int:
        n = 0
        for p in self.terms.values():
            for m in p.terms:
                if mod_words is None or word_length(m) < mod_words:
                    n += 1
        return n

    def filtration_weight(self) -> int | None:
        """Minimal word length over all terms; None for the zero element."""
        best = None
        for p in self.terms.values():
            w = p.word_min()
            if w is not None and (best is None or w < best):
                best = w
        return best

    def degree(self) -> Degree | None:
        """Total degree of a homogeneous element (generator total degree plus
        monomial degree); None if zero; error if inhomogeneous."""
        spec = self.basis.spec
        found: Degree | None = None
        for gid, poly in self.items_sorted():
            g = self.basis.by_id[gid]
            for m, _ in poly.items_sorted():
                qd = qdegree(m, spec) if spec is not None else Fraction(0)
                d = g.total_degree.shift(qd, 0)
                if found is None:
                    found = d
                elif found != d:
                    raise ValidationError(
                        f"inhomogeneous element: degree {found} vs {d} at {gid}")
        return found

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: self.basis.index(kv[0]))

    def restrict(self, keep) -> "Element":
        keep = set(keep)
        e = Element.zero(self.basis, self.trunc)
        e.terms = {gid: p for gid, p in self.terms.items() if gid in keep}
        return e

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and self.basis is other.basis
                and self.terms == other.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "<0>"
        return " + ".join(f"({p!r})*{gid}" for gid, p in self.items_sorted())

    def to_json(self):
        return [{"gen": gid, "terms": p.to_json()} for gid, p in self.items_sorted()]

    @staticmethod
    def from_json(obj, basis: GradedBasis, mode: str = RPLUS, trunc=None) -> "Element":
        terms: dict[str, NovPoly] = {}
        for t in obj:
            gid = t["gen"]
            poly = NovPoly.from_json(t["terms"], mode)
            terms[gid] = terms.get(gid, NovPoly.zero(mode)) + poly
        return Element(basis, terms, trunc)


def q_times_gen(basis: GradedBasis, j: int, gid: str, coeff=1) -> Element:
    """The element coeff * q_j * x, a building block of tautological
    deformation elements."""
    spec = basis.spec
    exps = [0] * spec.n
    exps[j - 1] = 1
    return Element(basis, {gid: NovPoly.monomial(exps, RPLUS, coeff)})
