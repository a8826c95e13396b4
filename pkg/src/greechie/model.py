"""Exact arithmetic over the field Q(sqrt(2)) and the core logic data model.

A *logic* here is a finite pasting of contexts: an orthogonality hypergraph
whose points (atoms) may carry one-dimensional subspaces (rays) of a real
Hilbert space of the declared dimension.  Every inner product and collinearity
test is computed exactly in Q(sqrt(2)); no ray in the supported corpus needs a
larger field, and tokens outside it are rejected outright.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

SQRT2 = math.sqrt(2.0)

RationalLike = Union[int, Fraction]


class LogicError(ValueError):
    """A structural violation in a logic: bad labels, members, sizes, or rays."""


class AbstractLogicError(LogicError):
    """An operation that needs rays was applied to an atom without one."""

    def __init__(self, atom: str, message: str | None = None) -> None:
        self.atom = atom
        super().__init__(message or f"atom {atom!r} carries no ray (abstract logic)")


@dataclass(frozen=True)
class Quad:
    """An exact number a + b*sqrt(2) with rational a, b.

    Both components are `fractions.Fraction`s, so they stay in lowest terms
    with positive denominator after every operation.  Because sqrt(2) is
    irrational, a Quad is zero iff both components are zero, which is what
    makes exact orthogonality checks possible.
    """

    rat: Fraction = Fraction(0)
    coef2: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "coef2", Fraction(self.coef2))

    @classmethod
    def of(cls, rat: RationalLike = 0, coef2: RationalLike = 0) -> Quad:
        return cls(Fraction(rat), Fraction(coef2))

    @property
    def is_zero(self) -> bool:
        return self.rat == 0 and self.coef2 == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other: Quad) -> Quad:
        if not isinstance(other, Quad):
            return NotImplemented
        return Quad(self.rat + other.rat, self.coef2 + other.coef2)

    def __sub__(self, other: Quad) -> Quad:
        if not isinstance(other, Quad):
            return NotImplemented
        return Quad(self.rat - other.rat, self.coef2 - other.coef2)

    def __neg__(self) -> Quad:
        return Quad(-self.rat, -self.coef2)

    def __mul__(self, other: Quad) -> Quad:
        # (a + b*r2)(c + d*r2) = (ac + 2bd) + (ad + bc)*r2
        if not isinstance(other, Quad):
            return NotImplemented
        a, b, c, d = self.rat, self.coef2, other.rat, other.coef2
        return Quad(a * c + 2 * b * d, a * d + b * c)

    def __truediv__(self, other: Quad) -> Quad:
        if not isinstance(other, Quad):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero Quad")
        # Multiply by the conjugate: 1/(c + d*r2) = (c - d*r2)/(c^2 - 2 d^2).
        # The norm c^2 - 2 d^2 vanishes only for c = d = 0.
        c, d = other.rat, other.coef2
        norm = c * c - 2 * d * d
        return Quad(
            (self.rat * c - 2 * self.coef2 * d) / norm,
            (self.coef2 * c - self.rat * d) / norm,
        )

    def __float__(self) -> float:
        return float(self.rat) + float(self.coef2) * SQRT2

    def __str__(self) -> str:
        return format_quad(self)

    def __repr__(self) -> str:
        return f"Quad({self.rat!r}, {self.coef2!r})"


ZERO = Quad()
ONE = Quad(Fraction(1))
ROOT2 = Quad(Fraction(0), Fraction(1))


def format_quad(q: Quad) -> str:
    """Canonical component token: "0", "-3/2", "r2", "2r2", "1+1r2", "1-1r2"."""
    if q.coef2 == 0:
        return str(q.rat)
    if q.rat == 0:
        if q.coef2 == 1:
            return "r2"
        if q.coef2 == -1:
            return "-r2"
        return f"{q.coef2}r2"
    if q.coef2 > 0:
        return f"{q.rat}+{q.coef2}r2"
    return f"{q.rat}-{-q.coef2}r2"


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)(?:(?P<coef>\d+(?:/\d+)?)?(?P<r2>r2)|(?P<plain>\d+(?:/\d+)?))"
)


def parse_quad(token: str) -> Quad:
    """Parse a component token: one or two signed terms, each a rational or a
    rational times sqrt(2) (suffix "r2"; bare "r2" means 1*sqrt(2)).

    Raises ValueError for anything outside Q(sqrt(2)); other irrationals are
    deliberately unsupported.
    """
    pos = 0
    terms: list[Quad] = []
    while pos < len(token):
        m = _TERM_RE.match(token, pos)
        if m is None or m.end() == m.start():
            raise ValueError(f"invalid component token {token!r} (only Q(√2) values are supported)")
        if terms and m.group("sign") == "":
            raise ValueError(f"invalid component token {token!r}: missing '+' or '-' between terms")
        sign = -1 if m.group("sign") == "-" else 1
        try:
            if m.group("r2"):
                coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
                terms.append(Quad(Fraction(0), sign * coef))
            else:
                terms.append(Quad(sign * Fraction(m.group("plain"))))
        except ZeroDivisionError:
            raise ValueError(f"invalid component token {token!r}: zero denominator") from None
        pos = m.end()
    if not terms or len(terms) > 2:
        raise ValueError(f"invalid component token {token!r}")
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total


@dataclass(frozen=True)
class Ray:
    """A one-dimensional subspace, represented by any nonzero vector of Quads.

    Rays are unnormalized: norms such as sqrt(3) would leave Q(sqrt(2)), so
    normalization is deferred to the floating-point quantum module.
    """

    components: tuple[Quad, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise LogicError("ray needs at least one component")
        if all(c.is_zero for c in self.components):
            raise LogicError("ray must have a nonzero component")

    @classmethod
    def of(cls, *values: RationalLike | Quad | str) -> Ray:
        comps = []
        for v in values:
            if isinstance(v, Quad):
                comps.append(v)
            elif isinstance(v, str):
                comps.append(parse_quad(v))
            else:
                comps.append(Quad(Fraction(v)))
        return cls(tuple(comps))

    def __len__(self) -> int:
        return len(self.components)

    def floats(self) -> list[float]:
        return [float(c) for c in self.components]

    def __str__(self) -> str:
        return "(" + ", ".join(format_quad(c) for c in self.components) + ")"


def inner_product(r: Ray, s: Ray) -> Quad:
    """Exact Euclidean inner product; the rays are real, so no conjugation."""
    if len(r) != len(s):
        raise LogicError(f"ray length mismatch: {len(r)} vs {len(s)}")
    total = ZERO
    for a, b in zip(r.components, s.components):
        total = total + a * b
    return total


def rays_collinear(r: Ray, s: Ray) -> bool:
    """Projective equality: true iff every 2x2 minor of [r; s] vanishes."""
    if len(r) != len(s):
        raise LogicError(f"ray length mismatch: {len(r)} vs {len(s)}")
    n = len(r)
    for i in range(n):
        for j in range(i + 1, n):
            minor = r.components[i] * s.components[j] - r.components[j] * s.components[i]
            if not minor.is_zero:
                return False
    return True


@dataclass(frozen=True)
class Atom:
    """A labeled elementary proposition, optionally realized as a ray."""

    label: str
    ray: Ray | None = None


@dataclass(frozen=True)
class Context:
    """A maximal set of co-measurable propositions, kept in declared order."""

    label: str
    members: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))


@dataclass(frozen=True)
class Logic:
    """A finite pasting of contexts over a shared atom set.

    Construction does not validate; call :meth:`validate` (the parser always
    does) to enforce the structural invariants.  Geometric soundness of a
    realization -- pairwise orthogonality inside every context -- is checked
    by ``analysis.verify_realization``, which reports rather than raises, so
    that broken realizations can be examined.
    """

    dimension: int
    atoms: tuple[Atom, ...]
    contexts: tuple[Context, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "contexts", tuple(self.contexts))

    @cached_property
    def atom_map(self) -> Mapping[str, Atom]:
        return {a.label: a for a in self.atoms}

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """Atom labels in sorted order; the column order of all reports."""
        return tuple(sorted(a.label for a in self.atoms))

    def atom(self, label: str) -> Atom:
        try:
            return self.atom_map[label]
        except KeyError:
            raise LogicError(f"unknown atom {label!r}") from None

    def ray_of(self, label: str) -> Ray:
        ray = self.atom(label).ray
        if ray is None:
            raise AbstractLogicError(label)
        return ray

    @cached_property
    def contexts_of(self) -> Mapping[str, tuple[str, ...]]:
        """Atom label -> labels of the contexts containing it."""
        out: dict[str, list[str]] = {a.label: [] for a in self.atoms}
        for c in self.contexts:
            for m in c.members:
                if m in out:
                    out[m].append(c.label)
        return {k: tuple(v) for k, v in out.items()}

    @property
    def is_realized(self) -> bool:
        return all(a.ray is not None for a in self.atoms)

    def validate(self) -> None:
        """Raise LogicError on the first structural violation."""
        if self.dimension < 3:
            raise LogicError(f"dimension must be >= 3, got {self.dimension}")
        seen: set[str] = set()
        for a in self.atoms:
            if a.label in seen:
                raise LogicError(f"duplicate atom label {a.label!r}")
            seen.add(a.label)
            if a.ray is not None and len(a.ray) != self.dimension:
                raise LogicError(
                    f"atom {a.label!r}: ray has {len(a.ray)} components, expected {self.dimension}"
                )
        realized = [a for a in self.atoms if a.ray is not None]
        for i, a in enumerate(realized):
            for b in realized[i + 1 :]:
                if rays_collinear(a.ray, b.ray):  # type: ignore[arg-type]
                    raise LogicError(
                        f"atoms {a.label!r} and {b.label!r} carry the same ray; "
                        "distinct propositions must be distinct rays"
                    )
        ctx_labels: set[str] = set()
        member_sets: dict[frozenset[str], str] = {}
        used: set[str] = set()
        for c in self.contexts:
            if c.label in ctx_labels:
                raise LogicError(f"duplicate context label {c.label!r}")
            ctx_labels.add(c.label)
            if len(set(c.members)) != len(c.members):
                raise LogicError(f"context {c.label!r} repeats a member")
            if not 2 <= len(c.members) <= self.dimension:
                raise LogicError(
                    f"context {c.label!r} has {len(c.members)} members; "
                    f"expected between 2 and {self.dimension}"
                )
            for m in c.members:
                if m not in seen:
                    raise LogicError(f"context {c.label!r} references undeclared atom {m!r}")
            key = frozenset(c.members)
            if key in member_sets:
                raise LogicError(
                    f"contexts {member_sets[key]!r} and {c.label!r} have the same member set"
                )
            member_sets[key] = c.label
            used.update(c.members)
        for a in self.atoms:
            if a.label not in used:
                raise LogicError(f"atom {a.label!r} occurs in no context")


def orthogonality_edges(logic: Logic) -> set[frozenset[str]]:
    """The binary orthogonality relation induced by context membership."""
    edges: set[frozenset[str]] = set()
    for c in logic.contexts:
        for i, x in enumerate(c.members):
            for y in c.members[i + 1 :]:
                edges.add(frozenset((x, y)))
    return edges


def make_logic(
    dimension: int,
    atoms: Iterable[Atom],
    contexts: Iterable[Sequence[str] | Context],
    context_labels: Iterable[str] | None = None,
) -> Logic:
    """Convenience constructor that validates; contexts may be bare member lists."""
    ctxs: list[Context] = []
    labels = iter(context_labels) if context_labels is not None else None
    for i, c in enumerate(contexts):
        if isinstance(c, Context):
            ctxs.append(c)
        else:
            label = next(labels) if labels is not None else _spreadsheet_label(i)
            ctxs.append(Context(label, tuple(c)))
    logic = Logic(dimension, tuple(atoms), tuple(ctxs))
    logic.validate()
    return logic


def _spreadsheet_label(i: int) -> str:
    """0 -> 'a', 1 -> 'b', ..., 25 -> 'z', 26 -> 'aa', ..."""
    out = ""
    i += 1
    while i > 0:
        i, rem = divmod(i - 1, 26)
        out = chr(ord("a") + rem) + out
    return out
