"""Structural analysis of finite context logics.

The operations here answer the questions the data model poses: does a logic's
ray assignment actually realize it (exact orthogonality), which two-valued
states does it admit, which implication rules do those states enforce, and
when does the structure obstruct states (parity counting) or rays (forced
collapses in a too-small dimension).

Everything is exact and deterministic: enumeration output is sorted, rule
sets are set-valued, and no floating point is involved anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .model import (
    AbstractLogicError,
    Atom,
    Context,
    Logic,
    LogicError,
    Ray,
    _spreadsheet_label,
    inner_product,
    rays_collinear,
)


# --------------------------------------------------------------------------
# realization checking
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ContextCheck:
    """Orthogonality verdict for one context.

    ``failing_pair`` names the first member pair with a nonzero inner
    product, in member order.  ``non_maximal`` flags contexts with fewer
    members than the ambient dimension; those are legal but cannot span.
    """

    label: str
    ok: bool
    failing_pair: tuple[str, str] | None
    non_maximal: bool


@dataclass(frozen=True)
class RealizationReport:
    dimension: int
    checks: tuple[ContextCheck, ...]
    collinear_pairs: tuple[tuple[str, str], ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks) and not self.collinear_pairs

    @property
    def failures(self) -> tuple[ContextCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def verify_realization(logic: Logic) -> RealizationReport:
    """Check that the rays realize the logic: pairwise orthogonality inside
    every context, and no two distinct atoms on the same projective ray.

    Raises AbstractLogicError if any atom lacks a ray.
    """
    for atom in logic.atoms:
        if atom.ray is None:
            raise AbstractLogicError(atom.label)

    checks = []
    for ctx in logic.contexts:
        failing: tuple[str, str] | None = None
        for x, y in itertools.combinations(ctx.members, 2):
            if not inner_product(logic.ray_of(x), logic.ray_of(y)).is_zero:
                failing = (x, y)
                break
        checks.append(
            ContextCheck(
                label=ctx.label,
                ok=failing is None,
                failing_pair=failing,
                non_maximal=len(ctx.members) < logic.dimension,
            )
        )

    collinear = []
    for a, b in itertools.combinations(sorted(logic.atoms, key=lambda a: a.label), 2):
        if a.ray is not None and b.ray is not None and rays_collinear(a.ray, b.ray):
            collinear.append((a.label, b.label))

    return RealizationReport(logic.dimension, tuple(checks), tuple(collinear))


def complete_contexts(vectors: Iterable[tuple[str, Ray]], dimension: int) -> Logic:
    """Build the logic whose contexts are all maximal mutually-orthogonal
    subsets (size >= 2) of the given labeled rays.

    Context labels are assigned a, b, c, ... in lexicographic order of the
    sorted member tuples.  Inputs must be pairwise non-collinear, and every
    ray must be orthogonal to at least one other (an isolated ray cannot sit
    in any context).
    """
    pairs = list(vectors)
    if not pairs:
        raise LogicError("no vectors given")
    labels = [lbl for lbl, _ in pairs]
    if len(set(labels)) != len(labels):
        raise LogicError("vector labels must be distinct")
    rays = dict(pairs)
    for lbl, r in pairs:
        if len(r) != dimension:
            raise LogicError(
                f"ray {lbl!r} has {len(r)} components, expected {dimension}"
            )
    for x, y in itertools.combinations(labels, 2):
        if rays_collinear(rays[x], rays[y]):
            raise LogicError(f"rays {x!r} and {y!r} are collinear")

    neighbors: dict[str, set[str]] = {lbl: set() for lbl in labels}
    for x, y in itertools.combinations(labels, 2):
        if inner_product(rays[x], rays[y]).is_zero:
            neighbors[x].add(y)
            neighbors[y].add(x)

    isolated = sorted(lbl for lbl in labels if not neighbors[lbl])
    if isolated:
        raise LogicError(
            f"ray {isolated[0]!r} is orthogonal to no other ray and can join no context"
        )

    cliques: list[tuple[str, ...]] = []

    def extend(current: list[str], candidates: set[str], excluded: set[str]) -> None:
        if not candidates and not excluded:
            if len(current) >= 2:
                cliques.append(tuple(sorted(current)))
            return
        pivot_pool = candidates | excluded
        pivot = max(pivot_pool, key=lambda u: len(neighbors[u] & candidates))
        for v in sorted(candidates - neighbors[pivot]):
            extend(current + [v], candidates & neighbors[v], excluded & neighbors[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    extend([], set(labels), set())
    cliques.sort()

    atoms = tuple(Atom(lbl, rays[lbl]) for lbl in sorted(labels))
    contexts = tuple(
        Context(_spreadsheet_label(i), members) for i, members in enumerate(cliques)
    )
    logic = Logic(dimension, atoms, contexts)
    logic.validate()
    return logic


# --------------------------------------------------------------------------
# two-valued states
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoValuedState:
    """A total noncontextual {0,1} assignment with one true atom per context.

    ``labels`` is the sorted atom label tuple of the source logic and ``bits``
    the aligned values, so states from one logic compare and sort by their
    bit strings.
    """

    labels: tuple[str, ...]
    bits: tuple[int, ...]

    def value(self, label: str) -> int:
        return self.assignment[label]

    @cached_property
    def assignment(self) -> Mapping[str, int]:
        return dict(zip(self.labels, self.bits))

    @property
    def true_atoms(self) -> tuple[str, ...]:
        return tuple(l for l, b in zip(self.labels, self.bits) if b == 1)

    def bit_string(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class StateSpaceReport:
    states: tuple[TwoValuedState, ...]
    count: int
    empty: bool
    unital: bool
    separating: bool


def enumerate_states(logic: Logic) -> StateSpaceReport:
    """Enumerate every two-valued state by depth-first search over contexts.

    Branches on the undecided members of the first context that has no true
    atom yet.  Assigning 1 zeroes the atom's peers in every context it
    belongs to; a context reduced to a single unassigned member with all
    others 0 forces that member to 1.  The search is exhaustive and exact;
    states come out sorted by their bit strings.
    """
    labels = logic.labels
    index = {lbl: i for i, lbl in enumerate(labels)}
    contexts = [tuple(index[m] for m in c.members) for c in logic.contexts]
    member_of: list[list[int]] = [[] for _ in labels]
    for k, members in enumerate(contexts):
        for i in members:
            member_of[i].append(k)

    value: list[int] = [-1] * len(labels)
    trail: list[int] = []

    def assign(i: int, v: int) -> bool:
        """Set atom i to v, propagate, return False on contradiction."""
        if value[i] != -1:
            return value[i] == v
        value[i] = v
        trail.append(i)
        for k in member_of[i]:
            members = contexts[k]
            if v == 1:
                for j in members:
                    if j != i and not assign(j, 0):
                        return False
            else:
                unknown = [j for j in members if value[j] == -1]
                trues = sum(1 for j in members if value[j] == 1)
                if trues == 0:
                    if not unknown:
                        return False
                    if len(unknown) == 1 and not assign(unknown[0], 1):
                        return False
        return True

    states: list[tuple[int, ...]] = []

    def undecided_context() -> tuple[int, ...] | None:
        for members in contexts:
            if not any(value[j] == 1 for j in members):
                return members
        return None

    def search() -> None:
        members = undecided_context()
        if members is None:
            assert all(v != -1 for v in value)
            states.append(tuple(value))
            return
        for i in members:
            if value[i] == 0:
                continue
            mark = len(trail)
            if assign(i, 1):
                search()
            while len(trail) > mark:
                value[trail.pop()] = -1

    search()
    states.sort()

    packed = tuple(TwoValuedState(labels, bits) for bits in states)
    count = len(packed)
    unital = count > 0 and all(
        any(s.bits[i] == 1 for s in packed) for i in range(len(labels))
    )
    separating = count > 0 and all(
        any(s.bits[i] != s.bits[j] for s in packed)
        for i, j in itertools.combinations(range(len(labels)), 2)
    )
    return StateSpaceReport(
        states=packed,
        count=count,
        empty=count == 0,
        unital=unital,
        separating=separating,
    )


# --------------------------------------------------------------------------
# implication rules
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RuleSet:
    """Implications holding across every enumerated state.

    one_zero holds the ordered pairs (x, y) with x true forcing y false;
    one_one the ordered pairs with x true forcing y true (reflexive pairs
    included); equivalences the unordered pairs asserted in both one_one
    directions.  Implications whose antecedent never occurs are excluded
    and the atoms listed in never_true instead.  An empty state space sets
    ``explosion``: every implication would hold vacuously, so none are
    listed.
    """

    one_zero: frozenset[tuple[str, str]]
    one_one: frozenset[tuple[str, str]]
    equivalences: frozenset[frozenset[str]]
    never_true: tuple[str, ...]
    explosion: bool


def derive_rules(report: StateSpaceReport, logic: Logic) -> RuleSet:
    """Extract the one-zero and one-one/zero-zero rules from a state set."""
    labels = logic.labels
    if report.states and report.states[0].labels != labels:
        raise LogicError("state report does not belong to this logic")
    if report.empty:
        return RuleSet(
            one_zero=frozenset(),
            one_one=frozenset(),
            equivalences=frozenset(),
            never_true=tuple(labels),
            explosion=True,
        )

    n = len(labels)
    masks = [0] * n
    for s_index, state in enumerate(report.states):
        for i, bit in enumerate(state.bits):
            if bit:
                masks[i] |= 1 << s_index

    never_true = tuple(labels[i] for i in range(n) if masks[i] == 0)
    one_zero = set()
    one_one = set()
    for i, j in itertools.product(range(n), repeat=2):
        if masks[i] == 0:
            continue
        if i != j and masks[i] & masks[j] == 0:
            one_zero.add((labels[i], labels[j]))
        if masks[i] & ~masks[j] == 0:
            one_one.add((labels[i], labels[j]))
    equivalences = frozenset(
        frozenset((x, y))
        for x, y in one_one
        if x < y and (y, x) in one_one
    )
    return RuleSet(
        one_zero=frozenset(one_zero),
        one_one=frozenset(one_one),
        equivalences=equivalences,
        never_true=never_true,
        explosion=False,
    )


# --------------------------------------------------------------------------
# obstructions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ParityCertificate:
    """Counting proof of state-space emptiness.

    With every atom in an even number of contexts, summing the one-true-per
    context condition over all contexts counts every true atom an even
    number of times, so the context count must be even; an odd context
    count is therefore contradictory.
    """

    context_count: int
    atom_multiplicities: tuple[tuple[str, int], ...]


def parity_obstruction(logic: Logic) -> ParityCertificate | None:
    """Return a parity certificate if one exists, else None."""
    multiplicities: dict[str, int] = {a.label: 0 for a in logic.atoms}
    for ctx in logic.contexts:
        for m in ctx.members:
            multiplicities[m] += 1
    if len(logic.contexts) % 2 == 1 and all(
        v % 2 == 0 for v in multiplicities.values()
    ):
        return ParityCertificate(
            context_count=len(logic.contexts),
            atom_multiplicities=tuple(sorted(multiplicities.items())),
        )
    return None


@dataclass(frozen=True)
class Identification:
    """Two atoms forced onto one ray, with the clique that forces them.

    In dimension d, the witness is a set of d-1 mutually orthogonal atoms;
    the orthocomplement of their span is a single ray, so two atoms each
    orthogonal to the whole witness must share it.
    """

    pair: tuple[str, str]
    witness: tuple[str, ...]


@dataclass(frozen=True)
class CollapseReport:
    dimension: int
    forced_identifications: tuple[Identification, ...]

    @property
    def pairs(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(i.pair) for i in self.forced_identifications)


def infer_collapses(logic: Logic) -> CollapseReport:
    """Find atom pairs every realization in this dimension must identify.

    Orthogonality is taken combinatorially: x is orthogonal to y when they
    share a context.  Whenever two distinct atoms are both orthogonal to a
    common set of d-1 mutually orthogonal atoms they are forced onto the
    same ray and merged; merging can create new forced pairs, so the scan
    repeats until nothing merges.  Sound but deliberately incomplete: a
    logic may be unrealizable in dimension d without triggering any merge.
    """
    d = logic.dimension
    parent: dict[str, str] = {a.label: a.label for a in logic.atoms}

    def find(x: str) -> str:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    found: list[Identification] = []
    merged = True
    while merged:
        merged = False
        adjacency: dict[str, set[str]] = {}
        for ctx in logic.contexts:
            reps = sorted({find(m) for m in ctx.members})
            for x, y in itertools.combinations(reps, 2):
                adjacency.setdefault(x, set()).add(y)
                adjacency.setdefault(y, set()).add(x)
        nodes = sorted(adjacency)
        for witness in itertools.combinations(nodes, d - 1):
            if any(
                y not in adjacency[x]
                for x, y in itertools.combinations(witness, 2)
            ):
                continue
            commons = sorted(
                z for z in nodes
                if z not in witness and all(z in adjacency[w] for w in witness)
            )
            for x, y in itertools.combinations(commons, 2):
                rx, ry = find(x), find(y)
                if rx == ry:
                    continue
                found.append(Identification(pair=tuple(sorted((x, y))), witness=witness))
                if ry < rx:
                    rx, ry = ry, rx
                parent[ry] = rx
                merged = True

    found.sort(key=lambda ident: ident.pair)
    return CollapseReport(dimension=d, forced_identifications=tuple(found))


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

def make_star(d: int) -> Logic:
    """The d-star: one center context of d link atoms, each link extended by
    its own context of d-1 fresh atoms.  Abstract (no rays), d**2 atoms,
    d+1 contexts.
    """
    if d < 3:
        raise LogicError(f"a star needs dimension >= 3, got {d}")
    if d > 26:
        raise LogicError("the letter-based label scheme supports dimensions up to 26")
    legs = [_spreadsheet_label(i + 1) for i in range(d)]
    links = ["a" + leg for leg in legs]
    atoms: list[Atom] = [Atom(name) for name in links]
    contexts: list[Context] = [Context("a", tuple(links))]
    for leg, link in zip(legs, links):
        fresh = [f"{leg}{i}" for i in range(1, d)]
        atoms.extend(Atom(name) for name in fresh)
        contexts.append(Context(leg, (link, *fresh)))
    logic = Logic(d, tuple(atoms), tuple(contexts))
    logic.validate()
    return logic
