"""Shared fixtures, independent oracles, and random logic generators.

The oracle enumerators here deliberately share no code or strategy with the
package: one scans all 2^n assignments, the other recurses over per-context
choices without any propagation.  Tests compare the package against them.
"""

from __future__ import annotations

import itertools
import random

import pytest

from greechie.gls import CORPUS_FILES, load_corpus
from greechie.model import Atom, Context, Logic


# --------------------------------------------------------------------------
# corpus fixtures
# --------------------------------------------------------------------------

@pytest.fixture(scope="session")
def corpus() -> dict[str, Logic]:
    return {name: load_corpus(name) for name in CORPUS_FILES}


@pytest.fixture(scope="session")
def gamma1(corpus) -> Logic:
    return corpus["gamma1.gls"]


@pytest.fixture(scope="session")
def gamma3pair(corpus) -> Logic:
    return corpus["gamma3pair.gls"]


@pytest.fixture(scope="session")
def cabello18(corpus) -> Logic:
    return corpus["cabello18.gls"]


# --------------------------------------------------------------------------
# independent state oracles
# --------------------------------------------------------------------------

def bitmask_scan(logic: Logic) -> list[tuple[int, ...]]:
    """Brute force over all 2^n assignments; n must stay small."""
    labels = sorted(a.label for a in logic.atoms)
    index = {lbl: i for i, lbl in enumerate(labels)}
    masks = [sum(1 << index[m] for m in c.members) for c in logic.contexts]
    found = []
    for bits in range(1 << len(labels)):
        if all((bits & mask).bit_count() == 1 for mask in masks):
            found.append(tuple((bits >> i) & 1 for i in range(len(labels))))
    found.sort()
    return found


def choice_recursion(logic: Logic) -> list[tuple[int, ...]]:
    """Recurse over contexts picking the true member; no propagation."""
    labels = sorted(a.label for a in logic.atoms)
    contexts = [list(c.members) for c in logic.contexts]
    states: list[tuple[int, ...]] = []
    assignment: dict[str, int] = {}

    def walk(k: int) -> None:
        if k == len(contexts):
            if len(assignment) == len(labels):
                states.append(tuple(assignment[lbl] for lbl in labels))
            return
        members = contexts[k]
        for choice in members:
            if assignment.get(choice) == 0:
                continue
            if any(assignment.get(m) == 1 for m in members if m != choice):
                continue
            touched = []
            for m in members:
                want = 1 if m == choice else 0
                if m not in assignment:
                    assignment[m] = want
                    touched.append(m)
            walk(k + 1)
            for m in touched:
                del assignment[m]

    walk(0)
    return sorted(states)


def rules_from_states(labels: list[str], states: list[tuple[int, ...]]):
    """Rule extraction straight from a state list (no bitset tricks)."""
    idx = {lbl: i for i, lbl in enumerate(labels)}
    never_true = [lbl for lbl in labels if all(s[idx[lbl]] == 0 for s in states)]
    one_zero = set()
    one_one = set()
    for x in labels:
        x_states = [s for s in states if s[idx[x]] == 1]
        if not x_states:
            continue
        for y in labels:
            if x != y and all(s[idx[y]] == 0 for s in x_states):
                one_zero.add((x, y))
            if all(s[idx[y]] == 1 for s in x_states):
                one_one.add((x, y))
    equivalences = {
        frozenset((x, y)) for x, y in one_one if x != y and (y, x) in one_one
    }
    return one_zero, one_one, equivalences, never_true


# --------------------------------------------------------------------------
# random logic generators
# --------------------------------------------------------------------------

def build_random_logic(rng: random.Random, max_atoms: int = 16) -> Logic:
    """A small random abstract logic that passes validation."""
    while True:
        n = rng.randint(4, max_atoms)
        labels = [f"x{i}" for i in range(n)]
        dim = rng.choice([3, 3, 4])
        context_count = rng.randint(2, max(2, n // 2))
        members_sets: set[frozenset[str]] = set()
        contexts = []
        for _ in range(context_count):
            size = rng.randint(2, min(dim, n))
            members = tuple(rng.sample(labels, size))
            key = frozenset(members)
            if key in members_sets or any(key <= s or s <= key for s in members_sets):
                continue
            members_sets.add(key)
            contexts.append(members)
        covered = {m for ms in contexts for m in ms}
        leftover = [lbl for lbl in labels if lbl not in covered]
        rng.shuffle(leftover)
        while leftover:
            chunk = leftover[:dim]
            leftover = leftover[dim:]
            if len(chunk) == 1:
                partner = rng.choice(sorted(covered)) if covered else None
                if partner is None:
                    break
                chunk.append(partner)
            key = frozenset(chunk)
            if key in members_sets:
                continue
            members_sets.add(key)
            contexts.append(tuple(chunk))
            covered.update(chunk)
        logic = Logic(
            dim,
            tuple(Atom(lbl) for lbl in labels),
            tuple(Context(f"c{i}", ms) for i, ms in enumerate(contexts)),
        )
        try:
            logic.validate()
        except ValueError:
            continue
        return logic


def build_random_parity_logic(rng: random.Random) -> Logic:
    """Random logic with an odd context count and every atom in exactly two
    contexts: guaranteed parity obstruction, hence no states."""
    while True:
        context_count = rng.choice([3, 5, 7])
        size = 4
        slots = [(k, i) for k in range(context_count) for i in range(size)]
        atom_count = context_count * size // 2
        rng.shuffle(slots)
        assignment: dict[tuple[int, int], int] = {}
        ok = True
        for atom_index in range(atom_count):
            first = slots.pop()
            partner_index = next(
                (
                    j
                    for j in range(len(slots) - 1, -1, -1)
                    if slots[j][0] != first[0]
                ),
                None,
            )
            if partner_index is None:
                ok = False
                break
            second = slots.pop(partner_index)
            assignment[first] = atom_index
            assignment[second] = atom_index
        if not ok:
            continue
        contexts = []
        member_sets: set[frozenset[int]] = set()
        for k in range(context_count):
            members = tuple(
                f"x{assignment[(k, i)]}" for i in range(size)
            )
            key = frozenset(members)
            if len(key) != size or key in member_sets:
                ok = False
                break
            member_sets.add(key)
            contexts.append(Context(f"c{k}", members))
        if not ok:
            continue
        logic = Logic(
            4,
            tuple(Atom(f"x{i}") for i in range(atom_count)),
            tuple(contexts),
        )
        try:
            logic.validate()
        except ValueError:
            continue
        return logic


# --------------------------------------------------------------------------
# fixture wrappers handing the helpers to tests
# --------------------------------------------------------------------------

@pytest.fixture(scope="session")
def oracle_bitmask():
    return bitmask_scan


@pytest.fixture(scope="session")
def oracle_choices():
    return choice_recursion


@pytest.fixture(scope="session")
def oracle_rules():
    return rules_from_states


@pytest.fixture(scope="session")
def random_logic():
    return build_random_logic


@pytest.fixture(scope="session")
def random_parity_logic():
    return build_random_parity_logic


# --------------------------------------------------------------------------
# acceptance criterion registry (printed in the terminal summary)
# --------------------------------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


def record_criterion(number: int, description: str, passed: bool) -> None:
    ACCEPTANCE_RESULTS[number] = (description, passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        description, passed = ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict} - {description}")
