"""Quantum joint probabilities for two particles in a maximally entangled state.

Floating point lives here and only here: unit normalization leaves the exact
field (norms like sqrt(3) are not in Q(sqrt(2))), so rays are converted to
float unit vectors and probabilities carry a 1e-9 tolerance.

Convention, fixed once: the two-particle state is psi = (1/sqrt(d)) sum_i
|i>|i>, held as the d x d amplitude matrix eye(d)/sqrt(d).  For real rays
this state predicts prob(a and b) = (a.b)^2 / d, perfectly correlating equal
rays; any singlet-type state used in spin language equals it up to a local
basis change that leaves every real-ray probability unchanged.  The engine
computes probabilities by explicit tensor contraction, never from the closed
formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .analysis import RuleSet
from .model import AbstractLogicError, Context, Logic, LogicError, Ray

PROB_TOL = 1e-9

ClassicalBound = Literal["zero", "equal", "unconstrained"]


@dataclass(frozen=True, eq=False)
class EntangledPair:
    """The maximally entangled two-particle state in dimension d >= 3."""

    dimension: int

    def __post_init__(self) -> None:
        if self.dimension < 3:
            raise LogicError(
                f"entangled pair needs dimension >= 3, got {self.dimension}"
            )

    @property
    def amplitudes(self) -> np.ndarray:
        """Amplitude matrix psi[i, j] = <i j | psi> = delta_ij / sqrt(d)."""
        return np.eye(self.dimension) / np.sqrt(self.dimension)


@dataclass(frozen=True)
class JointPrediction:
    """Probabilities for one ray pair, with the classical rule they face."""

    prob_both: float
    marginal_left: float
    marginal_right: float
    classical_bound: ClassicalBound

    def __post_init__(self) -> None:
        low = -PROB_TOL
        high = min(self.marginal_left, self.marginal_right) + PROB_TOL
        if not (low <= self.prob_both <= high):
            raise LogicError(
                f"joint probability {self.prob_both} outside [0, min(marginals)]"
            )


def unit_vector(ray: Ray | Sequence[float], dimension: int) -> np.ndarray:
    """Float unit vector for a ray; rejects zero input and wrong length."""
    if isinstance(ray, Ray):
        values = np.array(ray.floats(), dtype=float)
    else:
        values = np.asarray(ray, dtype=float)
    if values.shape != (dimension,):
        raise LogicError(
            f"ray has {values.shape[0] if values.ndim == 1 else '?'} components, "
            f"expected {dimension}"
        )
    norm = float(np.linalg.norm(values))
    if norm < 1e-12:
        raise LogicError("cannot normalize a zero ray")
    return values / norm


def joint_probability(
    pair: EntangledPair,
    a: Ray | Sequence[float],
    b: Ray | Sequence[float],
    classical_bound: ClassicalBound = "unconstrained",
) -> JointPrediction:
    """Probability that both sides give 1 when side one measures along a and
    side two along b, by contracting P_a (x) P_b against the state.
    """
    d = pair.dimension
    ua = unit_vector(a, d)
    ub = unit_vector(b, d)
    proj_a = np.outer(ua, ua)
    proj_b = np.outer(ub, ub)
    identity = np.eye(d)
    vec = pair.amplitudes.reshape(d * d)

    def expectation(left: np.ndarray, right: np.ndarray) -> float:
        return float(vec @ np.kron(left, right) @ vec)

    return JointPrediction(
        prob_both=expectation(proj_a, proj_b),
        marginal_left=expectation(proj_a, identity),
        marginal_right=expectation(identity, proj_b),
        classical_bound=classical_bound,
    )


@dataclass(frozen=True)
class FalsificationRow:
    """One classical rule against the quantum prediction for its pair."""

    kind: Literal["one-zero", "equivalence"]
    pair: tuple[str, str]
    classical: float
    quantum: float
    violated: bool


def falsification_report(
    logic: Logic,
    rules: RuleSet,
    pair: EntangledPair,
) -> tuple[FalsificationRow, ...]:
    """Confront every derived rule with the entangled-state prediction.

    A one-zero rule (x, y) classically forbids both outcomes occurring, so
    its classical joint probability is 0; quantum gives prob_both(x, y).  An
    equivalence {x, y} classically forbids x occurring without y, so the
    quantum figure is P(x and not y) = marginal(x) - prob_both(x, y).  A row
    is violated when the quantum value exceeds the tolerance.
    """
    if pair.dimension != logic.dimension:
        raise LogicError(
            f"entangled pair has dimension {pair.dimension}, "
            f"logic has {logic.dimension}"
        )
    rows: list[FalsificationRow] = []
    for x, y in sorted(rules.one_zero):
        prediction = joint_probability(
            pair, logic.ray_of(x), logic.ray_of(y), classical_bound="zero"
        )
        rows.append(
            FalsificationRow(
                kind="one-zero",
                pair=(x, y),
                classical=0.0,
                quantum=prediction.prob_both,
                violated=prediction.prob_both > PROB_TOL,
            )
        )
    for x, y in sorted(tuple(sorted(e)) for e in rules.equivalences):
        prediction = joint_probability(
            pair, logic.ray_of(x), logic.ray_of(y), classical_bound="equal"
        )
        mismatch = prediction.marginal_left - prediction.prob_both
        rows.append(
            FalsificationRow(
                kind="equivalence",
                pair=(x, y),
                classical=0.0,
                quantum=mismatch,
                violated=mismatch > PROB_TOL,
            )
        )
    return tuple(rows)


def context_completeness(
    pair: EntangledPair,
    logic: Logic,
    context: Context | str,
    b: Ray | Sequence[float],
) -> float:
    """Sum of joint probabilities of a full context against a fixed ray.

    The context must have exactly d members (a complete orthogonal system);
    the sum then equals the marginal of b, 1/d, up to float error.
    """
    if isinstance(context, str):
        matches = [c for c in logic.contexts if c.label == context]
        if not matches:
            raise LogicError(f"no context labeled {context!r}")
        context = matches[0]
    if len(context.members) != pair.dimension:
        raise LogicError(
            f"context {context.label!r} has {len(context.members)} members; "
            f"completeness needs exactly {pair.dimension}"
        )
    return sum(
        joint_probability(pair, logic.ray_of(m), b).prob_both
        for m in context.members
    )
