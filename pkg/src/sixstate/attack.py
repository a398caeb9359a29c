"""Construction of the entangled-probe intercept attack.

The eavesdropper couples a two-qubit probe, prepared in |00>, to each
transmitted qubit.  With probability weight F = 1 - d the signal bit is
kept and the probe lands in a "keep" state supported on {|01>, |10>};
with weight d the bit is flipped and the probe lands in a "flip" state
supported on {|00>, |11>}:

    U |0>|00> = sqrt(F) |0>|keep0> + sqrt(d) |1>|flip0>
    U |1>|00> = sqrt(F) |1>|keep1> + sqrt(d) |0>|flip1>

The flip states share one entanglement parameter tau1; the keep states
carry weights b0, b1 and free phases.  Demanding the same disturbance d
for all six signal states of the three bases pins the real part of the
keep-state overlap to (1 - 2d)/(1 - d), which is solvable only when the
weights leave enough overlap in reach.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .qubits import complete_to_unitary, ket, tensor

RESIDUAL_TOL = 1e-10

TWO_PI = 2.0 * np.pi


class InfeasibleAttackError(ValueError):
    """Raised when no phase assignment can meet the equal-disturbance constraint."""


class Branch(Enum):
    """Which root of the weight-concurrence relation 4 b (1-b) = c**2 to take."""

    LOWER = "lower"  # b <= 1/2
    UPPER = "upper"  # b >= 1/2


def flip_ancillas(tau1: float) -> tuple[np.ndarray, np.ndarray]:
    """Probe states attached to a flipped bit, entangled for tau1 > 0.

    Both live in span{|00>, |11>} and are orthogonal by construction:
    flip0 = (|00> - tau1 |11>) / sqrt(1 + tau1**2) and flip1 the
    orthogonal combination (tau1 |00> + |11>) / sqrt(1 + tau1**2).
    """
    if not 0.0 <= tau1 <= 1.0:
        raise ValueError("tau1 must lie in [0, 1]")
    norm = np.sqrt(1.0 + tau1 * tau1)
    flip0 = (ket(0, 0) - tau1 * ket(1, 1)) / norm
    flip1 = (tau1 * ket(0, 0) + ket(1, 1)) / norm
    return flip0, flip1


def keep_ancillas(
    b0: float,
    b1: float,
    phase0_01: float = 0.0,
    phase0_10: float = 0.0,
    phase1_01: float = 0.0,
    phase1_10: float = 0.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Probe states attached to a kept bit, supported on {|01>, |10>}.

    b0 and b1 are the |01> weights; the four phases multiply the |01>
    and |10> amplitudes of each state.
    """
    for b in (b0, b1):
        if not 0.0 <= b <= 1.0:
            raise ValueError("weights must lie in [0, 1]")
    keep0 = np.sqrt(b0) * np.exp(1j * phase0_01) * ket(0, 1) + np.sqrt(
        1.0 - b0
    ) * np.exp(1j * phase0_10) * ket(1, 0)
    keep1 = np.sqrt(b1) * np.exp(1j * phase1_01) * ket(0, 1) + np.sqrt(
        1.0 - b1
    ) * np.exp(1j * phase1_10) * ket(1, 0)
    return keep0, keep1


@dataclass(frozen=True)
class AncillaSet:
    """The four probe states entering the attack."""

    keep0: np.ndarray
    keep1: np.ndarray
    flip0: np.ndarray
    flip1: np.ndarray

    def __iter__(self):
        return iter((self.keep0, self.keep1, self.flip0, self.flip1))


@dataclass(frozen=True)
class AttackParameters:
    """Full parameterization of one attack unitary.

    d is the disturbance, tau1 the flip-state entanglement parameter,
    b0/b1 the keep-state weights and the remaining fields the keep-state
    phases in radians (reduced to [0, 2 pi)).
    """

    d: float
    tau1: float
    b0: float
    b1: float
    phase0_01: float = 0.0
    phase0_10: float = 0.0
    phase1_01: float = 0.0
    phase1_10: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.d < 0.5:
            raise ValueError("d must lie in (0, 0.5)")
        if not 0.0 <= self.tau1 <= 1.0:
            raise ValueError("tau1 must lie in [0, 1]")
        for b in (self.b0, self.b1):
            if not 0.0 <= b <= 1.0:
                raise ValueError("b0 and b1 must lie in [0, 1]")
        for name in ("phase0_01", "phase0_10", "phase1_01", "phase1_10"):
            object.__setattr__(self, name, float(getattr(self, name)) % TWO_PI)

    @property
    def fidelity(self) -> float:
        return 1.0 - self.d

    @classmethod
    def solved(cls, d: float, tau1: float, b0: float, b1: float) -> "AttackParameters":
        """Parameters with phases solving the equal-disturbance constraint."""
        theta = solve_phases(d, b0, b1)
        return cls(d=d, tau1=tau1, b0=b0, b1=b1, phase1_01=theta, phase1_10=theta)

    def ancillas(self) -> AncillaSet:
        keep0, keep1 = keep_ancillas(
            self.b0,
            self.b1,
            self.phase0_01,
            self.phase0_10,
            self.phase1_01,
            self.phase1_10,
        )
        flip0, flip1 = flip_ancillas(self.tau1)
        return AncillaSet(keep0=keep0, keep1=keep1, flip0=flip0, flip1=flip1)


def concurrence(state: np.ndarray) -> float:
    """Concurrence 2 |a d - b c| of a pure two-qubit state (a, b, c, d)."""
    v = np.asarray(state, dtype=complex)
    if v.shape != (4,):
        raise ValueError("concurrence expects a two-qubit state vector")
    return float(2.0 * abs(v[0] * v[3] - v[1] * v[2]))


def tau1_sq_from_concurrence(c: float) -> float:
    """Invert the flip-state concurrence 2 tau1 / (1 + tau1**2) = c.

    Returns the root with tau1 <= 1; the other root is its reciprocal
    squared and always exceeds 1.  c = 0 has no admissible preimage.
    """
    if not 0.0 < c <= 1.0:
        raise ValueError("concurrence must lie in (0, 1]")
    s = np.sqrt(1.0 - c * c)
    # stable form of (2 - c**2 - 2*sqrt(1 - c**2)) / c**2
    return float((c / (1.0 + s)) ** 2)


def weight_from_concurrence(c: float, branch: Branch) -> float:
    """Keep-state weight b with 4 b (1 - b) = c**2 on the chosen branch."""
    if not 0.0 <= c <= 1.0:
        raise ValueError("concurrence must lie in [0, 1]")
    s = np.sqrt(1.0 - c * c)
    if branch is Branch.LOWER:
        return float((1.0 - s) / 2.0)
    return float((1.0 + s) / 2.0)


def concurrence_from_weight(b: float) -> float:
    """Concurrence 2 sqrt(b (1 - b)) of a keep state with |01> weight b."""
    if not 0.0 <= b <= 1.0:
        raise ValueError("weight must lie in [0, 1]")
    return float(2.0 * np.sqrt(b * (1.0 - b)))


def equal_disturbance_target(d: float) -> float:
    """Required real part of the keep-state overlap, (1 - 2d)/(1 - d)."""
    if not 0.0 < d < 0.5:
        raise ValueError("d must lie in (0, 0.5)")
    return (1.0 - 2.0 * d) / (1.0 - d)


def phase_reach(b0: float, b1: float) -> float:
    """Largest achievable Re<keep1|keep0> over all phase choices."""
    return float(np.sqrt(b0 * b1) + np.sqrt((1.0 - b0) * (1.0 - b1)))


def is_feasible(d: float, b0: float, b1: float) -> bool:
    """Whether some phase assignment meets the equal-disturbance constraint."""
    return phase_reach(b0, b1) >= equal_disturbance_target(d)


def solve_phases(d: float, b0: float, b1: float) -> float:
    """Common phase theta for keep1 putting Re<keep1|keep0> on target.

    keep0 is kept real and both keep1 amplitudes receive the same phase,
    so the overlap is reach * exp(-i theta) and the constraint reduces
    to cos(theta) = target / reach.
    """
    target = equal_disturbance_target(d)
    reach = phase_reach(b0, b1)
    if reach < target:
        raise InfeasibleAttackError(
            f"phase reach {reach:.6f} below equal-disturbance target {target:.6f} "
            f"(d={d}, b0={b0}, b1={b1})"
        )
    return float(np.arccos(min(target / reach, 1.0)))


def attack_images(d: float, ancillas: AncillaSet) -> tuple[np.ndarray, np.ndarray]:
    """Images of |0>|00> and |1>|00> under the attack, as 8-vectors."""
    if not 0.0 < d < 0.5:
        raise ValueError("d must lie in (0, 0.5)")
    root_f = np.sqrt(1.0 - d)
    root_d = np.sqrt(d)
    img0 = root_f * tensor(ket(0), ancillas.keep0) + root_d * tensor(
        ket(1), ancillas.flip0
    )
    img1 = root_f * tensor(ket(1), ancillas.keep1) + root_d * tensor(
        ket(0), ancillas.flip1
    )
    return img0, img1


def build_attack_operator(params: AttackParameters) -> np.ndarray:
    """8x8 unitary acting on (signal, probe, probe).

    Columns 0 and 4 are the images of |0>|00> and |1>|00>; the rest is a
    deterministic Gram-Schmidt completion.  The action on other probe
    states is irrelevant because the probe always starts in |00>.
    """
    img0, img1 = attack_images(params.d, params.ancillas())
    if abs(np.vdot(img0, img1)) > RESIDUAL_TOL:
        raise ValueError("attack images are not orthogonal; ancilla algebra broken")
    return complete_to_unitary([img0, img1], 8, positions=(0, 4))


@dataclass(frozen=True)
class ConstraintReport:
    """Residuals of the four attack constraints, all zero for a valid attack.

    unitarity_residual: |<keep0|flip1> + <flip0|keep1>| (cross-image terms)
    flip_orthogonality_residual: |<flip0|flip1>|
    keep_overlap_residual: |Re<keep1|keep0> - (1 - 2d)/(1 - d)|
    cross_residual: |<keep0|flip0> + conj(<keep1|flip1>)|
    """

    unitarity_residual: float
    flip_orthogonality_residual: float
    keep_overlap_residual: float
    cross_residual: float
    tolerance: float = field(default=RESIDUAL_TOL)

    @property
    def feasible(self) -> bool:
        return (
            max(
                self.unitarity_residual,
                self.flip_orthogonality_residual,
                self.keep_overlap_residual,
                self.cross_residual,
            )
            < self.tolerance
        )

    def lines(self) -> list[str]:
        return [
            f"unitarity residual          {self.unitarity_residual:.3e}",
            f"flip orthogonality residual {self.flip_orthogonality_residual:.3e}",
            f"keep overlap residual       {self.keep_overlap_residual:.3e}",
            f"cross residual              {self.cross_residual:.3e}",
            f"feasible                    {self.feasible}",
        ]


def validate_constraints(ancillas: AncillaSet, d: float) -> ConstraintReport:
    """Evaluate all attack-constraint residuals for the given probe states."""
    target = equal_disturbance_target(d)
    keep0, keep1, flip0, flip1 = ancillas
    return ConstraintReport(
        unitarity_residual=float(abs(np.vdot(keep0, flip1) + np.vdot(flip0, keep1))),
        flip_orthogonality_residual=float(abs(np.vdot(flip0, flip1))),
        keep_overlap_residual=float(abs(np.real(np.vdot(keep1, keep0)) - target)),
        cross_residual=float(
            abs(np.vdot(keep0, flip0) + np.conj(np.vdot(keep1, flip1)))
        ),
    )
