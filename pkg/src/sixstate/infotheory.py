"""Entropies and mutual-information measures for the attacked protocol.

All logarithms are base 2 and 0 log 0 is taken as 0.  The closed forms
here are algebraic functions of the attack parameters; the definitional
ground truth is ``mutual_information`` applied to a simulated joint
distribution, and the two are cross-checked in the test suite.
"""

from math import log2, sqrt

import numpy as np

from .attack import Branch, tau1_sq_from_concurrence, weight_from_concurrence


def binary_entropy(p: float) -> float:
    """Shannon entropy of a bit with bias p, in bits."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("probability out of [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -(p * log2(p) + (1.0 - p) * log2(1.0 - p))


def split_information(a: float, b: float) -> float:
    """a log a + b log b - (a+b) log(a+b) for nonnegative masses.

    Equals -(a+b) * binary_entropy(a/(a+b)): the (negative) information
    cost of splitting a probability mass a+b into the parts a and b.
    """
    if a < 0.0 or b < 0.0:
        raise ValueError("masses must be nonnegative")
    out = 0.0
    if a > 0.0:
        out += a * log2(a)
    if b > 0.0:
        out += b * log2(b)
    if a + b > 0.0:
        out -= (a + b) * log2(a + b)
    return out


def mutual_information(joint: np.ndarray) -> float:
    """Mutual information of a 2x2 joint distribution, in bits.

    This is the definitional sum p log(p / (p_row p_col)) and serves as
    the ground truth for every closed form in this module.
    """
    p = np.asarray(joint, dtype=float)
    if p.shape != (2, 2):
        raise ValueError("joint must be 2x2")
    if p.min() < -1e-12:
        raise ValueError("joint has a negative entry")
    p = np.clip(p, 0.0, None)
    if abs(p.sum() - 1.0) > 1e-12:
        raise ValueError("joint must sum to 1")
    row = p.sum(axis=1)
    col = p.sum(axis=0)
    total = 0.0
    for a in range(2):
        for e in range(2):
            if p[a, e] > 0.0:
                total += p[a, e] * log2(p[a, e] / (row[a] * col[e]))
    return total


def i_ab(d: float) -> float:
    """Alice-Bob mutual information 1 - h(d) at sifted error rate d."""
    if not 0.0 <= d <= 1.0:
        raise ValueError("d out of [0, 1]")
    return 1.0 - binary_entropy(d)


def eve_joint(b0: float, b1: float, tau1: float, d: float) -> np.ndarray:
    """Closed-form joint distribution of Alice's bit and the probe bit.

    Row index is Alice's bit, column index the first probe qubit's bit;
    eta = d / (1 + tau1**2) is the flip weight reaching the probe's
    |0> branch.
    """
    _check_formula_args(b0, b1, tau1, d)
    f = 1.0 - d
    eta = d / (1.0 + tau1 * tau1)
    t2 = tau1 * tau1
    return 0.5 * np.array(
        [
            [f * b0 + eta, f * (1.0 - b0) + eta * t2],
            [f * b1 + eta * t2, f * (1.0 - b1) + eta],
        ]
    )


def i_ae_general(b0: float, b1: float, tau1: float, d: float) -> float:
    """Closed-form eavesdropper information from the joint's first column.

    With s = (1-d)(b0 + b1) + d and the column masses x0, x1 of the
    probe-bit-0 outcomes, returns s - s log s + split_information(x0, x1).
    On the b0 + b1 = 1 slice this equals the definitional mutual
    information of ``eve_joint``.  Off that slice the expression is kept
    verbatim for reference; it is not an information measure there and
    reaches -2 at b0 = b1 = 1, tau1 = 0, d = 0.
    """
    _check_formula_args(b0, b1, tau1, d)
    f = 1.0 - d
    eta = d / (1.0 + tau1 * tau1)
    s = f * (b0 + b1) + d
    x0 = f * b0 + eta
    x1 = f * b1 + eta * tau1 * tau1
    value = s
    if s > 0.0:
        value -= s * log2(s)
    return value + split_information(x0, x1)


BRANCH_PAIRS = {
    1: (Branch.LOWER, Branch.LOWER),
    2: (Branch.LOWER, Branch.UPPER),
    3: (Branch.UPPER, Branch.LOWER),
    4: (Branch.UPPER, Branch.UPPER),
}


def i_ae_branch(
    branch: int, c_keep0: float, c_keep1: float, tau1: float, d: float
) -> float:
    """Eavesdropper information with keep weights picked per branch.

    Branches 1..4 run through the (lower, lower), (lower, upper),
    (upper, lower) and (upper, upper) pairings of the weight roots
    b = (1 -+ sqrt(1 - c**2))/2 for the two keep concurrences.  Branch 4
    uses the same radicand as the others: a plus sign under the root
    would push the weight above 1, which no probability admits.
    """
    if branch not in BRANCH_PAIRS:
        raise ValueError("branch must be 1, 2, 3 or 4")
    br0, br1 = BRANCH_PAIRS[branch]
    b0 = weight_from_concurrence(c_keep0, br0)
    b1 = weight_from_concurrence(c_keep1, br1)
    return i_ae_general(b0, b1, tau1, d)


def i_ae_dependent(c_flip: float, c_keep: float, d: float) -> float:
    """Eavesdropper information on the complementary-weight slice.

    The keep weights are b and 1 - b with b the lower root for c_keep,
    and the flip entanglement is set by c_flip.  Written directly in
    terms of the two concurrences; equal to i_ae_general under the same
    substitutions.
    """
    if not 0.0 < c_flip <= 1.0:
        raise ValueError("flip concurrence must lie in (0, 1]")
    if not 0.0 <= c_keep <= 1.0:
        raise ValueError("keep concurrence out of [0, 1]")
    if not 0.0 <= d <= 0.5:
        raise ValueError("d out of [0, 0.5]")
    s_flip = sqrt(1.0 - c_flip * c_flip)
    s_keep = sqrt(1.0 - c_keep * c_keep)
    c2 = c_flip * c_flip
    lo = (1.0 - s_keep) + d * (c2 - (1.0 - s_keep) * (1.0 - s_flip)) / (1.0 - s_flip)
    hi = (1.0 + s_keep) + d * (
        (2.0 - c2 - 2.0 * s_flip) - (1.0 + s_keep) * (1.0 - s_flip)
    ) / (1.0 - s_flip)
    out = 1.0
    for part in (lo / 2.0, hi / 2.0):
        if part > 0.0:
            out += part * log2(part)
    return out


def i_ae_equal_concurrence(c: float, d: float) -> float:
    """Dependent-case information when both concurrences equal c.

    Collapses to 1 - h(p) with p = d + (1 - 2d)(1 - sqrt(1 - c**2))/2.
    The 1 - sqrt term is evaluated as c**2 / (1 + sqrt(1 - c**2)) so
    that c = 0 gives p = d exactly.
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError("concurrence out of [0, 1]")
    if not 0.0 <= d <= 1.0:
        raise ValueError("d out of [0, 1]")
    s = sqrt(1.0 - c * c)
    shrink = c * c / (1.0 + s)  # 1 - sqrt(1 - c**2), cancellation-free
    p = d + (1.0 - 2.0 * d) * shrink / 2.0
    return 1.0 - binary_entropy(p)


def i_ae_independent(c: float) -> float:
    """Disturbance-independent eavesdropper information 1 - h((1-s)/2).

    Arises when the keep weights copy the flip weights, which removes d
    from the joint entirely; s = sqrt(1 - c**2).  c = 0 is excluded:
    the construction needs entangled flip states.
    """
    if not 0.0 < c <= 1.0:
        raise ValueError("concurrence must lie in (0, 1]")
    s = sqrt(1.0 - c * c)
    low = c * c / (2.0 * (1.0 + s))  # (1 - sqrt(1 - c**2)) / 2
    return 1.0 - binary_entropy(low)


def _check_formula_args(b0: float, b1: float, tau1: float, d: float) -> None:
    for b in (b0, b1):
        if not 0.0 <= b <= 1.0:
            raise ValueError("weights must lie in [0, 1]")
    if not 0.0 <= tau1 <= 1.0:
        raise ValueError("tau1 must lie in [0, 1]")
    if not 0.0 <= d <= 0.5:
        raise ValueError("d out of [0, 0.5]")
