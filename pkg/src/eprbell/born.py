"""Independent wave-function route to the singlet pair probabilities.

Probabilities come from the quadratic form <psi| P_a(alpha) x P_b(beta) |psi>
with P_n(s) = (I + s * n.sigma) / 2 and the singlet amplitudes
(0, 1, -1, 0)/sqrt(2) over the (up-up, up-down, down-up, down-down) basis.
This route shares no code with the closed-form pair tables and is used to
cross-validate them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .geometry import Direction

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class SingletState:
    """Two-spin state with amplitudes (0, 1, -1, 0)/sqrt(2) up to a global phase."""

    amplitudes: np.ndarray = field(
        default_factory=lambda: np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2.0)
    )

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (4,):
            raise InvalidInputError(f"state needs 4 amplitudes, got shape {amp.shape}")
        if abs(np.vdot(amp, amp).real - 1.0) > 1e-12:
            raise InvalidInputError("state is not normalized")
        reference = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2.0)
        overlap = abs(np.vdot(reference, amp))
        if abs(overlap - 1.0) > 1e-9:
            raise InvalidInputError("amplitudes are not the singlet state up to a phase")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    def with_phase(self, phase: float) -> "SingletState":
        return SingletState(self.amplitudes * np.exp(1j * phase))


def spin_projector(n: Direction, s: int) -> np.ndarray:
    """2x2 projector (I + s * n.sigma) / 2 onto spin s along direction n."""
    if s not in (1, -1):
        raise InvalidInputError(f"spin value must be +1 or -1, got {s}")
    n_sigma = n.x * _SIGMA_X + n.y * _SIGMA_Y + n.z * _SIGMA_Z
    return 0.5 * (_I2 + s * n_sigma)


def singlet_pair_prob(
    a: Direction, b: Direction, alpha: int, beta: int, state: SingletState | None = None
) -> float:
    """Born-rule probability of outcomes (alpha, beta) at orientations (a, b)."""
    psi = (state or SingletState()).amplitudes
    op = np.kron(spin_projector(a, alpha), spin_projector(b, beta))
    value = np.vdot(psi, op @ psi)
    if abs(value.imag) > 1e-12:
        raise RuntimeError(f"probability has imaginary residue {value.imag}")
    return float(value.real)
