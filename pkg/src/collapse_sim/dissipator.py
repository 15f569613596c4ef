"""The weighted jump-operator family that drives pointer alignment, and its
closed-form matrix-element action.

Each jump operator is an off-diagonal matrix unit ``|r><s|`` on the combined
flat basis, weighted by ``gamma * omega * q_r / q_s`` with ``q`` the flat
rate-table entries. The term moves population from ``s`` into ``r``; the
stationary state of the family is the diagonal of the squared rates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .model import RateTable
from .states import _as_matrix, _readonly


@dataclass(frozen=True, eq=False)
class DissipatorSpec:
    """Weighted jump-operator family: ``terms`` holds (weight, jump) pairs."""

    dim: int
    terms: tuple[tuple[float, np.ndarray], ...]

    @property
    def max_weight(self) -> float:
        """Largest coupling weight; bounds the time step of explicit steppers."""
        return max(w for w, _ in self.terms) if self.terms else 0.0


def lindblad_jump_family(rates: RateTable, gamma: float, omega: float) -> DissipatorSpec:
    """Build the full family of ``n^2 - n`` off-diagonal jump terms.

    For every ordered flat pair (r, s) with r != s the term has weight
    ``gamma * omega * q_r / q_s`` and jump operator ``|r><s|``.
    """
    q = rates.flat
    if np.any(q <= 0):
        raise ValidationError("rate table entries must be strictly positive")
    n = q.size
    scale = float(gamma) * float(omega)
    terms = []
    for r in range(n):
        for s in range(n):
            if r == s:
                continue
            jump = np.zeros((n, n), dtype=complex)
            jump[r, s] = 1.0
            terms.append((scale * q[r] / q[s], _readonly(jump)))
    return DissipatorSpec(dim=n, terms=tuple(terms))


def apply_dissipator(spec: DissipatorSpec, rho) -> np.ndarray:
    """Generic jump-family action: sum of w * (L rho L+ - (L+L rho + rho L+L)/2).

    The output is a rate, not a state: Hermitian and traceless for Hermitian
    input, zero trace regardless of the input trace's value being 1.
    """
    m = _as_matrix(rho)
    if m.shape != (spec.dim, spec.dim):
        raise ValidationError(f"matrix shape {m.shape} does not match dimension {spec.dim}")
    out = np.zeros_like(m)
    for w, jump in spec.terms:
        jd = jump.conj().T
        jdj = jd @ jump
        out += w * (jump @ m @ jd - 0.5 * (jdj @ m + m @ jdj))
    return out


def apply_dissipator_closed_form(rates: RateTable, gamma: float, omega: float, rho) -> np.ndarray:
    """Matrix-element form of the jump-family action, without building terms.

    Diagonal entries gain ``q_a * sum_{s != a} rho_ss / q_s`` and every entry
    (a, b) decays at half the summed outflow rates of a and b, where the
    outflow of state a is ``sum_{s != a} q_s / q_a``. Each sum skips the
    element's own index; with that convention the result is algebraically
    identical to :func:`apply_dissipator` on the full jump family.
    """
    q = rates.flat
    m = _as_matrix(rho)
    n = q.size
    if m.shape != (n, n):
        raise ValidationError(f"matrix shape {m.shape} does not match dimension {n}")
    total = q.sum()
    outflow = (total - q) / q
    diag = np.diagonal(m)
    gain = q * ((diag / q).sum() - diag / q)
    out = (-0.5) * (outflow[:, None] + outflow[None, :]) * m
    out[np.diag_indices(n)] += gain
    return float(gamma) * float(omega) * out
