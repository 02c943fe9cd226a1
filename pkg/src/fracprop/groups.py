"""One-parameter unitary groups with symbols exp(i*beta*t*|xi|**alpha).

The group is handled entirely through symbols: the member at time t is the
closed form (alpha, beta*t), phases add exactly under composition, and for
t > 0 the member equals the time-1 member rescaled by t**(1/alpha).
"""

from typing import NamedTuple

import numpy as np

from .errors import DomainError, InsufficientDataError, InvalidInputError
from .operators import apply
from .symbols import ClosedForm, _power_phase_chord_sup, dilate

_EPS = np.finfo(float).eps
_SNAP_ULPS = 64


class GroupSpec:
    """Group parameters: (0, 0) is the trivial group; otherwise both nonzero.

    A pair like (0, 1) is rejected: a constant symbol other than 1 cannot sit
    inside a group of this family (its members would not stay in the family
    for all t).
    """

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        alpha = float(alpha)
        beta = float(beta)
        if not (np.isfinite(alpha) and np.isfinite(beta)):
            raise InvalidInputError("group parameters must be finite")
        if (alpha == 0.0) != (beta == 0.0):
            raise DomainError(
                f"invalid group ({alpha}, {beta}): either both parameters are "
                f"zero (trivial group) or both are nonzero"
            )
        self.alpha = alpha
        self.beta = beta

    @property
    def is_trivial(self):
        return self.beta == 0.0

    def __repr__(self):
        return f"GroupSpec(alpha={self.alpha}, beta={self.beta})"


def member(group, t):
    """Symbol of the group element at time t; t = 0 gives the constant 1."""
    return ClosedForm(group.alpha, group.beta * float(t))


def check_group_law(group, t1, t2, f, band):
    """Relative residual of T(t1+t2) f versus T(t1) T(t2) f.

    Phases add exactly, so only round-off remains: the contract is 1e-12.
    """
    lhs = apply(member(group, t1 + t2), f, band)
    rhs = apply(member(group, t1), apply(member(group, t2), f, band), band)
    num = np.linalg.norm(lhs.values - rhs.values) * np.sqrt(f.grid.dx)
    return float(num / f.norm())


def check_scaling(group, t, r_lo=None, r_hi=None):
    """Sup distance between the time-t symbol and the time-1 symbol rescaled
    by t**(1/alpha); both equal exp(i*beta*t*r**alpha) analytically."""
    if group.alpha == 0.0:
        raise DomainError("scaling identity needs a nonzero order")
    t = float(t)
    if t <= 0:
        raise DomainError(f"scaling identity is stated for t > 0, got {t}")
    if r_lo is None:
        r_lo = float(np.exp(-3.0))
    if r_hi is None:
        r_hi = float(np.exp(3.0))
    direct = member(group, t)
    rescaled = dilate(member(group, 1.0), t ** (1.0 / group.alpha))
    dcoef = direct.beta - rescaled.beta
    scale = max(abs(direct.beta), abs(rescaled.beta), 1.0)
    if abs(dcoef) <= _SNAP_ULPS * _EPS * scale:
        dcoef = 0.0
    return _power_phase_chord_sup(dcoef, group.alpha, r_lo, r_hi)


class SlopeFit(NamedTuple):
    slope: float
    residual: float


def recover_beta(samples):
    """Least-squares slope through the origin of (t, coefficient) samples.

    The group law forces the coefficient to be linear in t, so the slope is
    the group's beta; the max deviation from the line is reported alongside.
    """
    pts = [(float(t), float(b)) for t, b in samples]
    if len(pts) < 8:
        raise InsufficientDataError(f"need >= 8 samples, got {len(pts)}")
    t = np.array([p[0] for p in pts])
    b = np.array([p[1] for p in pts])
    if np.all(t == t[0]):
        raise InsufficientDataError("all sample times are identical")
    slope = float(np.dot(t, b) / np.dot(t, t))
    residual = float(np.max(np.abs(b - slope * t)))
    return SlopeFit(slope, residual)
