"""Exact probability calculus on dense finite-alphabet joints.

Every quantity is computed from a single dense tensor holding the joint
probability mass, and all entropies and mutual informations are in bits
(base-2 logarithms).  The conventions used throughout:

- ``0 * log 0 = 0``; zero-mass cells never contribute.
- Conditioning on a zero-probability event raises
  :class:`~securebc.errors.DegenerateEventError` instead of producing NaN.
- Results that are nonnegative by theory are clamped at 0 so floating-point
  residue never leaks a negative rate downstream.

All operations are pure functions of immutable inputs; instances are safe
to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import CapacityError, DegenerateEventError, DomainError

# Dense-tensor ceiling: alphabets are abstract, desk scale is not.
MAX_CELLS = 10_000_000

# A stored mass function must sum to 1 within this.
MASS_TOL = 1e-12


@dataclass(frozen=True)
class Variable:
    """A named random variable over a finite alphabet ``{0, ..., cardinality-1}``."""

    name: str
    cardinality: int

    def __post_init__(self):
        if not self.name:
            raise DomainError("variable name must be a nonempty string")
        if int(self.cardinality) < 1:
            raise DomainError(
                f"variable {self.name!r}: cardinality must be >= 1, got {self.cardinality}"
            )


def _plain_entropy(tensor: np.ndarray) -> float:
    p = tensor.reshape(-1)
    nz = p > 0.0
    if not nz.any():
        return 0.0
    p = p[nz]
    return float(-(p * np.log2(p)).sum())


@dataclass(frozen=True)
class JointDistribution:
    """A joint probability mass function over named finite variables.

    Parameters
    ----------
    variables : tuple of Variable
        Axis order of ``mass``; names must be unique.
    mass : ndarray
        Dense nonnegative tensor, one axis per variable, summing to 1
        within ``MASS_TOL``.
    """

    variables: tuple[Variable, ...]
    mass: np.ndarray

    def __post_init__(self):
        variables = tuple(self.variables)
        if not variables:
            raise DomainError("a joint distribution needs at least one variable")
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise DomainError(f"variable names must be unique, got {names}")
        cells = 1
        for v in variables:
            cells *= v.cardinality
        if cells > MAX_CELLS:
            raise CapacityError(
                f"joint over {names} has {cells} cells, exceeding the cap of {MAX_CELLS}"
            )
        mass = np.asarray(self.mass, dtype=float)
        expected = tuple(v.cardinality for v in variables)
        if mass.shape != expected:
            raise DomainError(
                f"mass shape {mass.shape} does not match cardinalities {expected}"
            )
        if (mass < 0.0).any():
            where = tuple(int(i) for i in np.argwhere(mass < 0.0)[0])
            raise DomainError(f"mass[{where}] = {mass[where]} is negative")
        total = float(mass.sum())
        if abs(total - 1.0) > MASS_TOL:
            raise DomainError(f"mass sums to {total!r}, expected 1 within {MASS_TOL}")
        mass = mass.copy()
        mass.flags.writeable = False
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "mass", mass)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_array(cls, names: Iterable[str], mass: np.ndarray) -> "JointDistribution":
        """Build a joint from an array, taking cardinalities from its shape."""
        mass = np.asarray(mass, dtype=float)
        names = tuple(names)
        if mass.ndim != len(names):
            raise DomainError(
                f"{len(names)} names given for a {mass.ndim}-dimensional mass tensor"
            )
        variables = tuple(Variable(n, c) for n, c in zip(names, mass.shape))
        return cls(variables, mass)

    # -- introspection --------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def axis(self, name: str) -> int:
        for i, v in enumerate(self.variables):
            if v.name == name:
                return i
        raise DomainError(f"unknown variable {name!r}; joint has {self.names}")

    def cardinality(self, name: str) -> int:
        return self.variables[self.axis(name)].cardinality

    def _axes(self, names: Iterable[str]) -> tuple[int, ...]:
        names = tuple(names)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")
        return tuple(self.axis(n) for n in names)

    def _marginal_tensor(self, axes: tuple[int, ...]) -> np.ndarray:
        """Sum out every axis not listed; kept axes stay in original order."""
        drop = tuple(i for i in range(self.mass.ndim) if i not in axes)
        if not drop:
            return self.mass
        return self.mass.sum(axis=drop)

    # -- operations ------------------------------------------------------------

    def marginalize(self, keep: Iterable[str]) -> "JointDistribution":
        """Marginal joint over ``keep``, preserving the original variable order."""
        axes = self._axes(keep)
        if not axes:
            raise DomainError("marginalize needs a nonempty set of variables to keep")
        order = sorted(axes)
        variables = tuple(self.variables[i] for i in order)
        return JointDistribution(variables, self._marginal_tensor(tuple(order)))

    def condition(self, given: Mapping[str, int]) -> "JointDistribution":
        """Renormalized slice with the variables in ``given`` pinned and removed."""
        if not given:
            raise DomainError("condition needs at least one pinned variable")
        axes = self._axes(given.keys())
        if len(axes) == len(self.variables):
            raise DomainError("cannot condition on every variable of the joint")
        indexer: list = [slice(None)] * self.mass.ndim
        for name, symbol in given.items():
            ax = self.axis(name)
            card = self.variables[ax].cardinality
            symbol = int(symbol)
            if not 0 <= symbol < card:
                raise DomainError(
                    f"symbol {symbol} out of range for {name!r} (cardinality {card})"
                )
            indexer[ax] = symbol
        sliced = self.mass[tuple(indexer)]
        total = float(sliced.sum())
        if total <= 0.0:
            raise DegenerateEventError(
                f"conditioning event {dict(given)} has probability zero"
            )
        remaining = tuple(v for v in self.variables if v.name not in given)
        return JointDistribution(remaining, sliced / total)

    def entropy(self, vars: Iterable[str], given: Iterable[str] = ()) -> float:
        """Conditional entropy H(vars | given) in bits; nonnegative."""
        v = tuple(vars)
        g = tuple(given)
        if not v:
            raise DomainError("entropy needs a nonempty set of variables")
        if set(v) & set(g):
            raise DomainError(f"vars {v} and given {g} overlap")
        vg_axes = self._axes(v + g)
        h = _plain_entropy(self._marginal_tensor(vg_axes))
        if g:
            h -= _plain_entropy(self._marginal_tensor(self._axes(g)))
        return max(0.0, h)

    def mutual_information(
        self,
        a: Iterable[str],
        b: Iterable[str],
        given: Iterable[str] = (),
    ) -> float:
        """Conditional mutual information I(a ; b | given) in bits.

        Computed as H(a,g) + H(b,g) - H(g) - H(a,b,g), which is exactly
        symmetric in ``a`` and ``b``; clamped at 0.
        """
        a = tuple(a)
        b = tuple(b)
        g = tuple(given)
        if not a or not b:
            raise DomainError("mutual_information needs nonempty variable sets")
        sa, sb, sg = set(a), set(b), set(g)
        if sa & sb or sa & sg or sb & sg:
            raise DomainError(f"sets must be pairwise disjoint, got {a}, {b}, {g}")
        h_ag = _plain_entropy(self._marginal_tensor(self._axes(a + g)))
        h_bg = _plain_entropy(self._marginal_tensor(self._axes(b + g)))
        h_abg = _plain_entropy(self._marginal_tensor(self._axes(a + b + g)))
        h_g = _plain_entropy(self._marginal_tensor(self._axes(g))) if g else 0.0
        return max(0.0, h_ag + h_bg - h_g - h_abg)
