"""Quantum-side detectors for the landscape's phase boundaries.

Two observables locate the ground-state structure changes predicted by
the separatrix machinery, using nothing but exact diagonalization:

* ground-state fidelity, the squared overlap of ground states at
  parameter values straddling a point. It collapses where the ground
  state reorganizes, i.e. along the first-order (Maxwell) lines.
* low-temperature heat capacity, computed from energy fluctuations.
  Ridges of enhanced heat capacity trace out the same boundaries at
  experimentally accessible temperatures.

Temperatures, like energies, are in kelvin throughout (t means
k_B T / k_B). Partition sums are always taken relative to the ground
level so nothing overflows no matter how cold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import numpy.typing as npt

from .eig import Spectrum, eigh
from .spin import G_FACTOR, AnisotropyParams, FieldVector, SpinSystem, build_hamiltonian

_FIELD_AXES = ("bx", "by", "bz")


@dataclass(frozen=True)
class FidelityMap:
    """Ground-state fidelity over a (bz, bx) window.

    values[i, j] is the fidelity at bz_values[i], bx_values[j], with
    the two compared ground states taken at the scan axis value -/+ d.
    """

    bz_values: npt.NDArray[np.float64]
    bx_values: npt.NDArray[np.float64]
    values: npt.NDArray[np.float64]
    d: float
    axis: str


@dataclass(frozen=True)
class ThermoPoint:
    """Equilibrium quantities of one spectrum at one temperature.

    z is the partition sum of the shifted spectrum (levels minus the
    ground energy), with the shift recorded; f is the true Helmholtz
    energy shift + (-t log z), s the entropy (dimensionless, in units
    of k_B) and c the heat capacity from the fluctuation formula.
    """

    t: float
    z: float
    f: float
    s: float
    c: float
    shift: float


def _ground_vector(
    system: SpinSystem,
    aniso: AnisotropyParams,
    field: FieldVector,
    g: float,
) -> npt.NDArray[np.complex128]:
    spec = eigh(build_hamiltonian(system, aniso, field, g=g))
    return spec.eigenvectors[:, 0]


def fidelity(
    system: SpinSystem,
    aniso: AnisotropyParams,
    field: FieldVector,
    *,
    axis: str = "bz",
    d: float = 0.001,
    g: float = G_FACTOR,
) -> float:
    """Squared ground-state overlap across a small field increment.

    Compares the ground states at field_axis - d and field_axis + d.
    Values sit in [0, 1] up to rounding; 1 - F grows quadratically in d
    for a smoothly varying ground state and F plunges toward 0 across a
    level crossing.
    """
    if axis not in _FIELD_AXES:
        raise ValueError(f"axis must be one of {_FIELD_AXES}, got {axis!r}")
    if not (d > 0.0 and math.isfinite(d)):
        raise ValueError(f"increment d must be positive and finite, got {d!r}")
    center = getattr(field, axis)
    v_minus = _ground_vector(system, aniso, replace(field, **{axis: center - d}), g)
    v_plus = _ground_vector(system, aniso, replace(field, **{axis: center + d}), g)
    return float(abs(np.vdot(v_minus, v_plus)) ** 2)


def fidelity_map(
    system: SpinSystem,
    aniso: AnisotropyParams,
    bz_values: npt.ArrayLike,
    bx_values: npt.ArrayLike,
    *,
    by: float = 0.0,
    axis: str = "bz",
    d: float = 0.001,
    g: float = G_FACTOR,
) -> FidelityMap:
    """Fidelity on every node of a (bz, bx) grid.

    Spectra are recomputed point by point; rows and columns are emitted
    in grid order so repeated runs are identical.
    """
    bz = np.atleast_1d(np.asarray(bz_values, dtype=float))
    bx = np.atleast_1d(np.asarray(bx_values, dtype=float))
    out = np.empty((bz.size, bx.size))
    for j, x in enumerate(bx):
        for i, z in enumerate(bz):
            out[i, j] = fidelity(
                system, aniso, FieldVector(bx=float(x), by=by, bz=float(z)),
                axis=axis, d=d, g=g,
            )
    return FidelityMap(bz_values=bz, bx_values=bx, values=out, d=d, axis=axis)


def thermo(spectrum: Spectrum | npt.ArrayLike, t: float) -> ThermoPoint:
    """Partition sum, free energy, entropy and heat capacity at t.

    Accepts a Spectrum or a plain array of level energies in kelvin.
    All sums use levels shifted by the ground energy, so Boltzmann
    weights never overflow; the heat capacity is the variance of the
    shifted levels over t^2, which is manifestly non-negative.
    """
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError(f"temperature must be positive and finite, got {t!r}")
    levels = spectrum.eigenvalues if isinstance(spectrum, Spectrum) else np.asarray(spectrum, dtype=float)
    if levels.ndim != 1 or levels.size == 0:
        raise ValueError("expected a one-dimensional, non-empty array of levels")
    e0 = float(np.min(levels))
    shifted = levels - e0
    weights = np.exp(-shifted / t)
    z = float(np.sum(weights))
    mean = float(np.sum(shifted * weights) / z)
    var = float(np.sum(weights * (shifted - mean) ** 2) / z)
    f = e0 - t * math.log(z)
    s = mean / t + math.log(z)
    c = var / t**2
    return ThermoPoint(t=t, z=z, f=f, s=s, c=c, shift=e0)


def heat_capacity_scan(
    system: SpinSystem,
    aniso: AnisotropyParams,
    bz_values: npt.ArrayLike,
    t: float,
    *,
    bx: float = 0.0,
    by: float = 0.0,
    g: float = G_FACTOR,
) -> npt.NDArray[np.float64]:
    """Heat capacity along a bz scan at fixed transverse field."""
    bz = np.atleast_1d(np.asarray(bz_values, dtype=float))
    out = np.empty(bz.size)
    for i, z in enumerate(bz):
        spec = eigh(build_hamiltonian(system, aniso, FieldVector(bx=bx, by=by, bz=float(z)), g=g))
        out[i] = thermo(spec, t).c
    return out


def heatcap_map(
    system: SpinSystem,
    aniso: AnisotropyParams,
    bz_values: npt.ArrayLike,
    bx_values: npt.ArrayLike,
    t: float,
    *,
    by: float = 0.0,
    g: float = G_FACTOR,
) -> npt.NDArray[np.float64]:
    """Heat capacity on every node of a (bz, bx) grid at temperature t.

    Returns an array shaped (len(bz), len(bx)), diagonalizing once per
    node.
    """
    bz = np.atleast_1d(np.asarray(bz_values, dtype=float))
    bx = np.atleast_1d(np.asarray(bx_values, dtype=float))
    out = np.empty((bz.size, bx.size))
    for j, x in enumerate(bx):
        for i, z in enumerate(bz):
            spec = eigh(build_hamiltonian(system, aniso, FieldVector(bx=float(x), by=by, bz=float(z)), g=g))
            out[i, j] = thermo(spec, t).c
    return out
