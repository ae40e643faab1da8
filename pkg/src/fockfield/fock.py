"""Occupation-number representation of Fock space with ladder operators.

States live in the direct sum ℋ = ℋ⁰ ⊕ ℋ¹ ⊕ ℋ² ⊕ ... truncated to a
finite basis: each mode holds at most ``nmax`` bosons (default 8) or one
fermion.  A state is a sparse map from occupation tuples to complex
amplitudes; the empty map is the null element of the space, which is not
the same thing as the vacuum |0,0,...,0⟩.

Antiparticle modes are handled as a second species inside the same
ModeSpace, so the net particle number A†A − Ā†Ā is an ordinary
expectation value.

All operations are pure: they return new FockVector instances and never
mutate their arguments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import faults

NORM_TOL = 1e-8


class Statistics(Enum):
    BOSE = "bose"
    FERMI = "fermi"


@dataclass(frozen=True)
class ModeSpace:
    """Finite mode register: M modes per species, 1 or 2 species.

    For bosons the per-mode occupation is capped at ``nmax``; for fermions
    it is 0 or 1 and ``nmax`` is ignored.  Slots are ordered by
    (species, mode) ascending; this ordering fixes the fermionic sign
    convention.
    """

    num_modes: int
    statistics: Statistics
    nmax: int = 8
    species_count: int = 1

    def __post_init__(self):
        if self.num_modes < 1:
            raise ValueError("num_modes must be positive")
        if self.nmax < 1:
            raise ValueError("nmax must be positive")
        if self.species_count not in (1, 2):
            raise ValueError("species_count must be 1 or 2")

    @property
    def num_slots(self) -> int:
        return self.num_modes * self.species_count

    @property
    def occupation_cap(self) -> int:
        return 1 if self.statistics is Statistics.FERMI else self.nmax

    @property
    def dimension(self) -> int:
        return (self.occupation_cap + 1) ** self.num_slots

    def slot(self, mode: int, species: int = 0) -> int:
        if not 0 <= mode < self.num_modes:
            raise ValueError(f"mode {mode} out of range [0, {self.num_modes})")
        if not 0 <= species < self.species_count:
            raise ValueError(f"species {species} out of range [0, {self.species_count})")
        return species * self.num_modes + mode

    def basis_states(self):
        """All occupation tuples, in itertools.product order."""
        return itertools.product(range(self.occupation_cap + 1), repeat=self.num_slots)


@dataclass
class FockVector:
    """Sparse Fock-space vector: occupation tuple → complex amplitude.

    The empty map is the null element.  Treat instances as immutable.
    """

    mode_space: ModeSpace
    amplitudes: dict = field(default_factory=dict)

    @property
    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values())))

    @property
    def is_null(self) -> bool:
        return not self.amplitudes

    def amplitude(self, occupations) -> complex:
        return self.amplitudes.get(tuple(occupations), 0.0 + 0.0j)

    def normalized(self) -> "FockVector":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the null element")
        return FockVector(self.mode_space, {k: v / n for k, v in self.amplitudes.items()})

    def sector_weights(self) -> dict:
        """Total-particle-number sector → squared amplitude weight."""
        out: dict = {}
        for occ, amp in self.amplitudes.items():
            n = sum(occ)
            out[n] = out.get(n, 0.0) + abs(amp) ** 2
        return out

    def __add__(self, other: "FockVector") -> "FockVector":
        _check_same_space(self, other)
        amps = dict(self.amplitudes)
        for occ, a in other.amplitudes.items():
            s = amps.get(occ, 0.0) + a
            if s == 0.0:
                amps.pop(occ, None)
            else:
                amps[occ] = s
        return FockVector(self.mode_space, amps)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "FockVector":
        if scalar == 0.0:
            return FockVector(self.mode_space, {})
        return FockVector(self.mode_space, {k: scalar * v for k, v in self.amplitudes.items()})


def _check_same_space(u: FockVector, v: FockVector):
    if u.mode_space != v.mode_space:
        raise ValueError("FockVectors live in different mode spaces")


def _check_normalized(v: FockVector, what: str):
    if abs(v.norm - 1.0) > NORM_TOL:
        raise ValueError(f"{what} must be normalized (norm = {v.norm!r})")


def vacuum(mode_space: ModeSpace) -> FockVector:
    """The normalized zero-particle state |0,...,0⟩."""
    return FockVector(mode_space, {(0,) * mode_space.num_slots: 1.0 + 0.0j})


def basis_state(mode_space: ModeSpace, occupations) -> FockVector:
    occ = tuple(int(n) for n in occupations)
    if len(occ) != mode_space.num_slots:
        raise ValueError("occupation tuple has wrong length")
    cap = mode_space.occupation_cap
    if any(n < 0 or n > cap for n in occ):
        raise ValueError(f"occupations must lie in [0, {cap}]")
    return FockVector(mode_space, {occ: 1.0 + 0.0j})


def _jw_sign(occ, slot) -> float:
    if faults.active("fermi-sign"):
        # deliberately wrong: dropping the alternating string breaks the
        # anticommutation relations between distinct modes
        return 1.0
    return -1.0 if sum(occ[:slot]) % 2 else 1.0


def create(v: FockVector, mode: int, species: int = 0) -> FockVector:
    """Apply the creation operator A†(mode, species).

    Bosons pick up the usual √(n+1) factor; components that would exceed
    nmax are dropped (finite truncation of the infinite tower).  Fermions
    carry the Jordan-Wigner sign (−1)^(occupied slots below the target),
    and doubly-created components vanish.  Producing the null element is
    a legitimate outcome, not an error.
    """
    space = v.mode_space
    slot = space.slot(mode, species)
    fermi = space.statistics is Statistics.FERMI
    out: dict = {}
    for occ, amp in v.amplitudes.items():
        n = occ[slot]
        if fermi:
            if n == 1:
                continue
            new_amp = amp * _jw_sign(occ, slot)
        else:
            if n + 1 > space.nmax:
                continue
            new_amp = amp * np.sqrt(n + 1)
        new_occ = occ[:slot] + (n + 1,) + occ[slot + 1:]
        s = out.get(new_occ, 0.0) + new_amp
        if s == 0.0:
            out.pop(new_occ, None)
        else:
            out[new_occ] = s
    return FockVector(space, out)


def annihilate(v: FockVector, mode: int, species: int = 0) -> FockVector:
    """Apply the annihilation operator A(mode, species), the adjoint of create.

    ⟨u, create(v)⟩ = ⟨annihilate(u), v⟩ holds exactly on the truncated
    space.  Annihilating the vacuum yields the null element.
    """
    space = v.mode_space
    slot = space.slot(mode, species)
    fermi = space.statistics is Statistics.FERMI
    out: dict = {}
    for occ, amp in v.amplitudes.items():
        n = occ[slot]
        if n == 0:
            continue
        if fermi:
            new_amp = amp * _jw_sign(occ, slot)
        else:
            new_amp = amp * np.sqrt(n)
        new_occ = occ[:slot] + (n - 1,) + occ[slot + 1:]
        s = out.get(new_occ, 0.0) + new_amp
        if s == 0.0:
            out.pop(new_occ, None)
        else:
            out[new_occ] = s
    return FockVector(space, out)


def transformed_create(v: FockVector, coeffs, species: int = 0) -> FockVector:
    """Creation operator in a rotated single-particle basis.

    B† = Σ_α c_α A†_α with c_α the overlap of the old basis vector α with
    the new one.  All-zero coefficients are allowed and produce the null
    element.
    """
    space = v.mode_space
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (space.num_modes,):
        raise ValueError(f"expected {space.num_modes} coefficients, got {coeffs.shape}")
    out = FockVector(space, {})
    for mode, c in enumerate(coeffs):
        if c != 0.0:
            out = out + c * create(v, mode, species)
    return out


def inner(u: FockVector, v: FockVector) -> complex:
    """⟨u, v⟩, conjugate-linear in the first argument."""
    _check_same_space(u, v)
    small, big = (u, v) if len(u.amplitudes) <= len(v.amplitudes) else (v, u)
    acc = 0.0 + 0.0j
    for occ, a in small.amplitudes.items():
        b = big.amplitudes.get(occ)
        if b is not None:
            acc += np.conj(u.amplitudes[occ]) * v.amplitudes[occ]
    return complex(acc)


def number_expectation(v: FockVector, mode=None, species=None) -> float:
    """Expectation of a number operator on a normalized state.

    mode given        → ⟨A†_mode A_mode⟩ for that (mode, species).
    mode None         → total over all modes; with two species and species
                        None this is the net number ⟨A†A − Ā†Ā⟩ (particles
                        minus antiparticles).
    """
    _check_normalized(v, "state")
    space = v.mode_space
    if mode is not None:
        slot = space.slot(mode, 0 if species is None else species)
        return float(sum(abs(a) ** 2 * occ[slot] for occ, a in v.amplitudes.items()))
    if species is not None:
        lo = space.slot(0, species)
        hi = lo + space.num_modes
        return float(sum(abs(a) ** 2 * sum(occ[lo:hi]) for occ, a in v.amplitudes.items()))
    if space.species_count == 1:
        return float(sum(abs(a) ** 2 * sum(occ) for occ, a in v.amplitudes.items()))
    return number_expectation(v, species=0) - number_expectation(v, species=1)


def two_particle_symmetrized(xi, eta, mode_space: ModeSpace) -> FockVector:
    """Normalized A†(ξ)A†(η)|0⟩, the (anti)symmetrized two-particle state.

    Equal to the occupation-space image of ξ⊗η ± η⊗ξ.  For fermions with
    ξ ∥ η the result is the null element (Pauli exclusion); that is a
    distinguished outcome, not an error.
    """
    xi = np.asarray(xi, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    for name, vec in (("xi", xi), ("eta", eta)):
        if vec.shape != (mode_space.num_modes,):
            raise ValueError(f"{name} must have one coefficient per mode")
        if abs(np.linalg.norm(vec) - 1.0) > NORM_TOL:
            raise ValueError(f"{name} must be normalized")
    w = transformed_create(transformed_create(vacuum(mode_space), eta), xi)
    n = w.norm
    if n < 1e-12:
        return FockVector(mode_space, {})
    return (1.0 / n) * w


def dense_operator(mode_space: ModeSpace, kind: str, mode: int, species: int = 0) -> np.ndarray:
    """Dense matrix of a ladder operator in the basis_states() ordering.

    Intended for small spaces (brute-force checks); dimension grows as
    (cap+1)^slots.
    """
    if kind not in ("create", "annihilate"):
        raise ValueError("kind must be 'create' or 'annihilate'")
    op = create if kind == "create" else annihilate
    states = list(mode_space.basis_states())
    index = {occ: i for i, occ in enumerate(states)}
    mat = np.zeros((len(states), len(states)), dtype=complex)
    for j, occ in enumerate(states):
        image = op(FockVector(mode_space, {occ: 1.0 + 0.0j}), mode, species)
        for out_occ, amp in image.amplitudes.items():
            mat[index[out_occ], j] = amp
    return mat


def to_dense(v: FockVector) -> np.ndarray:
    """Amplitude vector in the basis_states() ordering."""
    states = {occ: i for i, occ in enumerate(v.mode_space.basis_states())}
    vec = np.zeros(len(states), dtype=complex)
    for occ, amp in v.amplitudes.items():
        vec[states[occ]] = amp
    return vec
