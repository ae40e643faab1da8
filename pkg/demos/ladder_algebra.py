"""Tour of the occupation-number Fock space and its ladder operators.

Walks through vacuum vs null element, creation amplitudes, the
(anti)commutation relations, why boson antiparticle operators cannot be
the annihilation operators, and the loss of individuality in
two-particle states.
"""

import numpy as np

from fockfield import (
    FockVector,
    ModeSpace,
    Statistics,
    annihilate,
    create,
    inner,
    number_expectation,
    two_particle_symmetrized,
    vacuum,
)

bose = ModeSpace(num_modes=2, statistics=Statistics.BOSE, nmax=6)
fermi = ModeSpace(num_modes=2, statistics=Statistics.FERMI)

print("== vacuum and null element ==")
v0 = vacuum(bose)
print("vacuum amplitudes:", dict(v0.amplitudes))
print("annihilate(vacuum) is null:", annihilate(v0, 0).is_null)
print("the null element is not the vacuum:", FockVector(bose, {}).is_null, "vs", v0.is_null)

print("\n== creation amplitudes ==")
one = create(v0, 0)
two = create(one, 0)
print("a+|0> amplitude on |1,0>:", one.amplitude((1, 0)))
print("a+a+|0> amplitude on |2,0>:", two.amplitude((2, 0)), "(sqrt 2)")
print("fermi double creation is null:", create(create(vacuum(fermi), 0), 0).is_null)

print("\n== exchange relations on a random state ==")
rng = np.random.default_rng(0)
states = list(bose.basis_states())
amps = rng.normal(size=len(states)) + 1j * rng.normal(size=len(states))
psi = FockVector(bose, dict(zip(states, amps / np.linalg.norm(amps))))
# keep to the safe subspace so truncation cannot bite
psi = FockVector(bose, {occ: a for occ, a in psi.amplitudes.items() if max(occ) < bose.nmax})
psi = psi.normalized()
comm = annihilate(create(psi, 0), 0) - create(annihilate(psi, 0), 0)
print("(A A+ - A+ A) psi = psi?  residual:", (comm - psi).norm)

print("\n== why antiparticles need their own operators (bosons) ==")
# if creating an antiparticle were just annihilating a particle, the net
# particle number would be <A+A - AA+>, which the relation above pins at -1
# for every normalized state: absurd for a particle count
value = inner(psi, create(annihilate(psi, 0), 0)) - inner(psi, annihilate(create(psi, 0), 0))
print("<A+A - AA+> =", complex(value).real)

print("\n== net charge with a genuine antiparticle species ==")
pair_space = ModeSpace(num_modes=2, statistics=Statistics.BOSE, nmax=6, species_count=2)
pair = create(create(vacuum(pair_space), 0, species=0), 0, species=1).normalized()
print("particle count:", number_expectation(pair, species=0))
print("antiparticle count:", number_expectation(pair, species=1))
print("net number <A+A - Abar+Abar>:", number_expectation(pair))

print("\n== individuality loss in two-particle states ==")
xi, eta = np.array([1.0, 0.0]), np.array([0.0, 1.0])
both = two_particle_symmetrized(xi, eta, fermi)
swapped = two_particle_symmetrized(eta, xi, fermi)
print("fermi |xi,eta> amplitude on (1,1):", both.amplitude((1, 1)))
print("swapping the labels flips the global sign:", swapped.amplitude((1, 1)))
print("xi = eta is Pauli-excluded:", two_particle_symmetrized(xi, xi, fermi).is_null)
