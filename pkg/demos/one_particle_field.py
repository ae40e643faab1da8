"""One-particle states on the lattice: intensity, duality, coherent states.

A particle "at many places at once" is a smeared creation operator; its
number density is exactly the squared intensity |f(x)|^2, its momentum
content is the unitary transform g(p), and only states without a sharp
particle number can carry a nonzero field amplitude.
"""

import numpy as np

from fockfield import (
    GeneralStateSpec,
    LatticeSpec,
    ModeSpace,
    Statistics,
    WaveAmplitude,
    annihilate,
    coherent_state,
    field_expectation,
    number_density,
    number_expectation,
    prepare_general,
    prepare_one_particle,
    site_mode_space,
    to_momentum,
)

lattice = LatticeSpec(num_sites=64, spacing=1.0, mass=1.0)
space = site_mode_space(lattice)

print("== double-lobe intensity profile (a particle in two places) ==")
x = lattice.positions
profile = np.exp(-((x + 16.0) ** 2) / 16) + np.exp(-((x - 16.0) ** 2) / 16)
f = WaveAmplitude(profile / np.linalg.norm(profile), lattice)
psi = prepare_one_particle(f, space)
density = np.array([number_density(psi, j) for j in range(64)])
print("density equals |f|^2:", np.max(np.abs(density - f.density())) < 1e-12)
print("left lobe weight: ", density[:32].sum())
print("right lobe weight:", density[32:].sum())
print("total particle number:", number_expectation(psi))

print("\n== momentum content ==")
g = to_momentum(f)
print("Parseval check:", abs(g.norm - 1.0) < 1e-12)
peak = np.argmax(g.density())
print("dominant momentum:", lattice.momenta[peak])

print("\n== fixed particle number means zero field amplitude ==")
print("max |<Psi(x)>| over sites:", max(abs(field_expectation(psi, j)) for j in range(64)))

print("\n== sector mixing turns the field on ==")
mixed = prepare_general(
    GeneralStateSpec({(): 1 / np.sqrt(2), (32,): 1 / np.sqrt(2)}),
    space,
)
print("<N> of (|0> + |1 at x=0>)/sqrt(2):", number_expectation(mixed))
print("|<Psi>| at the occupied site:", abs(field_expectation(mixed, 32)))

print("\n== coherent states: closest to a classical field ==")
single = ModeSpace(1, Statistics.BOSE, nmax=16)
alpha = 1.2
c = coherent_state([alpha], single)
print("<N> vs |alpha|^2:", number_expectation(c), alpha**2)
residual = (annihilate(c, 0) - alpha * c).norm
print("eigenvector residual ||(A - alpha)v||:", residual)
print("field amplitude <A>:", complex(field_expectation(c, 0)))
