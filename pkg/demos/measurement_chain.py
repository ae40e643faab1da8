"""Entanglement and the von Neumann measurement chain.

Premeasurement entangles system and apparatus, decoherence turns the
pure entangled state into a classical mixture over pointer states on the
timescale 1/E_A, and repeated runs reproduce the squared amplitudes as
frequencies.
"""

import numpy as np

from fockfield import (
    MeasurementModel,
    born_distribution,
    conditional_state,
    decohere,
    decoherence_time,
    entangled_pair,
    pointer_outcome_counts,
    premeasure,
    reduced_density,
    sample_outcomes,
    schmidt,
)

print("== entangled pair of unrelated properties ==")
e0, e1 = np.eye(2)
state = entangled_pair(e0, e1, e0, e1)
coeffs, entropy = schmidt(state)
print("schmidt coefficients:", coeffs)
print("entanglement entropy:", entropy, "(ln 2 =", float(np.log(2)), ")")
b_state, prob = conditional_state(state, e0)
print("observing A1 forces B1:", np.allclose(b_state, e0), "with probability", prob)

print("\n== premeasurement ==")
weights = np.array([0.25, 0.75])
model = MeasurementModel(eigenvalues=(0, 1), amplitudes=tuple(np.sqrt(weights)),
                         apparatus_energy=1e6)
entangled = premeasure(model)
print("system-apparatus entropy:", schmidt(entangled)[1])
print("reduced system purity:", reduced_density(entangled, "A").purity)

print("\n== decoherence ==")
print("decoherence time for E_A = 1e6:", decoherence_time(model.apparatus_energy))
rho = decohere(entangled)
print("mixed-state purity:", rho.purity, "(pure state had 1)")
print("pointer diagonal:", pointer_outcome_counts(rho.diagonal(), (2, 2)))
print("born distribution:", born_distribution(model.amplitudes))

print("\n== sampled outcome frequencies ==")
n = 100000
counts = pointer_outcome_counts(sample_outcomes(rho, n, seed=7), (2, 2))
for lam, c in zip(model.eigenvalues, counts):
    print(f"  outcome {lam}: {c:6d} draws, frequency {c / n:.4f}")
print("same seed reproduces the counts bit for bit:",
      np.array_equal(counts, pointer_outcome_counts(sample_outcomes(rho, n, seed=7), (2, 2))))
