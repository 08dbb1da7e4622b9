#!/usr/bin/env python3
"""The two experimental sanity checks: state tomography and T2 headroom.

First, the prepared input state |0><0| (x) I/2 is tomographed in the
two-qubit Pauli basis with Gaussian readout noise of varying strength; what
survives in
an NMR experiment is the traceless deviation matrix, so the fidelity reported
here is the normalized Hilbert-Schmidt overlap between the measured and ideal
deviations.

Second, the dephasing check: with hydrogen/carbon transverse relaxation times
of 3 s and 0.8 s and a 10 ms protocol, how much of the K signal is lost?
"""

import math

import numpy as np

from lgsim import (
    KET0,
    ReadoutNoise,
    T2Config,
    deviation,
    k_attenuation_check,
    kron,
    maximally_mixed,
    pure_density,
    reconstruct,
    tomograph,
    tomography_fidelity_experiment,
)

rho = kron(pure_density(KET0), maximally_mixed())
print("ideal deviation matrix of |0><0| (x) I/2 (real part):")
print(np.round(deviation(rho).real, 6))

record = tomograph(rho, ReadoutNoise(sigma=0.0, seed=0))
nonzero = {
    (i, j): c
    for (i, j), c in np.ndenumerate(record.coefficients)
    if abs(c) > 1e-12
}
print(f"\nnoise-free Pauli coefficients (nonzero only): {nonzero}")
assert np.allclose(reconstruct(record), rho)

print("\ndeviation-matrix fidelity vs readout noise (mean over 100 seeds):")
print(f"{'sigma':>8} {'mean fidelity':>14}")
for sigma in (0.0, 0.01, 0.03, 0.1, 0.3, 1.0):
    fids = [tomography_fidelity_experiment(sigma, seed) for seed in range(100)]
    print(f"{sigma:8.2f} {np.mean(fids):14.6f}")
print("a ~0.99 fidelity corresponds to per-coefficient noise around 0.03")

print("\nT2 attenuation of K at theta = pi/3 (maximum violation point):")
print(f"{'duration':>10} {'K ideal':>9} {'K noisy':>9} {'ratio':>9}")
for duration in (0.0, 0.01, 0.1, 1.0, 10.0):
    cfg = T2Config(t2_probe=3.0, t2_system=0.8, duration=duration)
    k_ideal, k_noisy = k_attenuation_check(cfg, math.pi / 3)
    print(f"{duration:10.2f} {k_ideal:9.4f} {k_noisy:9.4f} "
          f"{k_noisy / k_ideal:9.6f}")
print("""
At the experimental 10 ms the loss is the probe coherence factor
exp(-0.01/3) = 0.9967: decoherence is negligible for this protocol.""")
