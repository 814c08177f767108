"""Array responses and the clustered mmWave channel.

Builds an 8-element half-wavelength ULA, draws a 4-path channel with a
Rician LOS path and checks the two facts the rest of the package relies on:
the LOS path carries k/(k+1) of the power, and a pair of matched steering
vectors collects N_bs * N_ms = 64 gain from a single on-grid path.
"""

import numpy as np

from locbeam import ArrayConfig, Path, PathSet, array_response, bf_gain, build_channel, sample_paths

ula = ArrayConfig(8)
rng = np.random.default_rng(3)

paths = sample_paths(rng, 4, rician_k=6.0, los_angles=(np.radians(30), np.radians(-120)))
H = build_channel(paths, ula, ula)
power = np.abs(paths.gains) ** 2
print(f"channel {H.shape}, rank {np.linalg.matrix_rank(H)}, ||H||_F^2 = {np.sum(np.abs(H) ** 2):.3f}")
print(f"LOS power share {power[0] / power.sum():.4f} (k/(k+1) = {6 / 7:.4f})")

# a ULA cannot tell psi from pi - psi
a, b = array_response(np.radians(20), ula), array_response(np.radians(160), ula)
print(f"|p(20 deg) - p(160 deg)| = {np.linalg.norm(a - b):.2e}")

single = PathSet((Path(1.0, np.radians(30), np.radians(-120), True),))
H1 = build_channel(single, ula, ula)
g = bf_gain(H1, array_response(np.radians(30), ula), array_response(np.radians(-120), ula))
print(f"matched gain on a single path: {g:.6f}")
