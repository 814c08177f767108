"""Quantized phase-shifter codebook and exhaustive search.

The 72-beam codebook uses only the four phases {1, j, -1, -j}. With 8
elements many columns coincide, so exhaustive search pays 72 x 72 probes for
far fewer distinct beams. This script counts them and runs the search.
"""

import numpy as np

from locbeam import ArrayConfig, build_channel, build_codebook, exhaustive_search, sample_paths

ula = ArrayConfig(8)
cb = build_codebook(8, 72)
distinct = np.unique(np.round(cb.weights.T, 12), axis=0)
print(f"codebook {cb.weights.shape}, distinct columns {len(distinct)}")
print("phases of beam 0:", np.round(np.angle(cb[0]) / (np.pi / 2)).astype(int))

rng = np.random.default_rng(11)
for _ in range(3):
    H = build_channel(sample_paths(rng, 4, 6.0), ula, ula)
    res = exhaustive_search(H, cb, cb)
    print(f"best pair {res.beam_indices}  gain {res.gain:6.2f}  probes {res.switch_count}")
