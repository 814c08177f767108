"""Sector measurement beams for a localized angular range.

A location estimate with bounded error confines the LOS bearing to an arc.
The arc is split into sub-sectors and each gets a least-squares flat-top
beam. Printed below: the beam pattern inside and outside its sub-sector.
"""

import numpy as np

from locbeam import (
    ArrayConfig, LocalizationError, Location, angular_range, build_sector_beams, combined_error, quantized_grid,
)
from locbeam.beams import beam_response

ula = ArrayConfig(8)
grid = quantized_grid(72)

bs, ms = Location(20.0, 30.0), Location(35.0, 38.0)
err = LocalizationError(5.0)
radius = combined_error(err, err, one_sided=True)
r = angular_range(bs, ms, radius, grid)
print(f"bearing {np.degrees(bs.bearing_to(ms)):.1f} deg, radius {radius:.2f} m "
      f"-> indices {r.lo}..{r.hi} ({r.count} points)")

beams = build_sector_beams(r, 3, grid, ula)
members = r.members()
for m, chunk in enumerate(np.array_split(members, 3)):
    resp = np.abs(beam_response(beams.weights[:, m], grid, ula)) ** 2
    inside = resp[chunk]
    outside = np.delete(resp, chunk)
    print(f"beam {m}: indices {chunk.tolist()}  in-sector min {inside.min():5.2f}  "
          f"global max {resp.max():5.2f}  outside median {np.median(outside):5.2f}")
