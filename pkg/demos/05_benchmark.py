"""Monte-Carlo comparison of the three alignment strategies.

Runs exhaustive search, CS with random probes and CS with location-aided
sector probes on the same placements and channels, then repeats at a
16-probe budget for both CS schemes. Pass a trial count as the first
argument (default 300).
"""

import sys

import numpy as np

from locbeam import SimConfig, empirical_cdf, run_monte_carlo, summarize

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 300
base = SimConfig(trials=trials, seed=1)

for label, cfg in (("default budgets", base),
                   ("16 probes each", base.replace(cs_random_budget=16, localized_budget=16))):
    records = run_monte_carlo(cfg, workers=4)
    print(f"\n{label} ({trials} trials)")
    for name, s in summarize(records).items():
        print(f"  {name:17s} median gain {s['median_gain']:6.2f}  mean switches {s['mean_switch_count']:6.2f}"
              f"  fallback {100 * s['fallback_rate']:.1f}%")
    gains = {}
    for r in records:
        gains.setdefault(r.strategy, []).append(r.gain)
    for q in (0.1, 0.5, 0.9):
        row = "  ".join(f"{n}={np.quantile(g, q):6.2f}" for n, g in gains.items())
        print(f"  quantile {q:.1f}: {row}")
    cdf = empirical_cdf(gains["CsLocalized"])
    print(f"  P(CsLocalized gain <= 40) = {float(cdf(40.0)):.3f}")
