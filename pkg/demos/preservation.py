"""Small runs of the five preservation experiments.

Each trial computes a statistic exactly in the source domain, builds the
constraint set that forbids every collision, finds a verified map and
recomputes the statistic modulo p.

Run with:  python demos/preservation.py
"""

from reduction_engine.harness import HarnessConfig, run

configs = [
    HarnessConfig("sumprod", size=6, trials=5, seed=1),
    HarnessConfig("incidence", size=5, trials=5, seed=1, domain="sqrt2"),
    HarnessConfig("distance", size=5, trials=5, seed=1, domain="mixed"),
    HarnessConfig("sl2", size=3, trials=5, seed=1, domain="transcendental"),
    HarnessConfig("matrix", size=3, domain="sqrt2", exhaustive=True, support=("1", "1 + r2")),
    HarnessConfig("matrix", size=4, samples=2000, domain="integer", seed=1),
]
for cfg in configs:
    rep = run(cfg)
    t = rep.trials[0]
    print(f"{cfg.application:9s} {cfg.domain:14s} pass {rep.passed}/{len(rep.trials)}"
          f"  first trial p = {t.map['p'] if t.map else None}  source {t.source}")
    for note in t.notes:
        print(f"{'':24s}{note}")
