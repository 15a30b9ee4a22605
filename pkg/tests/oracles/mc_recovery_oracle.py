"""Independent Monte Carlo oracle for the noisy exponent-recovery check.

Re-implements the preprocessing chain with plain numpy (no package imports)
so the frozen median in the acceptance suite does not depend on the code it
checks. Run directly::

    python3 tests/oracles/mc_recovery_oracle.py
"""

import numpy as np

YEARS = np.arange(0, 40, dtype=float)
REFERENCE = dict(capacity=100.0, rate=0.05, shape=1.48)
TARGET = dict(capacity=60.0, rate=0.025, shape=1.39)
NOISE_SD = 0.005
SEEDS = range(200)


def gompertz(capacity, rate, shape, t):
    return capacity * np.exp(-np.exp(shape - rate * t))


def draw(curve, rng):
    exact = gompertz(t=YEARS, **curve)
    return exact * np.exp(rng.normal(0.0, NOISE_SD, size=YEARS.size))


def pipeline(levels, rate_method):
    if rate_method == "percent-change":
        rates = levels[1:] / levels[:-1] - 1.0
    else:
        rates = np.log(levels[1:] / levels[:-1])
    return np.convolve(rates, np.ones(3) / 3.0, mode="valid")


def one_run(seed, rate_method):
    rng = np.random.default_rng(seed)
    y = pipeline(draw(TARGET, rng), rate_method)
    x = pipeline(draw(REFERENCE, rng), rate_method)
    keep = (y > 0) & (x > 0)
    return np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)[0], int((~keep).sum())


if __name__ == "__main__":
    for method in ("percent-change", "log-difference"):
        runs = [one_run(s, method) for s in SEEDS]
        slopes = np.array([r[0] for r in runs])
        print(f"{method}: median={np.median(slopes):.6f} "
              f"q05={np.quantile(slopes, 0.05):.4f} q95={np.quantile(slopes, 0.95):.4f} "
              f"dropped_total={sum(r[1] for r in runs)}")
