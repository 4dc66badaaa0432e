#!/usr/bin/env python3
"""Regenerate data/mehra_prescott_1889_1978.csv.

The original annual series is not redistributed here. This script builds a
deterministic reconstruction that matches the published summary statistics
of the 1889-1978 US sample:

  consumption growth   mean 1.0183  std 0.0357
  risk-free return     mean 1.0080  std 0.0567
  equity return        mean 1.0698  std 0.1654

plus the known levels c(1977) = 3340 and c(1978) = 3450 (1972 dollars), and
a mean log consumption level of 7.3399 (a geometric-mean level of about
1540 dollars). Standard deviations use the population divisor.

Usage: python3 data/generate_reference_dataset.py > data/mehra_prescott_1889_1978.csv
"""
import sys

import numpy as np
from scipy.optimize import fsolve

FIRST, LAST = 1889, 1978
C_1977, C_1978 = 3340.0, 3450.0
GROWTH_MEAN, GROWTH_STD = 1.0183, 0.0357
RF_MEAN, RF_STD = 1.0080, 0.0567
RE_MEAN, RE_STD = 1.0698, 0.1654
MEAN_LOG_LEVEL = 7.3399
SEED = 1985

years = np.arange(FIRST, LAST + 1)
n_growth = len(years) - 1            # growth from year t-1 to t, t = 1890..1978
rng = np.random.default_rng(SEED)

# Stylized episodes layered on white noise (indexed by the year growth lands in).
episodes = {1893: -1.2, 1894: -1.0, 1908: -1.3, 1914: -0.8, 1918: -0.9,
            1921: -1.5, 1922: 1.2, 1930: -1.6, 1931: -1.1, 1932: -2.4,
            1933: -0.6, 1934: 1.0, 1936: 1.4, 1942: -1.4, 1943: -0.4,
            1946: 2.0, 1947: -0.5, 1955: 0.6, 1958: -0.6, 1974: -0.9}
shock = rng.standard_normal(n_growth)
for year, bump in episodes.items():
    shock[year - FIRST - 1] += bump
shock -= shock.mean()
shock /= shock.std()
tilt = np.linspace(-1.0, 1.0, n_growth)
last_growth = np.log(C_1978 / C_1977)


def build(params):
    drift, scale, slope = params
    g = drift + scale * shock + slope * tilt
    g[-1] = last_growth
    log_c = np.empty(len(years))
    log_c[-1] = np.log(C_1978)
    for i in range(n_growth - 1, -1, -1):
        log_c[i] = log_c[i + 1] - g[i]
    return g, log_c


def targets(params):
    g, log_c = build(params)
    x = np.exp(g)
    return [x.mean() - GROWTH_MEAN, x.std() - GROWTH_STD, log_c.mean() - MEAN_LOG_LEVEL]


solution = fsolve(targets, [0.017, 0.035, 0.0])
_, log_c = build(solution)
consumption = np.round(np.exp(log_c), 1)
consumption[-2], consumption[-1] = C_1977, C_1978

# Returns: equity loads on consumption growth, the bill rate is mostly its own.
z_c = np.append(shock, rng.standard_normal())
z_e = 0.35 * z_c + rng.standard_normal(len(years))
z_f = 0.10 * z_c + rng.standard_normal(len(years))
for year, bump in {1917: -1.5, 1920: -1.2, 1930: -1.5, 1931: -2.2,
                   1937: -1.6, 1974: -1.5, 1954: 1.6, 1933: 1.4}.items():
    z_e[year - FIRST] += bump
for year, bump in {1917: -1.8, 1918: -1.6, 1919: -1.2, 1946: -2.4,
                   1947: -1.6, 1921: 1.6, 1931: 1.3, 1932: 1.4}.items():
    z_f[year - FIRST] += bump


def standardize(z, mean, std):
    z = (z - z.mean()) / z.std()
    return np.round(mean + std * z, 4)


equity = standardize(z_e, RE_MEAN, RE_STD)
riskfree = standardize(z_f, RF_MEAN, RF_STD)
assert (consumption > 0).all() and (equity > 0).all() and (riskfree > 0).all()

out = sys.stdout
out.write("year,consumption_per_capita,equity_gross_return,riskfree_gross_return\n")
for y, c, e, f in zip(years, consumption, equity, riskfree):
    out.write(f"{y},{c:.1f},{e:.4f},{f:.4f}\n")
