#!/usr/bin/env python3
"""Nonparametric bootstrap of average marginal effects.

Resamples the rows of tests/data/regression_reference_data.csv 1,000 times,
refits the logit with statsmodels each time, and records the standard
deviation of the AMEs (derivative for x1 and x3, discrete change for the
binary x2). These are the reference the delta-method SEs are checked against.

    python3 tests/oracle/ame_bootstrap.py   # rewrites tests/data/ame_bootstrap_expected.tsv
"""
import os

import numpy as np
import pandas as pd
import statsmodels.api as sm

DATA = os.path.join(os.path.dirname(__file__), "..", "data")
REPLICATES = 1000

df = pd.read_csv(os.path.join(DATA, "regression_reference_data.csv"))
X = sm.add_constant(df[["x1", "x2", "x3"]].to_numpy())
y = df["y"].to_numpy()
rng = np.random.default_rng(8675309)

draws = []
for _ in range(REPLICATES):
    idx = rng.integers(0, len(y), size=len(y))
    fit = sm.Logit(y[idx], X[idx]).fit(disp=0, tol=1e-12, maxiter=100)
    draws.append(fit.get_margeff(at="overall", method="dydx", dummy=True).margeff)
draws = np.array(draws)
sd = draws.std(axis=0, ddof=1)

with open(os.path.join(DATA, "ame_bootstrap_expected.tsv"), "w") as f:
    f.write(f"replicates\t{REPLICATES}\n")
    for name, value in zip(["x1", "x2", "x3"], sd):
        f.write(f"bootstrap_se_{name}\t{float(value)!r}\n")
print(open(os.path.join(DATA, "ame_bootstrap_expected.tsv")).read())
