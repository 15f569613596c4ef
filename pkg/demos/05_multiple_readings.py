#!/usr/bin/env python3
"""One observable value read out by several pointer positions.

When an outcome corresponds to R equally significant readings, the
stationary state carries that outcome's probability split as p/R on each
associated reading.
"""

import math

import numpy as np

from collapse_sim import (
    CorrespondenceMap,
    IntegratorConfig,
    MeasurementModel,
    StateVector,
    simulate_model,
)

alpha = 0.37 * math.pi
model = MeasurementModel(
    sys=StateVector([math.cos(alpha), math.sin(alpha)]),
    app=StateVector(np.ones(3) / math.sqrt(3.0)),
    correspondence=CorrespondenceMap.from_assignment(2, 3, [[0], [1, 2]]),
    gamma=5.0,
    omega=1.0,
    epsilon=1e-4,
)
p = model.probabilities()
print(f"outcome probabilities: {p[0]:.6f}, {p[1]:.6f}")
print("outcome 1 is reported by readings 1 and 2 with equal significance")

traj = simulate_model(model, IntegratorConfig(t_max=2.0), mode="fast")
final = traj.diagonals[-1]
print("\nstationary populations over (outcome, reading) pairs:")
for i in range(2):
    for j in range(3):
        print(f"  outcome {i}, reading {j}: {final[i * 3 + j]:.8f}")
print(f"\nexpected split p1/2 = {p[1] / 2:.8f}")
