"""
Winding numbers of SSH ladders
==============================

A single SSH chain is topological when its inter-cell bond is the strong one
(delta > 0). Coupling M chains by a transverse hopping z lets the edge states
of neighbouring chains hybridize, and the invariant of the ladder is no
longer just a sum over chains.
"""

import numpy as np

from sshladder import LadderParams, phase_grid, winding_analytic, winding_green, winding_projector

# %% One chain, two routes
# The Green's-function trace and the projector winding are computed
# independently; on a gapped point they agree.
for delta in (-0.5, 0.5):
    p = LadderParams.uniform(1, delta)
    print(f"M=1 delta={delta:+.1f}: green {winding_green(p).value}, "
          f"projector {winding_projector(p).value}, closed form {winding_analytic(p)}")

# %% Uniform ladders
# With equal dimerization on every leg and weak z, odd ladders keep I = 1
# while even ladders pair their edge states up and have I = 0.
for M in (1, 2, 3, 4):
    p = LadderParams.uniform(M, 0.5, 0.3)
    print(f"M={M}: I = {winding_green(p).value}")

# %% A three-leg phase diagram
# Sweep the outer dimerizations at fixed delta2 = -0.75 and z = 0.9.
# Characters: '.' for I=0, digits for |I|, '-' marks negative values,
# '?' marks points where the gap closes on the grid.
axis = np.linspace(-0.95, 0.95, 25)
template = LadderParams(M=3, L=1, deltas=(0.9, -0.75, 0.8), z=0.9)
grid = phase_grid(template, ("delta1", axis), ("delta3", axis), n_k=128)


def glyph(v):
    if np.isnan(v):
        return "?"
    return "." if v == 0 else ("-" if v < 0 else "") + str(int(abs(v)))


print("\ndelta3 ->  (rows: delta1 from -0.95 to 0.95)")
for row in grid["I"]:
    print(" ".join(f"{glyph(v):>2}" for v in row))
