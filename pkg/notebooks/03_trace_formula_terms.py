"""
Trace formula bookkeeping
=========================

Below the systole the geodesic side is empty, so what is left of the even
formula is the identity term against the trivial representation.
"""
import math

import numpy as np

import holospec as hs
from holospec import cutoffs as C

rng = np.random.default_rng(2)
lengths = rng.uniform(3.0, 10.0, 40)
table = hs.SpectrumTable(lengths, rng.uniform(-math.pi, math.pi, 40), horizon=10.0, complete=True)
mc = hs.ManifoldConstants(volume=2.0, systole=table.systole)

for n in (0, 1, 2):
    r = hs.even_tf_sides(C.g_y_eta(1.5, 0.5), n, [], table, mc)
    print(n, r.identity_term.real, r.trivial_rep_term.real, r.residual.real)

# once the cutoff reaches the spectrum the geodesic term switches on
r = hs.even_tf_sides(C.g_y_eta(6.0, 0.5), 1, [], table, mc)
print(r.geodesic_term, r.complete)

# the weight is close to e^{-l} only for long geodesics
for l in (0.5, 1.0, 2.0, 5.0):
    w = hs.weight(l, 0.0)
    print(l, w * math.exp(l), 1 / (1 - math.exp(-l)) ** 2)
