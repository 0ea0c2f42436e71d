"""
Smooth cutoffs and the sharp sandwich
=====================================
"""
import math

import numpy as np

from holospec import cutoffs as C
from holospec.spectrum import golden_angle_table
from holospec.sums import T_cos, boundary_length_sum

g = C.g_y_eta(4.0, 0.5)
x = np.linspace(-5, 5, 11)
print(np.round(C.cutoff_eval(g, x), 6))

# transform at zero is the mass 2y; along the imaginary axis it grows like e^{2 pi |xi| (y + eta)}
for xi in (0, 0.1, 0.5j, 1j):
    print(xi, C.cutoff_fourier(g, xi))

# tilting: g_lambda at lambda = 0 is the plain cutoff
print(C.cutoff_eval(C.g_lambda(4.0, 0.5, 0.0), 3.9), C.cutoff_eval(g, 3.9))

# smooth vs sharp length cutoff on a synthetic table
t = golden_angle_table(4000, length_step=0.002)
for eta in (0.5, 0.1, 0.02):
    smooth = T_cos(t, 2, C.g_y_eta(6.0, eta)).real
    sharp = T_cos(t, 2, 6.0).real
    print("eta=%.2f  |smooth - sharp|=%.3e  boundary=%.3e"
          % (eta, abs(smooth - sharp), boundary_length_sum(t, 6.0, eta)))

# Fourier coefficients of the holonomy window decay fast once n > 1/eta'
f = C.f_I_etaprime(0.3, 0.3 + math.pi / 2, 0.2)
print([round(abs(C.periodic_coeff(f, n)), 6) for n in range(0, 30, 5)])
print(C.f_norms(f))
