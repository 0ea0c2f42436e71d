"""
Complex length spectrum of a Schottky group
===========================================

Two loxodromic generators with far-apart fixed points generate a free
group.  We enumerate a word ball, bucket by complex length and look at
the primitive count and the holonomy spread.
"""
import cmath
import math

import numpy as np

import holospec as hs

# generators: diagonal loxodromics, the second one rotated by 45 degrees
def diag(z):
    return np.diag([cmath.exp(z / 2), cmath.exp(-z / 2)])

c = s = math.sqrt(0.5)
r = np.array([[c, -s], [s, c]])
pres = hs.GroupPresentation([diag(3.0 + 0.7j), r @ diag(3.2 - 1.1j) @ r.T], name="schottky")

table = hs.enumerate_spectrum(pres, max_word_len=4, y=14.0)
print(table)
print("systole", table.systole, "primitive", table.primitive_count)

# first few rows
for c in table.classes[:8]:
    print("%8.4f %+8.4f  x%d  k=%d" % (c.length, c.holonomy, c.multiplicity, c.power_index))

# a Schottky group has infinite covolume, so its classes grow far slower than
# the cocompact main term, and a word ball only sees short words anyway.
# The report flags the mismatch instead of grading it
rep = hs.pgt_report(table, (), [4.0, 6.0, 8.0, 10.0, 12.0, 14.0])
for row in rep.rows:
    print("y=%5.1f count=%6d main=%12.5g" % tuple(row[:3]))
print(rep.verdict, rep.caveats)

print("holonomy discrepancy", hs.equidist_discrepancy(table, 14.0))
