"""
The boundary loop and its contraction
======================================

The one floating-point corner of the package: the straight path from
i*c*1 to its unipotent translate maps, under the boundary chart, to a
circle of radius exp(-2 pi c), and an explicit homotopy contracts that
circle to a point without leaving the disc.  Larger c shrinks the disc.
"""

import math

from sp4cert import boundary_map, homotopy_h, section4_check, theta_path

c = 1.0

# The path: tau1 walks from i*c to 1 + i*c while tau3 stays put.
for t in (0.0, 0.5, 1.0):
    pt = theta_path(t, c)
    print(f"t={t:3.1f}  tau1={pt.tau1}  tau3={pt.tau3}")

# Under the chart the loop has constant modulus exp(-2 pi c).
radius = math.exp(-2 * math.pi * c)
zs = [boundary_map(theta_path(t, c)).z for t in (0.0, 0.25, 0.5, 0.75)]
print("\nloop moduli:", [f"{abs(z):.6e}" for z in zs], "radius:", f"{radius:.6e}")

# The homotopy interpolates between the loop (s=1) and the basepoint
# (s=0); its first component never leaves the closed disc.
for s in (1.0, 0.5, 0.0):
    z = homotopy_h(s, 0.25, c).z
    print(f"s={s:3.1f}  |z| = {abs(z):.6e}")

# The sampled checker wraps all of this with explicit tolerances.
print()
for line in section4_check(c, samples=1000, tol=1e-10).lines():
    print(line)

# Growing c tightens the disc: the radius is monotone decreasing.
radii = [(cc, section4_check(cc, samples=200, tol=1e-10).disc_radius)
         for cc in (0.5, 1.0, 2.0, 3.0)]
print("\nradii by c:", [(cc, f"{r:.3e}") for cc, r in radii])
