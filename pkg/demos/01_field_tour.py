import numpy as np

from paley_ricci import build_field

# GF(81) as polynomials over GF(3) modulo the smallest monic irreducible quartic.
# Elements are integers 0..80: the base-3 digits, lowest first, are the coefficients.
F = build_field(3, 4)
print("q =", F.q)
print("modulus coefficients (c0..c4):", F.modulus)
print("theta (smallest primitive element):", F.theta, F.element(F.theta).coeffs)

# arithmetic is vectorized over index arrays
a = np.array([5, 17, 40])
b = np.array([2, 2, 79])
print("a + b =", F.add(a, b))
print("a * b =", F.mul(a, b))
print("a / b =", F.div(a, b))

# the log table and the plain polynomial product agree
print("mul table vs poly:", F.mul(17, 40), F.mul_poly(17, 40))

# coordinates in the basis 1, theta, theta^2, theta^3
x = 57
print("theta coords of", x, "=", F.theta_coords[x])
print("back again:", F.from_theta_coords(F.theta_coords[x]))

# GF(9) sits inside GF(81) as the fixed points of x -> x^9
print("GF(9) inside GF(81):", F.subfield_elements(2))
