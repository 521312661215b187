"""
Conic toolkit: rational points on x^2 + D*y^2 = z^2, the class group C(-4D)
and the factorization of solutions into the generators zeta_p.
"""
