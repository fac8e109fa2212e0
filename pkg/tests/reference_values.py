"""Frozen reference numbers for the test suite.

Bessel-determinant roots were computed once with mpmath at 40 digits
(``findroot`` on ``sqrt(n) j_l'(sqrt(n) k) j_l(k) - j_l'(k) j_l(sqrt(n) k)``
with ``j_l`` built from ``besselj`` of half-integer order), independently of
the package, and rounded to double precision here.
"""

# (l, n) -> all roots with k below the listed bound, R = 1
EXACT_TE_ROOTS = {
    (1, 16.0): (1.460855902076010021, 2.3092706746835470306, 3.1415926535897932385, 4.0283123763707046077),
    (2, 16.0): (1.7640424220293383676, 2.6316782578094204248, 3.4652362241795557534, 4.2935829198669442163),
    (3, 16.0): (2.0610504330159933919, 2.9494882156594820847, 3.7922964582054141014, 4.6198870582538974488),
    (1, 0.25): (6.2831853071795864769, 12.566370614359172954),
    (2, 0.25): (7.3848906992290136297,),
    (3, 0.25): (8.5233655506382147301, 12.746671131107250493),
    (1, 4.0): (3.1415926535897932385,),
}
ROOT_BOUND = {16.0: 4.8, 0.25: 13.0, 4.0: 6.0}

# j_1(1) = sin 1 - cos 1
J1_AT_ONE = 0.3011686789397568
