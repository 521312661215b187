"""Golden data for verify-paper: the C(-420) class list, the D = 105 generators and five solution tables."""
from schemas import GoldenBijection, GoldenProduct, GoldenTable

PAPER_D = 105

# Reduced forms of discriminant -420 in the order they are usually listed
PAPER_FORMS = [
    (1, 0, 105), (3, 0, 35), (5, 0, 21), (7, 0, 15),
    (2, 2, 53), (6, 6, 19), (11, 8, 11), (10, 10, 13),
]

PAPER_GENERATORS = {11: (4, 1), 13: (8, 1), 19: (16, 1)}

# Euler's convenient numbers that are listed as the known D for which the count holds.
# 8 is listed although it is neither squarefree nor 1, 2 (mod 4).
KNOWN_CONVENIENT_D = [
    1, 2, 5, 6, 8, 10, 13, 21, 22, 30, 33, 37, 42, 57, 58, 70, 78, 85, 93, 102,
    105, 130, 133, 165, 177, 190, 210, 253, 273, 330, 345, 357, 385, 462, 1365,
]


def _table(name, c, primes, expected_count, solutions, products, bijection):
    return GoldenTable(
        name=name,
        D=PAPER_D,
        c=c,
        primes=primes,
        expected_count=expected_count,
        solutions=[list(s) for s in solutions],
        products=[GoldenProduct(exponents=list(e), a=a, b=b) for e, a, b in products],
        bijection=[GoldenBijection(sign=s, exponents=list(e), a=a, b=b) for s, e, (a, b) in bijection],
    )


PAPER_TABLES = [
    _table(
        "table 1", 143, [11, 13], 2,
        [(73, 12), (137, 4)],
        [((1, 1), -73, 12), ((-1, 1), 137, -4), ((1, -1), 137, 4), ((-1, -1), -73, -12)],
        [(-1, (-1, -1), (73, 12)), (1, (1, -1), (137, 4))],
    ),
    _table(
        "table 2", 247, [13, 19], 2,
        [(23, 24), (233, 8)],
        [((1, 1), 23, 24), ((-1, 1), 233, -8), ((1, -1), 233, 8), ((-1, -1), 23, -24)],
        [(1, (1, 1), (23, 24)), (1, (1, -1), (233, 8))],
    ),
    _table(
        "table 3", 209, [11, 19], 2,
        [(41, 20), (169, 12)],
        [((1, 1), -41, 20), ((-1, 1), 169, -12), ((1, -1), 169, 12), ((-1, -1), -41, -20)],
        [(-1, (-1, -1), (41, 20)), (1, (1, -1), (169, 12))],
    ),
    # The printed bijection row for (251792, 8321) carries a leading minus; the
    # factorization row and direct multiplication both give +zeta11^-2 zeta13^3.
    _table(
        "table 4", 265837, [11, 13], 2,
        [(251792, 8321), (105632, 23807)],
        [((2, 3), 105632, -23807), ((-2, 3), 251792, 8321), ((2, -3), 251792, -8321), ((-2, -3), 105632, 23807)],
        [(1, (-2, 3), (251792, 8321)), (1, (-2, -3), (105632, 23807))],
    ),
    _table(
        "table 5", 2717, [11, 13, 19], 4,
        [(2612, 73), (2428, 119), (1772, 201), (92, 265)],
        [
            ((1, 1, 1), -2428, 119), ((-1, 1, 1), 2612, 73),
            ((1, -1, 1), 1772, 201), ((-1, -1, 1), 92, -265),
            ((1, 1, -1), 92, 265), ((-1, 1, -1), 1772, -201),
            ((1, -1, -1), 2612, -73), ((-1, -1, -1), -2428, -119),
        ],
        [
            (1, (-1, 1, 1), (2612, 73)), (-1, (-1, -1, -1), (2428, 119)),
            (1, (1, -1, 1), (1772, 201)), (1, (1, 1, -1), (92, 265)),
        ],
    ),
]

# x^2 + y^2 = z^2: zeta_{3,4,5}^2 and zeta_{3,4,5} * zeta_{5,12,13}
PYTHAGOREAN_CHECKS = [
    ("(3,4,5)^2", [(3, 4, 5), (3, 4, 5)], (7, 24, 25)),
    ("(3,4,5)*(5,12,13)", [(3, 4, 5), (5, 12, 13)], (33, 56, 65)),
]
