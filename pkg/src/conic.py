"""
The group G_D(Q) of rational points on x^2 + D*y^2 = 1.

Elements are stored as reduced (a + b*sqrt(-D)) / c. When D passes the
applicability test, G_D(Q) = {+-1} x F with F free on the generators zeta_p,
one per odd prime p with (-D/p) = 1 (for D = 1 the units are {1, i, -1, -i}).
Every operation that relies on that structure takes an `unverified` flag which
skips the applicability gate; the results then carry no guarantee.
"""
import logging
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

from arith import factorize, gcd, integer_sqrt, is_perfect_square, is_prime, kronecker
from exceptions import (
    DataError,
    FactorizationFailed,
    HypothesisError,
    InapplicableDiscriminantError,
    InvariantViolation,
    LemmaViolation,
    UsageError,
)
from quadform import is_theorem_applicable
from schemas import FactorizationResult, GroupElement, NormalizedSolution, Triple, ZetaGenerator, ZetaPower

logger = logging.getLogger(__name__)

GeneratorSource = Callable[[int, int], ZetaGenerator]


def _require_applicable(D: int, unverified: bool) -> None:
    if D < 1:
        raise UsageError(f"D must be a positive integer, got {D}")
    if unverified:
        return
    verdict = is_theorem_applicable(D)
    if not verdict.applicable:
        raise InapplicableDiscriminantError(D, verdict.reasons)


def splits(D: int, p: int) -> bool:
    """True for odd primes p with (-D/p) = 1, the primes that carry a generator."""
    return p > 2 and is_prime(p) and kronecker(-D, p) == 1


def _p_exponent(n: int, p: int) -> int:
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


@lru_cache(maxsize=None)
def _scan_prime_solution(D: int, p: int) -> Tuple[int, int]:
    """Exhaustive scan for the unique a, b > 0 with a^2 + D*b^2 = p^2 and gcd(a, b) = 1."""
    target = p * p
    found = []
    for b in range(1, integer_sqrt((target - 1) // D) + 1):
        a = is_perfect_square(target - D * b * b)
        if not a or gcd(a, b) != 1:
            continue
        if D == 1 and a > b:
            continue
        found.append((a, b))
        if len(found) > 1:
            raise LemmaViolation(f"two normalized solutions with z = {p} for D = {D}: {found}")
    if not found:
        raise LemmaViolation(f"no normalized solution with z = {p} for D = {D} although (-D/p) = 1")
    return found[0]


def unique_prime_solution(D: int, p: int, unverified: bool = False) -> Tuple[int, int]:
    """
    The unique normalized solution (a, b, p) of x^2 + D*y^2 = z^2.

    For D = 1 the pair is ordered a <= b.
    """
    if p <= 2 or not is_prime(p):
        raise UsageError(f"{p} is not an odd prime")
    _require_applicable(D, unverified)
    symbol = kronecker(-D, p)
    if symbol != 1:
        raise HypothesisError(f"(-{D}/{p}) = {symbol}: {p} is outside the theorem hypotheses")
    return _scan_prime_solution(D, p)


def zeta(D: int, p: int, unverified: bool = False) -> ZetaGenerator:
    a, b = unique_prime_solution(D, p, unverified=unverified)
    return ZetaGenerator(D=D, p=p, element=GroupElement(D=D, a=a, b=b, c=p))


def _default_generators(D: int, p: int) -> ZetaGenerator:
    return zeta(D, p, unverified=True)


def identity(D: int) -> GroupElement:
    return GroupElement(D=D, a=1, b=0, c=1)


def multiply(z1: GroupElement, z2: GroupElement) -> GroupElement:
    if z1.D != z2.D:
        raise UsageError(f"cannot multiply elements of G_{z1.D} and G_{z2.D}")
    D = z1.D
    a = z1.a * z2.a - D * z1.b * z2.b
    b = z1.a * z2.b + z2.a * z1.b
    c = z1.c * z2.c
    # the norm relation forces g to divide c
    g = gcd(a, b)
    return GroupElement(D=D, a=a // g, b=b // g, c=c // g)


def conjugate(z: GroupElement) -> GroupElement:
    return GroupElement(D=z.D, a=z.a, b=-z.b, c=z.c)


def negate(z: GroupElement) -> GroupElement:
    return GroupElement(D=z.D, a=-z.a, b=-z.b, c=z.c)


def power(z: GroupElement, n: int) -> GroupElement:
    if n < 0:
        return power(conjugate(z), -n)
    result = identity(z.D)
    base = z
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def to_triple(z: GroupElement) -> Triple:
    """Collapse a point to its normalized positive triple; all Gamma images (and unit multiples for D = 1) agree."""
    if z.b == 0 or z.a == 0:
        raise DataError(f"{z} is a trivial point; it has no normalized positive triple")
    a, b = abs(z.a), abs(z.b)
    if z.D == 1 and a > b:
        a, b = b, a
    return Triple(D=z.D, a=a, b=b, c=z.c)


def gamma_orbit(z: GroupElement) -> List[GroupElement]:
    """z, its conjugate and their negatives; for D = 1 also their products with i."""
    orbit = [z, conjugate(z), negate(z), negate(conjugate(z))]
    if z.D == 1:
        i = GroupElement(D=1, a=0, b=1, c=1)
        orbit += [multiply(i, w) for w in orbit]
    distinct: List[GroupElement] = []
    for w in orbit:
        if w not in distinct:
            distinct.append(w)
    return distinct


def reconstruct(result: FactorizationResult, generators: Optional[GeneratorSource] = None) -> GroupElement:
    """sign * (i if unit_i) * prod zeta_p^e."""
    source = generators or _default_generators
    z = identity(result.D)
    for f in result.factors:
        z = multiply(z, power(source(result.D, f.p).element, f.e))
    if result.unit_i:
        z = multiply(z, GroupElement(D=1, a=0, b=1, c=1))
    return negate(z) if result.sign < 0 else z


def factor_element(
    z: GroupElement,
    unverified: bool = False,
    generators: Optional[GeneratorSource] = None,
) -> FactorizationResult:
    """
    Write z = +-zeta_{p_1}^{e_1} ... zeta_{p_k}^{e_k} with |e_i| the exponent of p_i in z.c.

    Generators are peeled off one at a time: multiplying by zeta_p^{-1} lowers
    the exponent of p in the denominator exactly when e_p > 0, otherwise
    multiplying by zeta_p does.
    """
    D = z.D
    _require_applicable(D, unverified)
    source = generators or _default_generators

    denominator = factorize(z.c)
    for p in denominator.primes:
        if not splits(D, p):
            raise HypothesisError(
                f"prime {p} of the denominator {z.c} has (-{D}/{p}) = {kronecker(-D, p)}: outside theorem hypotheses"
            )

    current = z
    powers: List[ZetaPower] = []
    for p, alpha in denominator.factors:
        generator = source(D, p).element
        inverse = conjugate(generator)
        e = 0
        for remaining in range(alpha, 0, -1):
            peeled = multiply(current, inverse)
            if _p_exponent(peeled.c, p) == remaining - 1:
                e += 1
            else:
                peeled = multiply(current, generator)
                if _p_exponent(peeled.c, p) != remaining - 1:
                    raise FactorizationFailed(f"could not peel zeta_{p} off {current} (D = {D})")
                e -= 1
            current = peeled
        if abs(e) != alpha:
            raise FactorizationFailed(f"exponent of zeta_{p} in {z} came out as {e}, expected +-{alpha}")
        powers.append(ZetaPower(p=p, e=e))

    if current.c != 1:
        raise FactorizationFailed(f"{z} left a non-unit remainder {current}")
    if current.b == 0:
        result = FactorizationResult(D=D, sign=current.a, factors=powers)
    else:
        result = FactorizationResult(D=D, sign=current.b, unit_i=True, factors=powers)

    if reconstruct(result, source) != z:
        raise FactorizationFailed(f"factorization of {z} does not reconstruct it")
    return result


def _split_denominator(D: int, c: int) -> Optional[List[Tuple[int, int]]]:
    """Prime powers of c, or None when some prime of c does not split."""
    factors = factorize(c).factors
    for p, _ in factors:
        if not splits(D, p):
            logger.debug(f"c={c}: prime {p} does not split for D={D}")
            return None
    return factors


def sign_vector_products(
    D: int,
    c: int,
    unverified: bool = False,
    generators: Optional[GeneratorSource] = None,
) -> List[Tuple[List[ZetaPower], GroupElement]]:
    """
    Every product prod zeta_{p_i}^{eps_i n_i} for c = prod p_i^{n_i}.

    The sign of the smallest prime varies fastest. Empty when some prime of c
    does not split.
    """
    if c <= 1:
        raise UsageError(f"c must exceed 1, got {c}")
    _require_applicable(D, unverified)
    source = generators or _default_generators

    factors = _split_denominator(D, c)
    if factors is None:
        return []

    positive = [power(source(D, p).element, n) for p, n in factors]
    products = []
    for mask in range(2 ** len(factors)):
        z = identity(D)
        exponents = []
        for i, ((p, n), w) in enumerate(zip(factors, positive)):
            if mask >> i & 1:
                z = multiply(z, conjugate(w))
                exponents.append(ZetaPower(p=p, e=-n))
            else:
                z = multiply(z, w)
                exponents.append(ZetaPower(p=p, e=n))
        products.append((exponents, z))
    return products


def enumerate_normalized(
    D: int,
    c: int,
    unverified: bool = False,
    generators: Optional[GeneratorSource] = None,
) -> List[NormalizedSolution]:
    """
    All normalized solutions (a, b, c), ascending by a.

    One solution per sign vector with the smallest prime's sign fixed to +1,
    so 2^(k-1) of them when every prime of c splits and none otherwise.
    """
    if c <= 1:
        raise UsageError(f"c must exceed 1, got {c}")
    _require_applicable(D, unverified)
    source = generators or _default_generators

    solutions: List[NormalizedSolution] = []
    seen = set()
    for exponents, z in sign_vector_products(D, c, unverified=True, generators=source):
        if exponents[0].e < 0:
            continue
        triple = to_triple(z)
        if triple in seen:
            raise InvariantViolation(f"sign vectors produced the triple {triple} twice (D = {D}, c = {c})")
        seen.add(triple)
        element = GroupElement(D=D, a=triple.a, b=triple.b, c=triple.c)
        solutions.append(
            NormalizedSolution(
                triple=triple,
                element=element,
                representative=factor_element(element, unverified=True, generators=source),
                coset=FactorizationResult(D=D, sign=1, factors=exponents),
            )
        )

    solutions.sort(key=lambda s: s.triple.a)
    logger.debug(f"D={D}, c={c}: {len(solutions)} normalized solutions")
    return solutions


def count_normalized(D: int, c: int, unverified: bool = False) -> int:
    if c <= 1:
        raise UsageError(f"c must exceed 1, got {c}")
    _require_applicable(D, unverified)
    factors = _split_denominator(D, c)
    if factors is None:
        return 0
    return 2 ** (len(factors) - 1)
