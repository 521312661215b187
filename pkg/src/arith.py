"""
Exact integer utilities: gcd, integer square roots, deterministic primality,
factorization and the Kronecker symbol.

Python integers are arbitrary precision, so no intermediate product can
overflow; every function here is pure.
"""
import logging
import math
from collections import Counter
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import settings
from exceptions import UsageError

logger = logging.getLogger(__name__)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class PrimeFactorization(BaseModel):
    """Canonical factorization p_1^e_1 ... p_k^e_k, primes strictly ascending."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"factors": [[11, 2], [13, 3]]}},
    )

    factors: List[Tuple[int, int]] = Field(default_factory=list, description="(prime, exponent) pairs")

    @model_validator(mode="after")
    def _check_canonical(self) -> "PrimeFactorization":
        previous = 1
        for p, e in self.factors:
            if p <= previous:
                raise ValueError(f"primes must be strictly ascending, got {p} after {previous}")
            if e < 1:
                raise ValueError(f"exponent of {p} must be positive, got {e}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            previous = p
        return self

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    @property
    def value(self) -> int:
        """The integer this factorization recomposes to."""
        return math.prod(p**e for p, e in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def gcd(a: int, b: int) -> int:
    """Greatest common divisor, always nonnegative; gcd(0, 0) = 0."""
    return math.gcd(a, b)


def integer_sqrt(n: int) -> int:
    """Largest s with s*s <= n."""
    if n < 0:
        raise UsageError(f"integer_sqrt needs a nonnegative argument, got {n}")
    return math.isqrt(n)


def is_perfect_square(n: int) -> Optional[int]:
    """Return the exact square root of n, or None when n is not a square."""
    s = integer_sqrt(n)
    return s if s * s == n else None


def is_prime(n: int) -> bool:
    """
    Deterministic primality test.

    Trial division by a few small primes, then Miller-Rabin with a witness set
    that is exact below settings.MILLER_RABIN_LIMIT. Larger inputs are refused
    rather than answered probabilistically.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _SMALL_PRIMES[-1] ** 2:
        return True
    if n >= settings.MILLER_RABIN_LIMIT:
        raise UsageError(f"{n} exceeds the range where primality is decided exactly")

    num_twos = ((n - 1) & -(n - 1)).bit_length() - 1
    odd_part = (n - 1) >> num_twos
    for witness in settings.MILLER_RABIN_WITNESSES:
        x = pow(witness, odd_part, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(num_twos - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (Brent's cycle detection)."""
    for a in range(1, n):
        slow = 2
        fast = (slow * slow + a) % n
        count = 2
        while True:
            g = math.gcd(n, slow - fast)
            if g != 1:
                if g < n:
                    return g
                break
            if count & (count - 1) == 0:
                slow = fast
            fast = (fast * fast + a) % n
            count += 1
    raise AssertionError(f"pollard rho found no factor of {n}")


def _split_large(n: int, found: Counter) -> None:
    if n == 1:
        return
    if is_prime(n):
        found[n] += 1
        return
    factor = _pollard_rho(n)
    _split_large(factor, found)
    _split_large(n // factor, found)


def factorize(n: int) -> PrimeFactorization:
    """
    Factor n >= 1 into ascending prime powers.

    Trial division below settings.TRIAL_DIVISION_BOUND, Pollard rho above it.
    factorize(1) is the empty factorization.
    """
    if n < 1:
        raise UsageError(f"factorize needs a positive integer, got {n}")

    found: Counter = Counter()
    remaining = n
    d = 2
    while d < settings.TRIAL_DIVISION_BOUND and d * d <= remaining:
        while remaining % d == 0:
            found[d] += 1
            remaining //= d
        d += 1 if d == 2 else 2

    if remaining > 1:
        if remaining < d * d:
            found[remaining] += 1
        else:
            logger.debug(f"Falling back to Pollard rho for cofactor {remaining} of {n}")
            _split_large(remaining, found)

    return PrimeFactorization(factors=sorted(found.items()))


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n).factors)


def kronecker(a: int, n: int) -> int:
    """
    Kronecker symbol (a|n) for n >= 1.

    Equals the Legendre symbol when n is an odd prime, and is 0 whenever
    gcd(a, n) > 1. The factor (a|2) is 0 for even a, +1 for a = +-1 (mod 8)
    and -1 for a = +-3 (mod 8).
    """
    if n < 1:
        raise UsageError(f"kronecker needs a positive modulus, got {n}")
    if n == 1:
        return 1
    if a % 2 == 0 and n % 2 == 0:
        return 0

    result = 1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos % 2 == 1 and a % 8 in (3, 5):
        result = -result

    # Jacobi symbol for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
