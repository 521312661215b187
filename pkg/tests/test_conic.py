import pytest
import sys
import os
import random

# Add src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from pydantic import ValidationError

from conic import (
    conjugate,
    count_normalized,
    enumerate_normalized,
    factor_element,
    gamma_orbit,
    identity,
    multiply,
    negate,
    power,
    reconstruct,
    sign_vector_products,
    splits,
    to_triple,
    unique_prime_solution,
    zeta,
)
from exceptions import (
    DataError,
    HypothesisError,
    InapplicableDiscriminantError,
    LemmaViolation,
    UsageError,
)
from paper_data import PAPER_TABLES
from schemas import FactorizationResult, GroupElement, Triple, ZetaPower


def element(D, a, b, c):
    return GroupElement(D=D, a=a, b=b, c=c)


def powers(*pairs):
    return [ZetaPower(p=p, e=e) for p, e in pairs]


class TestGenerators:
    """Test the generators zeta_p."""

    @pytest.mark.parametrize("p,a,b", [(11, 4, 1), (13, 8, 1), (19, 16, 1)])
    def test_d_105_generators(self, p, a, b):
        """Test the three D = 105 generators."""
        assert unique_prime_solution(105, p) == (a, b)
        assert zeta(105, p).element == element(105, a, b, p)

    def test_d_1_generators(self):
        """Test the unit-circle generators are ordered a <= b."""
        assert unique_prime_solution(1, 5) == (3, 4)
        assert unique_prime_solution(1, 13) == (5, 12)
        assert unique_prime_solution(1, 17) == (8, 15)

    def test_symbol_not_one(self):
        """Test primes with (-D/p) != 1 are outside the hypotheses."""
        with pytest.raises(HypothesisError):
            unique_prime_solution(105, 5)
        with pytest.raises(HypothesisError):
            unique_prime_solution(105, 17)
        with pytest.raises(HypothesisError):
            unique_prime_solution(1, 3)

    @pytest.mark.parametrize("p", [2, 15, 1, -11])
    def test_not_an_odd_prime(self, p):
        """Test p must be an odd prime."""
        with pytest.raises(UsageError):
            unique_prime_solution(105, p)

    def test_inapplicable_d(self):
        """Test D = 14 is refused unless overridden."""
        with pytest.raises(InapplicableDiscriminantError) as exc:
            unique_prime_solution(14, 3)
        assert "--unverified-D" in str(exc.value)

    def test_unverified_d_can_violate_uniqueness(self):
        """Test the override exposes a prime with no principal solution."""
        with pytest.raises(LemmaViolation):
            unique_prime_solution(14, 3, unverified=True)

    def test_splits(self):
        """Test which primes carry a generator."""
        assert splits(105, 11)
        assert not splits(105, 2)
        assert not splits(105, 5)
        assert [p for p in range(2, 30) if splits(1, p)] == [5, 13, 17, 29]


class TestGroupLaw:
    """Test multiplication in G_D(Q)."""

    def test_zeta_11_zeta_13(self):
        """Test (4+sqrt(-105))(8+sqrt(-105)) / 143."""
        z = multiply(zeta(105, 11).element, zeta(105, 13).element)
        assert z == element(105, -73, 12, 143)

    def test_pythagorean(self):
        """Test (3,4,5)^2 and (3,4,5)*(5,12,13)."""
        a = element(1, 3, 4, 5)
        assert to_triple(power(a, 2)) == Triple(D=1, a=7, b=24, c=25)
        assert to_triple(multiply(a, element(1, 5, 12, 13))) == Triple(D=1, a=33, b=56, c=65)

    def test_multiply_reduces(self):
        """Test products come back with gcd(a, b) = 1."""
        z = zeta(105, 11).element
        assert multiply(z, conjugate(z)) == identity(105)

    def test_mismatched_d(self):
        """Test elements of different groups cannot be multiplied."""
        with pytest.raises(UsageError):
            multiply(identity(105), identity(1))

    @pytest.mark.parametrize("D", [1, 2, 5, 6, 105])
    def test_group_axioms(self, D):
        """Test norm, identity, inverses, associativity and commutativity on random zeta-products."""
        rng = random.Random(D)
        gens = [zeta(D, p).element for p in range(3, 80) if splits(D, p)]
        for _ in range(200):
            x, y, z = (power(rng.choice(gens), rng.randint(-3, 3)) for _ in range(3))
            xy = multiply(x, y)
            assert xy.a ** 2 + D * xy.b ** 2 == xy.c ** 2
            assert multiply(x, identity(D)) == x
            assert multiply(x, conjugate(x)) == identity(D)
            assert multiply(x, y) == multiply(y, x)
            assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))

    def test_power(self):
        """Test exponents zero, negative and large."""
        z = zeta(105, 11).element
        assert power(z, 0) == identity(105)
        assert power(z, -1) == conjugate(z)
        assert power(z, 2) == multiply(z, z)
        assert power(z, 5).c == 11 ** 5

    def test_norm_relation_enforced(self):
        """Test a point off the conic is rejected."""
        with pytest.raises(ValidationError):
            element(105, 1, 1, 2)
        with pytest.raises(ValidationError):
            element(105, 2, 0, 2)


class TestTriples:
    """Test the collapse of points to normalized triples."""

    def test_trivial_point(self):
        """Test +-1 have no normalized triple."""
        with pytest.raises(DataError):
            to_triple(identity(105))
        with pytest.raises(DataError):
            to_triple(negate(identity(105)))
        with pytest.raises(DataError):
            to_triple(element(1, 0, 1, 1))

    def test_gamma_orbit_d_105(self):
        """Test the orbit has four points and one triple."""
        z = element(105, -73, 12, 143)
        orbit = gamma_orbit(z)
        assert len(orbit) == 4
        assert {to_triple(w) for w in orbit} == {Triple(D=105, a=73, b=12, c=143)}

    def test_gamma_orbit_d_1(self):
        """Test the unit-circle orbit picks up the unit i."""
        orbit = gamma_orbit(element(1, 3, 4, 5))
        assert len(orbit) == 8
        assert {to_triple(w) for w in orbit} == {Triple(D=1, a=3, b=4, c=5)}


class TestFactorization:
    """Test factorization into generators."""

    def test_zeta_13_zeta_19(self):
        """Test (23+24*sqrt(-105))/247."""
        result = factor_element(element(105, 23, 24, 247))
        assert result.sign == 1
        assert result.factors == powers((13, 1), (19, 1))

    def test_three_primes(self):
        """Test (92-265*sqrt(-105))/2717."""
        result = factor_element(element(105, 92, -265, 2717))
        assert result.sign == 1
        assert result.factors == powers((11, -1), (13, -1), (19, 1))

    def test_negative_sign(self):
        """Test (73+12*sqrt(-105))/143 = -zeta11^-1 zeta13^-1."""
        result = factor_element(element(105, 73, 12, 143))
        assert result.sign == -1
        assert result.factors == powers((11, -1), (13, -1))

    def test_identity_and_minus_one(self):
        """Test the units factor as empty products."""
        assert factor_element(identity(105)) == FactorizationResult(D=105, sign=1, factors=[])
        assert factor_element(negate(identity(105))) == FactorizationResult(D=105, sign=-1, factors=[])

    def test_unit_i(self):
        """Test D = 1 elements can end on the unit i."""
        assert factor_element(element(1, 0, 1, 1)) == FactorizationResult(D=1, sign=1, unit_i=True)
        result = factor_element(element(1, 4, 3, 5))
        assert result.unit_i
        assert reconstruct(result) == element(1, 4, 3, 5)

    def test_prime_power(self):
        """Test exponent magnitudes match the denominator."""
        z = multiply(power(zeta(105, 11).element, -2), power(zeta(105, 13).element, 3))
        assert z == element(105, 251792, 8321, 265837)
        result = factor_element(z)
        assert result.sign == 1
        assert result.factors == powers((11, -2), (13, 3))

    def test_denominator_prime_must_split(self):
        """Test a denominator prime with symbol != 1 is outside the hypotheses."""
        with pytest.raises(HypothesisError):
            factor_element(element(3, 1, 1, 2), unverified=True)
        with pytest.raises(InapplicableDiscriminantError):
            factor_element(element(3, 1, 1, 2))

    def test_round_trip_d_105(self):
        """Test factor/reconstruct on 10^4 random zeta-products."""
        rng = random.Random(105)
        split = [p for p in range(3, 200) if splits(105, p)]
        for _ in range(10 ** 4):
            primes = sorted(rng.sample(split, rng.randint(1, 3)))
            exponents = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in primes]
            result = FactorizationResult(
                D=105, sign=rng.choice([1, -1]), factors=powers(*zip(primes, exponents))
            )
            z = reconstruct(result)
            assert z.c == result.denominator
            assert factor_element(z) == result

    def test_round_trip_d_1(self):
        """Test factor/reconstruct with all four units of Z[i]."""
        rng = random.Random(1)
        split = [p for p in range(3, 100) if splits(1, p)]
        for _ in range(500):
            primes = sorted(rng.sample(split, rng.randint(1, 3)))
            result = FactorizationResult(
                D=1,
                sign=rng.choice([1, -1]),
                unit_i=rng.choice([True, False]),
                factors=powers(*((p, rng.choice([-2, -1, 1, 2])) for p in primes)),
            )
            assert factor_element(reconstruct(result)) == result


class TestEnumeration:
    """Test enumeration and counting of normalized solutions."""

    @pytest.mark.parametrize("table", PAPER_TABLES, ids=lambda t: t.name)
    def test_d_105_tables(self, table):
        """Test every table's solution set, count and product list."""
        solutions = enumerate_normalized(105, table.c)
        assert {(s.triple.a, s.triple.b) for s in solutions} == {tuple(s) for s in table.solutions}
        assert len(solutions) == table.expected_count == count_normalized(105, table.c)
        products = [([f.e for f in e], z.a, z.b) for e, z in sign_vector_products(105, table.c)]
        assert products == [(g.exponents, g.a, g.b) for g in table.products]

    def test_table_1_readings(self):
        """Test representative and coset factorizations for c = 143."""
        first, second = enumerate_normalized(105, 143)
        assert first.triple == Triple(D=105, a=73, b=12, c=143)
        assert first.representative.sign == -1
        assert first.representative.factors == powers((11, -1), (13, -1))
        assert first.coset.factors == powers((11, 1), (13, 1))
        assert second.triple == Triple(D=105, a=137, b=4, c=143)
        assert second.representative.factors == powers((11, 1), (13, -1))
        assert second.coset.factors == powers((11, 1), (13, -1))

    def test_exponent_magnitudes(self):
        """Test exponent magnitudes are the prime multiplicities of c."""
        for s in enumerate_normalized(105, 265837):
            assert [abs(f.e) for f in s.representative.factors] == [2, 3]
            assert [f.p for f in s.representative.factors] == [11, 13]

    def test_products_collapse_onto_solutions(self):
        """Test every sign-vector product lands on a listed triple."""
        triples = {s.triple for s in enumerate_normalized(105, 2717)}
        assert {to_triple(z) for _, z in sign_vector_products(105, 2717)} == triples

    def test_empty_when_a_prime_does_not_split(self):
        """Test c with an inert or ramified prime has no solutions."""
        assert count_normalized(105, 10) == 0
        assert enumerate_normalized(105, 10) == []
        assert sign_vector_products(105, 10) == []
        assert count_normalized(105, 5 * 11) == 0

    @pytest.mark.parametrize("c", [3, 9, 21])
    def test_unit_circle_empty(self, c):
        """Test c with a prime factor 3 mod 4 has no Pythagorean triples."""
        assert count_normalized(1, c) == 0
        assert enumerate_normalized(1, c) == []

    def test_unit_circle(self):
        """Test Pythagorean triples with c = 25 and c = 65."""
        assert [s.triple for s in enumerate_normalized(1, 25)] == [Triple(D=1, a=7, b=24, c=25)]
        assert [(s.triple.a, s.triple.b) for s in enumerate_normalized(1, 65)] == [(16, 63), (33, 56)]
        assert count_normalized(1, 5 * 13 * 17) == 4

    def test_count_law(self):
        """Test 2^(k-1) solutions whenever every prime of c splits."""
        for c in (11, 121, 143, 11 * 13 * 19 * 31, 11 ** 3 * 41):
            k = len({p for p in (11, 13, 19, 31, 41) if c % p == 0})
            assert count_normalized(105, c) == 2 ** (k - 1)
            assert len(enumerate_normalized(105, c)) == 2 ** (k - 1)

    def test_sorted_by_a(self):
        """Test solutions come out ascending by a."""
        triples = [s.triple for s in enumerate_normalized(105, 2717)]
        assert [(t.a, t.b) for t in triples] == [(92, 265), (1772, 201), (2428, 119), (2612, 73)]

    @pytest.mark.parametrize("c", [1, 0, -5])
    def test_c_too_small(self, c):
        """Test c <= 1 is a usage error."""
        with pytest.raises(UsageError):
            enumerate_normalized(105, c)
        with pytest.raises(UsageError):
            count_normalized(105, c)

    def test_inapplicable_d_refused(self):
        """Test enumeration refuses D = 14 without the override."""
        with pytest.raises(InapplicableDiscriminantError):
            enumerate_normalized(14, 15)
