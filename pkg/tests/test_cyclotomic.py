from fractions import Fraction

from quantaequiv.cyclotomic import cyclotomic_polynomial, phase_sum_is_zero


def test_low_order_polynomials_frozen():
    # classical tables
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_poly_degree_is_totient():
    def totient(n):
        return sum(1 for k in range(1, n + 1) if __import__("math").gcd(k, n) == 1)

    for n in range(1, 40):
        assert len(cyclotomic_polynomial(n)) - 1 == totient(n)


def test_zero_sum_of_cube_roots():
    # 1 + e^{2 i pi / 3} + e^{4 i pi / 3} = 0
    terms = {Fraction(0): Fraction(1), Fraction(2, 3): Fraction(1), Fraction(4, 3): Fraction(1)}
    assert phase_sum_is_zero(terms)


def test_pi_and_zero_phases():
    assert phase_sum_is_zero({Fraction(0): Fraction(1), Fraction(1): Fraction(1)})
    assert not phase_sum_is_zero({Fraction(0): Fraction(1), Fraction(1): Fraction(-1)})
    assert phase_sum_is_zero({})
    assert phase_sum_is_zero({Fraction(1, 7): Fraction(0)})


def test_fifth_roots_relation():
    # sum of all primitive fifth roots of unity is -1
    terms = {Fraction(2 * k, 5): Fraction(1) for k in range(1, 5)}
    terms[Fraction(0)] = Fraction(1)
    assert phase_sum_is_zero(terms)
    terms[Fraction(0)] = Fraction(2)
    assert not phase_sum_is_zero(terms)


def test_nonvanishing_generic_sum():
    terms = {Fraction(1, 6): Fraction(1), Fraction(1, 4): Fraction(-2), Fraction(0): Fraction(3, 7)}
    assert not phase_sum_is_zero(terms)


def test_numeric_agreement_on_random_sums():
    import cmath
    import random

    rng = random.Random(20260816)
    for _ in range(200):
        n_terms = rng.randint(1, 4)
        terms = {}
        for _ in range(n_terms):
            s = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
            amp = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
            terms[s] = terms.get(s, Fraction(0)) + amp
        value = sum(
            float(a) * cmath.exp(1j * cmath.pi * float(s)) for s, a in terms.items()
        )
        assert phase_sum_is_zero(terms) == (abs(value) < 1e-9), terms
