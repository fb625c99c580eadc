from itertools import permutations

import pytest
from sympy import primerange

from app.errors import DegenerateParameterError, FieldError
from app.ff import make_context
from app.ssec import (
    INFINITY,
    build_tables,
    cross_ratio_lambda,
    deuring_polynomial,
    is_supersingular_by_point_count,
    is_supersingular_j,
    is_supersingular_j_by_deuring,
    is_supersingular_legendre,
    is_supersingular_quartic,
    j_from_lambda,
    lambda_orbit,
)


def _ints(values):
    assert all(v.is_prime_field() for v in values)
    return [v.c0 for v in values]


class TestDeuringPolynomial:
    def test_at_seven(self, ctx7):
        assert _ints(deuring_polynomial(ctx7).coeffs) == [1, 2, 2, 1]

    @pytest.mark.parametrize("p", [7, 11, 13, 101, 997])
    def test_degree_and_constant_term(self, p):
        H = deuring_polynomial(make_context(p))
        assert H.degree == (p - 1) // 2
        assert H.coeff(0) == 1

    def test_legendre_examples(self, ctx7, ctx11):
        assert is_supersingular_legendre(ctx7.element(6))
        assert not is_supersingular_legendre(ctx7.element(3))
        assert is_supersingular_legendre(1 + ctx11.omega)

    def test_singular_parameters(self, ctx7):
        for lam in (0, 1):
            with pytest.raises(DegenerateParameterError):
                is_supersingular_legendre(ctx7.element(lam))

    @pytest.mark.parametrize("p", [7, 11])
    def test_agrees_with_point_counting(self, p):
        ctx = make_context(p)
        for lam in ctx.elements(start=2):
            assert is_supersingular_legendre(lam) == is_supersingular_by_point_count(lam)

    @pytest.mark.slow
    def test_agrees_with_point_counting_up_to_31(self):
        for p in primerange(13, 32):
            ctx = make_context(p)
            for lam in ctx.elements(start=2):
                assert is_supersingular_legendre(lam) == is_supersingular_by_point_count(lam), (p, lam)

    @pytest.mark.slow
    def test_agrees_with_point_counting_on_sampled_lambdas(self, rng):
        for p in primerange(37, 62):
            ctx = make_context(p)
            sample = [ctx.from_enc(rng.randrange(2, ctx.order)) for _ in range(20)]
            sample += rng.sample(build_tables(ctx).T, 5)
            for lam in sample:
                assert is_supersingular_legendre(lam) == is_supersingular_by_point_count(lam), (p, lam)

    @pytest.mark.exhaustive
    def test_agrees_with_point_counting_up_to_61(self):
        for p in primerange(37, 62):
            ctx = make_context(p)
            for lam in ctx.elements(start=2):
                assert is_supersingular_legendre(lam) == is_supersingular_by_point_count(lam), (p, lam)


class TestTables:
    def test_j_tables_at_small_primes(self, ctx7, ctx11):
        assert _ints(build_tables(ctx11).S) == [0, 1]
        assert _ints(build_tables(ctx7).S) == [6]
        assert len(build_tables(ctx7).T) == 3

    def test_lambda_count(self):
        for p in primerange(7, 200):
            tables = build_tables(make_context(p))
            assert len(tables.T) == (p - 1) // 2

    @pytest.mark.slow
    def test_lambda_count_on_sampled_primes(self, rng):
        for p in rng.sample(list(primerange(200, 1000)), 10):
            assert len(build_tables(make_context(p)).T) == (p - 1) // 2

    @pytest.mark.exhaustive
    def test_lambda_count_below_1000(self):
        for p in primerange(200, 1000):
            assert len(build_tables(make_context(p)).T) == (p - 1) // 2

    @pytest.mark.parametrize("p", [13, 31, 83])
    def test_closed_under_orbit_and_frobenius(self, p):
        tables = build_tables(make_context(p))
        for lam in tables.T:
            assert all(tables.has_lambda(mu) for mu in lambda_orbit(lam))
        for j in tables.S:
            assert tables.has_j(j.frobenius())

    def test_restricted_part_has_prime_field_j(self):
        tables = build_tables(make_context(37))
        assert 0 < len(tables.T_restricted) <= len(tables.T)
        for lam in tables.T_restricted:
            assert j_from_lambda(lam).is_prime_field()

    def test_j_membership(self, ctx7, ctx11):
        t11 = build_tables(ctx11)
        assert is_supersingular_j(ctx11.element(1), t11)
        assert not is_supersingular_j(ctx11.element(5), t11)
        assert not is_supersingular_j(ctx7.element(0), build_tables(ctx7))
        with pytest.raises(FieldError):
            is_supersingular_j(ctx7.element(0), t11)

    @pytest.mark.parametrize("p", [11, 13, 23])
    def test_deuring_j_test_matches_tables(self, p):
        ctx = make_context(p)
        tables = build_tables(ctx)
        for j in ctx.elements():
            assert is_supersingular_j_by_deuring(j) == tables.has_j(j)


class TestLambdaAndJ:
    def test_j_of_minus_one(self, ctx11):
        assert j_from_lambda(ctx11.element(-1)) == 1728

    def test_j_symmetry(self, ctx11):
        for lam in ctx11.elements(start=2):
            assert j_from_lambda(lam) == j_from_lambda(1 - lam)

    def test_sixth_roots_of_unity_have_j_zero(self, ctx11):
        assert j_from_lambda(1 + ctx11.omega) == 0
        assert j_from_lambda(-ctx11.omega) == 0

    def test_cross_ratio_identity(self, ctx11):
        lam = ctx11.element(4, 7)
        assert cross_ratio_lambda(ctx11.zero, ctx11.one, lam, INFINITY) == lam

    def test_cross_ratio_permutations_keep_j(self, ctx11):
        points = [ctx11.element(2), ctx11.element(5, 1), ctx11.element(0, 3), ctx11.element(9)]
        js = {j_from_lambda(cross_ratio_lambda(*perm)) for perm in permutations(points)}
        assert len(js) == 1

    def test_cross_ratio_needs_distinct_points(self, ctx11):
        a = ctx11.element(3)
        with pytest.raises(DegenerateParameterError):
            cross_ratio_lambda(a, a, ctx11.element(4), INFINITY)

    def test_quartic_with_legendre_points(self):
        ctx = make_context(13)
        tables = build_tables(ctx)
        lam = tables.T[0]
        assert is_supersingular_quartic([ctx.zero, ctx.one, lam, INFINITY], tables)
        assert is_supersingular_quartic([ctx.zero, ctx.one, lam, INFINITY])

    def test_quartic_with_fourth_roots_of_unity(self, ctx7):
        i = ctx7.element(-1).sqrt()
        roots = [ctx7.one, ctx7.element(-1), i, -i]
        assert cross_ratio_lambda(*roots) in (ctx7.element(-1), ctx7.element(2), ctx7.element(4))
        for perm in permutations(roots):
            assert is_supersingular_quartic(list(perm))
