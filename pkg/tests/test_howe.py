import pytest
from sympy import primerange

from app.certify import verify
from app.certify.codec import decode_block
from app.errors import ConfigurationError, DegenerateParameterError, EnumerationBoundError
from app.ff import make_context
from app.genus2 import case2_j, case3_j, g_polynomial, h_polynomial, is_superspecial_g2, rosenhain_model
from app.howe import SearchConfig, get_engine_class, search, strategies_for
from app.howe.genus4 import genus4_conditions, genus4_lambdas, genus4_st_from_lambdas
from app.howe.genus5 import solve_case3_j_equation
from app.howe.genus6 import cube_root, genus6_e3_j, solve_case2_j_equation
from app.howe.pairs import enumerate_superspecial_rosenhain
from app.ssec import build_tables, j_from_lambda

GENUS4_EXCEPTIONS = {13, 19, 73}
GENUS5_EXCEPTIONS = {7, 11, 13, 17, 19, 37, 53, 89, 97, 101, 137}
GENUS6_EXCEPTIONS = {7, 11, 19, 37, 43, 61, 67, 79, 97, 109, 127, 151, 157, 223, 229, 283, 313, 331, 337, 373, 571}


def _params(cert):
    return decode_block(make_context(cert.p, cert.minpoly), cert.params)


class TestRegistry:
    def test_strategies(self):
        assert sorted(strategies_for(4)) == ["auto", "cor", "naive"]
        assert sorted(strategies_for(5)) == ["auto", "jpairs", "naive", "pairs"]
        assert sorted(strategies_for(6)) == ["auto", "jpairs", "naive", "pairs"]

    def test_invalid_combinations(self):
        with pytest.raises(ConfigurationError):
            get_engine_class(4, "jpairs")
        with pytest.raises(ConfigurationError):
            get_engine_class(7)


class TestGenus4Parameters:
    def test_hand_computed_example(self, ctx11):
        s, t = genus4_st_from_lambdas(ctx11.element(2), ctx11.element(3))
        assert (s, t) == (4, 9)
        lam1, lam3, lam4 = genus4_lambdas(s, t)
        assert (lam1, lam3) == (2, 3)
        assert lam4 == ctx11.element(3) / 81
        assert lam3 / lam4 == t * t

    def test_identities(self, rng):
        ctx = make_context(101)
        checked = 0
        while checked < 100:
            lam1 = ctx.from_enc(rng.randrange(ctx.order))
            lam3 = ctx.from_enc(rng.randrange(ctx.order))
            try:
                s, t = genus4_st_from_lambdas(lam1, lam3)
            except DegenerateParameterError:
                continue
            d = lam1 * lam1 - 2 * lam1 + lam3
            assert (s - 1) * d == 2 * (lam1 - lam3)
            assert (s + 1) * d == 2 * lam1 * (lam1 - 1)
            assert (t - 1) * d == 2 * (lam1 - 1) * (lam3 - lam1)
            assert (t + 1) * d == 2 * lam1 * (lam3 - 1)
            assert (s - t) * d == 2 * lam1 * (lam1 - lam3)
            assert (s + t) * d == 2 * lam3 * (lam1 - 1)
            assert genus4_lambdas(s, t)[:2] == (lam1, lam3)
            checked += 1

    def test_degenerate_pairs(self, ctx11):
        lam1 = ctx11.element(2)
        lam3 = -(lam1 * lam1) + 2 * lam1
        assert not genus4_conditions(lam1, lam3)[2]
        with pytest.raises(DegenerateParameterError):
            genus4_st_from_lambdas(lam1, lam3)
        with pytest.raises(DegenerateParameterError):
            genus4_lambdas(ctx11.element(3), ctx11.element(-3))


class TestGenus4Search:
    def test_corollary_prime(self, ctx11):
        outcome = search(4, ctx11)
        assert outcome.found
        assert outcome.stats.passes == ["shortcut"]
        params = _params(outcome.certificate)
        w = ctx11.omega
        assert (params["s"], params["t"]) == (w, w * w)
        assert verify(outcome.certificate).passed

    def test_exception_prime(self):
        outcome = search(4, make_context(13))
        assert outcome.status == "bot"
        assert outcome.certificate is None
        assert outcome.stats.pairs_tested > 0

    def test_search_prime(self):
        outcome = search(4, make_context(37))
        assert outcome.found
        assert outcome.stats.strategy == "auto"
        assert verify(outcome.certificate).passed

    def test_corollary_strategy_needs_five_mod_six(self):
        with pytest.raises(DegenerateParameterError):
            search(4, make_context(13), "cor")
        assert search(4, make_context(17), "cor").found

    def test_restricted_first_does_not_change_the_verdict(self):
        for p in (31, 37, 43):
            ctx = make_context(p)
            fast = search(4, ctx, "naive")
            plain = search(4, ctx, "naive", SearchConfig(restricted_first=False))
            assert fast.status == plain.status == "found"
            assert verify(plain.certificate).passed

    def test_budget_interrupts(self):
        outcome = search(4, make_context(13), "naive", SearchConfig(max_pairs=3))
        assert outcome.status == "interrupted"
        assert outcome.stats.pairs_tested == 3

    def test_exhaustive_collects_every_hit(self):
        outcome = search(4, make_context(37), "naive", SearchConfig(exhaustive=True))
        assert outcome.found
        assert outcome.stats.hits == len(outcome.certificates) > 1
        assert all(verify(c).passed for c in outcome.certificates)

    def test_parallel_matches_sequential(self):
        ctx = make_context(61)
        sequential = search(4, ctx, "naive")
        parallel = search(4, ctx, "naive", SearchConfig(threads=2))
        assert parallel.certificate == sequential.certificate
        assert parallel.stats.pairs_tested == sequential.stats.pairs_tested

    def test_small_primes(self):
        found = {p for p in primerange(7, 100) if search(4, make_context(p)).found}
        # no superspecial genus-4 curve exists at p = 7
        assert set(primerange(7, 100)) - found == GENUS4_EXCEPTIONS | {7}

    @staticmethod
    def _check_corollary(p):
        ctx = make_context(p)
        outcome = search(4, ctx, "cor")
        assert verify(outcome.certificate).passed, p
        lambdas = decode_block(ctx, outcome.certificate.witness)
        assert all(j_from_lambda(lam) == 0 for lam in lambdas.values()), p

    @pytest.mark.slow
    def test_corollary_on_sampled_primes(self, rng):
        for p in rng.sample([p for p in primerange(11, 2000) if p % 6 == 5], 12):
            self._check_corollary(p)

    @pytest.mark.exhaustive
    def test_corollary_below_2000(self):
        for p in primerange(11, 2000):
            if p % 6 == 5:
                self._check_corollary(p)

    @pytest.mark.slow
    def test_small_primes_up_to_200(self):
        for p in primerange(101, 200):
            outcome = search(4, make_context(p))
            assert outcome.found, p
            assert verify(outcome.certificate).passed

    @pytest.mark.exhaustive
    def test_small_primes_below_2000(self):
        for p in primerange(101, 2000):
            outcome = search(4, make_context(p))
            assert outcome.found == (p not in GENUS4_EXCEPTIONS), p
            assert verify(outcome.certificate).passed


class TestGenus5:
    def test_j_equation_at_zero(self, ctx11):
        assert solve_case3_j_equation(ctx11.zero) == [3, 4]

    @pytest.mark.parametrize("p", [23, 29, 41])
    def test_j_equation_roots(self, p):
        ctx = make_context(p)
        h = h_polynomial(ctx)
        for j in build_tables(ctx).S:
            for s in solve_case3_j_equation(j):
                assert case3_j(s) == j
                assert not h(s * s)

    def test_naive_search(self):
        assert search(5, make_context(37), "naive").status == "bot"
        outcome = search(5, make_context(23), "naive")
        assert outcome.found
        assert verify(outcome.certificate).passed

    def test_j_pair_search(self):
        assert search(5, make_context(53)).status == "bot"
        outcome = search(5, make_context(139))
        assert outcome.found
        params = _params(outcome.certificate)
        h = h_polynomial(make_context(139))
        assert not h(params["s"] ** 2) and not h(params["t"] ** 2)
        assert verify(outcome.certificate).passed

    def test_naive_reports_bot_where_no_construction_is_known(self):
        assert search(5, make_context(13), "naive").status == "bot"

    @pytest.mark.slow
    def test_strategies_agree_on_sampled_primes(self):
        for p in (67, 71, 89):
            ctx = make_context(p)
            naive, jpairs = search(5, ctx, "naive"), search(5, ctx, "jpairs")
            assert naive.found == jpairs.found == (p not in GENUS5_EXCEPTIONS), p

    @pytest.mark.exhaustive
    def test_strategies_agree(self):
        for p in primerange(62, 201):
            ctx = make_context(p)
            naive, jpairs = search(5, ctx, "naive"), search(5, ctx, "jpairs")
            assert naive.found == jpairs.found == (p not in GENUS5_EXCEPTIONS), p


class TestGenus6:
    def test_j_equation_at_zero(self, ctx11):
        assert solve_case2_j_equation(ctx11.zero) == [2, 6]

    @pytest.mark.parametrize("p", [23, 29, 41])
    def test_j_equation_roots(self, p):
        ctx = make_context(p)
        g = g_polynomial(ctx)
        for j in build_tables(ctx).S:
            for u in solve_case2_j_equation(j):
                assert case2_j(u) == j
                assert not g(u * u)

    def test_third_j_invariant(self, ctx11, rng):
        ctx = make_context(101)
        for _ in range(50):
            u, v = ctx.from_enc(rng.randrange(1, ctx.order)), ctx.from_enc(rng.randrange(1, ctx.order))
            c = ctx.from_enc(rng.randrange(1, ctx.order))
            if u == v or u == -v:
                continue
            assert genus6_e3_j(u, v) == genus6_e3_j(v, u)
            assert genus6_e3_j(c * u, c * v) == genus6_e3_j(u, v)
            assert genus6_e3_j(u, v) == case2_j(u / v)
        with pytest.raises(DegenerateParameterError):
            genus6_e3_j(ctx11.element(2), ctx11.element(-2))

    def test_cube_root(self, ctx11):
        x = ctx11.element(3, 4)
        root = cube_root(x**3)
        assert root is not None and root**3 == x**3

    def test_naive_search(self):
        assert search(6, make_context(19), "naive").status == "bot"
        outcome = search(6, make_context(23), "naive")
        assert outcome.found
        assert verify(outcome.certificate).passed

    def test_j_pair_search(self):
        ctx = make_context(29)
        outcome = search(6, ctx)
        assert outcome.found
        params = _params(outcome.certificate)
        u, v = params["s3"], params["t3"]
        g = g_polynomial(ctx)
        assert not g(u * u) and not g(v * v) and not g((u / v) ** 2)
        assert verify(outcome.certificate).passed

    @pytest.mark.exhaustive
    def test_last_exception(self):
        assert search(6, make_context(571)).status == "bot"
        outcome = search(6, make_context(577))
        assert outcome.found
        assert verify(outcome.certificate).passed

    @pytest.mark.slow
    def test_strategies_agree_on_sampled_primes(self):
        for p in (67, 71, 73):
            ctx = make_context(p)
            naive, jpairs = search(6, ctx, "naive"), search(6, ctx, "jpairs")
            assert naive.found == jpairs.found == (p not in GENUS6_EXCEPTIONS), p

    @pytest.mark.exhaustive
    def test_strategies_agree(self):
        for p in primerange(62, 201):
            ctx = make_context(p)
            naive, jpairs = search(6, ctx, "naive"), search(6, ctx, "jpairs")
            assert naive.found == jpairs.found == (p not in GENUS6_EXCEPTIONS), p


class TestPairs:
    def test_rosenhain_enumeration(self, ctx7):
        triples = enumerate_superspecial_rosenhain(ctx7)
        assert triples
        for triple in triples:
            assert triple[0].enc < triple[1].enc < triple[2].enc
            assert is_superspecial_g2(rosenhain_model(*triple))

    def test_genus5_pair_at_seven(self, ctx7):
        outcome = search(5, ctx7, "pairs")
        assert outcome.found
        report = verify(outcome.certificate)
        assert report.passed
        assert "distinct" in [c.name for c in report.checks]

    def test_bound(self):
        with pytest.raises(EnumerationBoundError):
            search(5, make_context(23), "pairs")
        with pytest.raises(EnumerationBoundError):
            search(6, make_context(17), "pairs")

    @pytest.mark.slow
    def test_genus6_pair_at_eleven(self, ctx11):
        outcome = search(6, ctx11, "pairs")
        assert outcome.found
        assert verify(outcome.certificate).passed

    @pytest.mark.slow
    def test_genus5_pair_at_eleven(self, ctx11):
        outcome = search(5, ctx11, "pairs")
        assert outcome.found
        assert verify(outcome.certificate).passed
