from fractions import Fraction as F

import pytest

from ckpolylog.padic import (PadicNumber, PrecisionPolicy, PrecisionError,
                             iwasawa_log, rational_reconstruct)
from ckpolylog.polylog import BadDiskError, PolylogEngine, get_engine, _series_eval
import ckpolylog.symbols as sy

from oracles import washington_lp, generalized_bernoulli, bernoulli_list


def test_engine_rejects_small_or_composite_primes():
    with pytest.raises(ValueError):
        PolylogEngine(3)
    with pytest.raises(ValueError):
        PolylogEngine(2)
    with pytest.raises(ValueError):
        PolylogEngine(9)


@pytest.mark.parametrize("p", [5, 7])
def test_twisted_series_against_direct_values(p, policy):
    # t_k has an independent meaning at z = p where both polylog series converge
    eng = get_engine(p, policy)
    series = eng.twisted_series()
    W = 26
    z = PadicNumber.from_rational(p, p, W)
    w = 1 / (z - 1)

    def li_small(k, zz):
        acc = PadicNumber.exact_zero(p)
        power = zz
        m = 1
        while m * zz.valuation() <= W + 6:
            acc = acc + power / F(m) ** k
            m += 1
            power = power * zz
        return acc

    t1 = -iwasawa_log(1 - z) + iwasawa_log(1 - z ** p) / p
    assert (_series_eval(series[0], w) - t1).val_lower_bound() >= 20
    t2 = li_small(2, z) - li_small(2, z ** p) / p ** 2
    assert (_series_eval(series[1], w) - t2).val_lower_bound() >= 20


@pytest.mark.parametrize("p", [5, 7])
def test_untwist_at_teichmuller_against_log(p, policy):
    # Li_1(theta) from the global twisted series must equal -log(1 - theta)
    eng = get_engine(p, policy)
    for a in range(2, p):
        theta = eng.teichmuller_point(a)
        untwisted = eng.values_at_teichmuller(a)[1]
        direct = -iwasawa_log(1 - theta)
        assert (untwisted - direct).val_lower_bound() >= eng.workprec - 2


@pytest.mark.parametrize("p", [5, 7])
def test_li1_equals_minus_log(p, policy, rng):
    eng = get_engine(p, policy)
    for _ in range(10):
        a = rng.randrange(2, p)
        z = F(a + p * rng.randrange(0, 50))
        got = eng.polylog(1, z)
        want = -eng.log(1 - z)
        assert (got - want).val_lower_bound() >= policy.M


@pytest.mark.parametrize("p", [5, 7])
def test_disk_series_differential_system(p, policy):
    # dS_k = S_{k-1} dz/z and dS_1 = dz/(1-z), term by term
    eng = get_engine(p, policy)
    for a in range(2, p):
        table = eng.disk_table(a)
        N = eng.local_degree
        apn = PadicNumber.from_rational(p, a, policy.workprec())
        dzz = eng._dz_over_z_series(apn)
        for k in (2, 3, 4):
            dS = [table["li%d" % k][j + 1] * (j + 1) for j in range(N - 1)]
            from ckpolylog.polylog import _series_multiply
            rhs = _series_multiply(table["li%d" % (k - 1)], dzz, N - 1, p)
            for x, y in zip(dS[:N - 4], rhs[:N - 4]):
                assert (x - y).val_lower_bound() >= policy.M
        # dS_1 = p/(1 - a - p t) series
        dS1 = [table["li1"][j + 1] * (j + 1) for j in range(N - 1)]
        one_minus = 1 - apn
        ratio = PadicNumber.from_rational(p, p, policy.workprec()) / one_minus
        power = ratio
        for j in range(N - 4):
            assert (dS1[j] - power).val_lower_bound() >= policy.M
            power = power * ratio


@pytest.mark.parametrize("p", [5, 7])
def test_distribution_relation_50_random_points(p, policy, rng):
    eng = get_engine(p, policy)
    thr = policy.M - policy.g
    for k in (1, 2, 3, 4):
        checked = 0
        while checked < 50:
            a = rng.randrange(2, p - 1)  # a and a^2 both avoid 0, 1 mod p
            if (a * a) % p in (0, 1):
                continue
            z = PadicNumber.from_rational(
                p, a + p * rng.randrange(0, p ** 6), policy.workprec())
            lhs = F(2) ** (1 - k) * eng.polylog(k, z * z)
            rhs = eng.polylog(k, z) + eng.polylog(k, -z)
            assert (lhs - rhs).val_lower_bound() >= thr
            checked += 1


@pytest.mark.parametrize("p", [5, 7])
def test_dilog_reflection_identity(p, policy, rng):
    eng = get_engine(p, policy)
    for _ in range(10):
        a = rng.randrange(2, p)
        z = F(a + p * rng.randrange(0, 100))
        resid = (eng.polylog(2, z) + eng.polylog(2, 1 - z)
                 + eng.log(z) * eng.log(1 - z))
        assert resid.val_lower_bound() >= policy.M


@pytest.mark.parametrize("p", [5, 7])
def test_even_polylogs_vanish_at_minus_one(p, policy):
    eng = get_engine(p, policy)
    for k in (2, 4):
        assert eng.polylog(k, F(-1)).val_lower_bound() >= policy.M - policy.g


def test_inversion_branch_consistency(eng5, policy):
    # log 5 = 0, so Li_k(1/5) = (-1)^{k+1} Li_k(5)
    for k in (2, 3, 4):
        lhs = eng5.polylog(k, F(1, 5))
        rhs = eng5.polylog(k, F(5))
        if k % 2 == 0:
            rhs = -rhs
        assert (lhs - rhs).val_lower_bound() >= policy.M


def test_zeta_values(eng5, policy):
    assert eng5.zeta(2).is_exact_zero()
    assert eng5.zeta(4).is_exact_zero()
    z3 = eng5.zeta(3)
    li3 = eng5.polylog(3, F(-1))
    assert (z3 * (F(2) ** (-2) - 1) - li3).val_lower_bound() >= 20
    with pytest.raises(PrecisionError):
        eng5.zeta_nonzero(2)
    assert eng5.zeta_nonzero(3) is z3


@pytest.mark.parametrize("p", [5, 7])
def test_zeta_against_washington_oracle(p, policy):
    """zeta_p(3) carries the Euler factor: (1 - p^{-3}) zeta_p(3) = L_p(3, w^{-2})."""
    eng = get_engine(p, policy)
    z3 = eng.zeta(3)
    assert z3.valuation() == 3  # val = k, from the (1 - p^{-k}) factor
    L = washington_lp(p, 3, (1 - 3) % (p - 1))
    assert L.valuation() == 0
    bridged = L / (1 - F(1, p ** 3))
    assert (z3 - bridged).val_lower_bound() >= 8 + 3  # >= precision p^8 rel


def test_washington_interpolation_property():
    # L_p(1-n, chi) = -(1 - chi_n(p) p^{n-1}) B_{n, chi_n}/n with chi_n = chi w^{-n}
    # chi = w^2 at p = 5, n = 2: chi_2 trivial, so the value is -(1-p) B_2/2 = 1/3
    v = washington_lp(5, -1, 2)
    assert rational_reconstruct(v.truncate_abs(10), 10 ** 3, 10 ** 3) == F(1, 3)
    v = washington_lp(7, -1, 2)
    assert rational_reconstruct(v.truncate_abs(10), 10 ** 3, 10 ** 3) == F(1, 2)
    # nontrivial twist: chi = w^4 at p = 7, n = 2: chi_2 = w^2, value -B_{2,w^2}/2
    v = washington_lp(7, -1, 4)
    b = generalized_bernoulli(7, 2, 2)
    assert (v + b / 2).val_lower_bound() >= 12


def test_bernoulli_oracle_sanity():
    B = bernoulli_list(12)
    assert B[1] == F(-1, 2) and B[2] == F(1, 6) and B[12] == F(-691, 2730)


@pytest.mark.parametrize("p", [5, 7])
def test_cross_prime_w2_recognition(p, policy):
    eng = get_engine(p, policy)
    ratio = (eng.polylog(3, F(9)) - 12 * eng.polylog(3, F(3))) / eng.zeta_nonzero(3)
    q = rational_reconstruct(ratio.truncate_abs(policy.M - policy.g + 4),
                             10 ** 4, 10 ** 3)
    assert q == F(-26, 3)


@pytest.mark.parametrize("p", [5, 7])
def test_precision_soundness_resampling(p, policy):
    """Recomputing at M+5 and truncating agrees with the M-precision run."""
    hi = get_engine(p, PrecisionPolicy(policy.M + 5, policy.g))
    lo = get_engine(p, policy)
    samples = [(2, F(3)), (3, F(9)), (4, F(1, 2)), (2, F(-3)), (3, F(-1))]
    for k, z in samples:
        a = lo.polylog(k, z)
        b = hi.polylog(k, z)
        assert (a - b).val_lower_bound() >= a.abs_precision() - 1
    assert (lo.zeta(3) - hi.zeta(3)).val_lower_bound() >= lo.zeta(3).abs_precision() - 1
    la, lb = lo.log(F(2)), hi.log(F(2))
    assert (la - lb).val_lower_bound() >= la.abs_precision() - 1


def test_period_map_is_ring_homomorphism(eng5, policy, rng):
    exprs = [sy.li_u(2, F(-2)), sy.log_u(2) + sy.zeta_u(3).scale(F(1, 2)),
             sy.li_u(3, F(3)) - sy.log_u(3) ** 2 * sy.log_u(2)]
    for _ in range(6):
        a = rng.choice(exprs)
        b = rng.choice(exprs)
        lhs = eng5.period(a * b)
        rhs = eng5.period(a) * eng5.period(b)
        assert (lhs - rhs).val_lower_bound() >= policy.M


def test_period_map_examples(eng5, policy):
    assert eng5.period(sy.log_u(-1)).is_exact_zero()
    combo = (sy.li_u(3, F(1, 2)) - (sy.log_u(2) ** 3).scale(F(1, 6))
             - sy.zeta_u(3).scale(F(7, 8)))
    assert eng5.period(combo).val_lower_bound() >= policy.M


@pytest.mark.parametrize("p", [5, 7])
def test_z_half_identity(p, policy):
    eng = get_engine(p, policy)
    resid = (eng.polylog(3, F(1, 2)) - eng.log(F(2)) ** 3 / 6
             - F(7, 8) * eng.zeta(3))
    assert resid.val_lower_bound() >= policy.M - policy.g


@pytest.mark.parametrize("p", [5, 7])
def test_appendix_padic_suite(p, policy):
    from ckpolylog.polylog import padic_L3_check
    res = padic_L3_check(p, policy)
    for key, val in res.items():
        assert val >= policy.M - policy.g, (key, val)


def test_bad_disk_and_domain_errors(eng5):
    with pytest.raises(BadDiskError):
        eng5.polylog(2, F(6))      # 6 = 1 mod 5
    with pytest.raises(BadDiskError):
        eng5.polylog(3, F(1, 6))   # reduces to disk of 1
    with pytest.raises(ValueError):
        eng5.polylog(2, F(1))
    assert eng5.polylog(2, F(0)).is_exact_zero()
    with pytest.raises(ValueError):
        eng5.polylog(5, F(3))      # beyond built weight range


def test_local_table_off_center_evaluation(eng5):
    # series S_{k,a}(t) = Li_k(a + p t): spot check off-center points
    table = eng5.disk_table(3)
    t = PadicNumber.from_rational(5, 2, eng5.workprec)
    val = _series_eval(table["li2"], t)
    direct = eng5.polylog(2, F(13))
    assert (val - direct).val_lower_bound() >= eng5.policy.M


def test_engine_generalizes_to_larger_primes(policy):
    eng = get_engine(11, policy)
    resid = (eng.polylog(3, F(1, 2)) - eng.log(F(2)) ** 3 / 6
             - F(7, 8) * eng.zeta(3))
    assert resid.val_lower_bound() >= policy.M - policy.g
    d = (F(2) ** (1 - 4) * eng.polylog(4, F(9))
         - eng.polylog(4, F(3)) - eng.polylog(4, F(-3)))
    assert d.val_lower_bound() >= policy.M - policy.g


def test_twisted_series_disk_cache(tmp_path, monkeypatch, policy):
    monkeypatch.setenv("CKPOLYLOG_CACHE", str(tmp_path))
    e1 = PolylogEngine(5, policy)
    s1 = e1.twisted_series()
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    e2 = PolylogEngine(5, policy)
    s2 = e2.twisted_series()
    assert all((a - b).is_exact_zero() or (a - b).unit == 0
               for row1, row2 in zip(s1, s2) for a, b in zip(row1, row2))
