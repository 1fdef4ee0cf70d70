from itertools import product

from sievelab import prng
from sievelab.errors import (
    BudgetExceeded,
    CompositeModulus,
    EnumerationUnavailable,
)
from sievelab.matgroup import (
    AbelianElement,
    MatrixElement,
    elementary_generators,
    sl2_st_generators,
    z_generators,
)
from sievelab.quotients import (
    AbelianQuotient,
    MatrixQuotient,
    bfs_closure,
    find_excluded_primes,
    group_order,
    is_prime,
    prime_schedule,
)


def det_laplace(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_laplace(minor)
        total += term if j % 2 == 0 else -term
    return total


def count_sl_bruteforce(dim, p):
    count = 0
    for entries in product(range(p), repeat=dim * dim):
        rows = [list(entries[i * dim:(i + 1) * dim]) for i in range(dim)]
        if det_laplace(rows) % p == 1:
            count += 1
    return count


def test_is_prime():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for n in range(2, 32):
        assert is_prime(n) == (n in primes)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(561)  # Carmichael number
    assert not is_prime(341550071728321)  # strong pseudoprime to early bases
    assert is_prime(2 ** 61 - 1)


def test_group_order_formula_vs_bruteforce():
    assert group_order(2, 3) == count_sl_bruteforce(2, 3) == 24
    assert group_order(2, 5) == count_sl_bruteforce(2, 5) == 120
    assert group_order(3, 2) == count_sl_bruteforce(3, 2) == 168


def test_group_order_known_values():
    assert group_order(2, 7) == 336
    assert group_order(2, 11) == 1320
    assert group_order(2, 13) == 2184
    assert group_order(2, 17) == 4896
    assert group_order(3, 3) == 5616


def test_group_order_composite_rejected():
    try:
        group_order(2, 9)
        assert False
    except CompositeModulus:
        pass


def test_prime_schedule():
    s = prime_schedule(4, 3)
    assert s.primes == (3, 5, 7, 11)
    assert s.min_norm == 3
    assert s.all_growth_ok
    s2 = prime_schedule(3, 10)
    assert s2.primes == (11, 13, 17)


def test_prime_schedule_growth_flag():
    # growth check p_i <= c * i^2 is flagged, not fatal
    s = prime_schedule(3, 10, growth_constant=1)
    assert s.primes == (11, 13, 17)
    assert not s.all_growth_ok
    assert s.growth_ok == (False, False, False)
    # constant 2 clears the last slot only: 17 <= 2 * 9
    s2 = prime_schedule(3, 10, growth_constant=2)
    assert s2.growth_ok == (False, False, True)


def test_matrix_quotient_basics():
    q = MatrixQuotient(2, (3,))
    assert q.label == "3"
    assert q.order() == 24
    g = MatrixElement(((1, 1), (0, 1)))
    r = q.reduce(g)
    assert r == ((1, 1, 0, 1),)
    assert q.multiply(r, q.identity()) == r


def test_reduce_is_homomorphism():
    q = MatrixQuotient(2, (7,))
    table = sl2_st_generators().draw_table()
    for trial in range(30):
        idx = prng.draw_indices(21, trial, 8, len(table))
        a = MatrixElement.identity(2)
        for i in idx[:4]:
            a = a * table[i]
        b = MatrixElement.identity(2)
        for i in idx[4:]:
            b = b * table[i]
        assert q.reduce(a * b) == q.multiply(q.reduce(a), q.reduce(b))


def test_pair_quotient():
    q = MatrixQuotient(2, (3, 5))
    assert q.label == "3x5"
    assert q.order() == 24 * 120
    g = MatrixElement(((1, 4), (0, 1)))
    r = q.reduce(g)
    assert r == ((1, 1, 0, 1), (1, 4, 0, 1))


def test_enumerate_elements_counts():
    q3 = MatrixQuotient(2, (3,))
    els = q3.enumerate_elements()
    assert len(els) == 24
    assert len(set(els)) == 24
    q5 = MatrixQuotient(2, (5,))
    assert len(q5.enumerate_elements()) == 120
    pair = MatrixQuotient(2, (3, 5))
    assert len(pair.enumerate_elements()) == 2880


def test_enumerate_sl3():
    q = MatrixQuotient(3, (3,))
    els = q.enumerate_elements()
    assert len(els) == 5616


def test_enumeration_budget():
    q = MatrixQuotient(2, (101,))
    try:
        q.enumerate_elements(budget=1000)
        assert False
    except EnumerationUnavailable:
        pass


def test_abelian_quotient():
    q = AbelianQuotient(2, 5)
    a = AbelianElement((7, -3))
    assert q.reduce(a) == (2, 2)
    assert q.multiply((2, 2), (4, 4)) == (1, 1)
    assert q.order() == 25
    assert len(q.enumerate_elements()) == 25
    assert q.identity() == (0, 0)


def test_bfs_closure_surjective_sl2():
    A = sl2_st_generators()
    rep = bfs_closure(A, MatrixQuotient(2, (3,)))
    assert rep.size == 24
    assert rep.order == 24
    assert rep.surjective
    rep2 = bfs_closure(A, MatrixQuotient(2, (3, 5)))
    assert rep2.size == 2880
    assert rep2.surjective


def test_bfs_closure_sl3():
    A = elementary_generators(3)
    rep = bfs_closure(A, MatrixQuotient(3, (3,)))
    assert rep.size == 5616
    assert rep.surjective


def test_bfs_closure_proper_subgroup():
    # the cyclic subgroup generated by T mod 5 has order 5, not 120
    I = MatrixElement.identity(2)
    T = MatrixElement(((1, 1), (0, 1)))
    from sievelab.matgroup import validate_generators
    A = validate_generators([I, T, T.inverse()])
    rep = bfs_closure(A, MatrixQuotient(2, (5,)))
    assert rep.size == 5
    assert not rep.surjective


def test_bfs_closure_abelian():
    rep = bfs_closure(z_generators(), AbelianQuotient(1, 7))
    assert rep.size == 7
    assert rep.surjective


def test_bfs_closure_budget():
    A = sl2_st_generators()
    try:
        bfs_closure(A, MatrixQuotient(2, (11,)), budget=10)
        assert False
    except BudgetExceeded:
        pass


def test_no_excluded_primes_for_builtins():
    primes = [p for p in range(2, 20) if is_prime(p)]
    assert find_excluded_primes(sl2_st_generators(), primes) == []
    # SL_3 quotients blow up fast; 2 and 3 are the interesting small cases
    assert find_excluded_primes(elementary_generators(3), [2, 3]) == []
