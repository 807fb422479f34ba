"""Independent mpmath derivation of the values frozen in the C++ tests.

Run with `python3 tests/oracles/derive_values.py`. Nothing here shares code
with the library; each quantity is written out from its definition at 50+
digits, and exact tails use Python fractions.
"""

from fractions import Fraction as F
from math import comb

from mpmath import e, erfc, exp, factorial, floor, ceil, log, loggamma, mp, mpf, pi, sqrt

mp.dps = 60


def D(f, p):
    a = 0 if f == 0 else f * log(f / p)
    b = 0 if f == 1 else (1 - f) * log((1 - f) / (1 - p))
    return a + b


def L(n, k, p):
    q = 1 - p
    return (k + 1 - p * n + sqrt((p * n - k + 1) ** 2 + 4 * q * k)) / 2


def kappa1(n, p):
    return p * (n + 1) - sqrt(p * (1 - p) * (n + 1))


def V(n, k, p, a):
    return a + p * (n - k + a + 1) / (p * n + p - k + a)


def U(n, k, p):
    if k < kappa1(n, p):
        return V(n, k, p, 0)
    at = k - kappa1(n, p)
    return min(V(n, k, p, max(0, int(floor(at)))), V(n, k, p, max(0, int(ceil(at)))))


def phi(n, k):
    return exp(loggamma(n + 1) - loggamma(k + 1) - loggamma(n - k + 1) + k * log(k) + (n - k) * log(n - k) - n * log(n))


def phi_minus(n, k):
    return exp(mpf(1) / (12 * n) - mpf(1) / (12 * k) - mpf(1) / (12 * (n - k))) / sqrt(2 * pi)


def phi_plus(n, k):
    return exp(mpf(1) / (12 * n + 1) - mpf(1) / (12 * k + 1) - mpf(1) / (12 * (n - k) + 1)) / sqrt(2 * pi)


def ell(x):
    return (sqrt(4 + x * x) - x) / (2 * sqrt(2 * pi))


def gauss_upper(x):
    return erfc(x / sqrt(2)) / 2


def lower_exact(n, k, p):
    return sum(comb(n, j) * p**j * (1 - p) ** (n - j) for j in range(k + 1))


def pmf_exact(n, k, p):
    return comb(n, k) * p**k * (1 - p) ** (n - k)


def ratio_over_pmf(n, k, p, tol=mpf(10) ** -45):
    # B/b by summing b_{j-1}/b_j = q j / (p (n - j + 1)) backwards from k.
    q = 1 - p
    s = t = mpf(1)
    for j in range(k, 0, -1):
        t *= q * j / (p * (n - j + 1))
        s += t
        if t < tol * s:
            break
    return s


def log_pmf(n, k, p):
    return loggamma(n + 1) - loggamma(k + 1) - loggamma(n - k + 1) + k * log(p) + (n - k) * log(1 - p)


def theta(k):
    s = sum(mpf(k) ** i / factorial(i) for i in range(k))
    return (exp(k) / 2 - s) * factorial(k) / mpf(k) ** k


def section(title):
    print(f"\n== {title}")


if __name__ == "__main__":
    n, k, p = 10, 3, mpf(1) / 2
    f = mpf(k) / n
    section("point (10, 3, 1/2)")
    print("exact lower tail", lower_exact(10, 3, F(1, 2)))
    print("L", L(n, k, p), "U", U(n, k, p), "kappa1", kappa1(n, p))
    chern = exp(-n * D(f, p))
    print("chernoff", chern)
    print("reverse (n+1)^-1", chern / (n + 1), "reverse sqrt", sqrt(n / (8 * k * (n - k))) * chern)
    lm = n * phi_minus(n, k) / sqrt(k * (n - k)) * L(n, k, p)
    up = n * phi_plus(n, k) / sqrt(k * (n - k)) * U(n, k, p)
    print("b_down", lm / sqrt(n) * chern, "b_up", up / sqrt(n) * chern)
    lim = sqrt((1 - f) / (2 * pi * f)) * p / (p - f)
    print("ferrante", lim * chern)
    print("phi(10,3)", phi(10, 3), "band", phi_minus(10, 3), phi_plus(10, 3))

    section("named constants")
    print("89/44", mpf(89) / 44)
    print("conjecture constant", mpf(180451625) / 143327232, "sqrt(pi/2)", sqrt(pi / 2))
    print("e^(29/2600)", exp(mpf(29) / 2600), "=", phi_plus(2, 1) / phi_minus(2, 1))
    print("f*(1/2)", (mpf(1) / 2 + sqrt(mpf(17) / 4)) / 4)
    print("(e-2)/2", (e - 2) / 2, "theta_1", theta(1), "theta_2", theta(2), "theta_500", theta(500))
    print("ell(1)", ell(1), "ell(1)e^-1/2", ell(1) * exp(-mpf(1) / 2), "Phi(-1)", gauss_upper(1))
    print("zeta(2,1)", (F(1, 2) - lower_exact(2, 0, F(1, 2))) / pmf_exact(2, 1, F(1, 2)))

    section("large deviation f=3/10, p=1/2, limit")
    f = mpf(3) / 10
    lim = sqrt((1 - f) / (2 * pi * f)) * p / (p - f)
    print("limit", lim)
    for n in [10, 100, 1000, 10000]:
        k = int(f * n)
        v = sqrt(n) * exp(log_pmf(n, k, p)) * ratio_over_pmf(n, k, p) * exp(n * D(f, p))
        print(n, v, "gap", abs(v / lim - 1))

    section("moderate deviation p=1/2, a_n = n^(2/3), exponent at floor(k_n)/n")
    lim = sqrt(p * (1 - p) / (2 * pi))
    print("limit", lim)
    for n in [10**3, 10**4, 10**5, 10**6]:
        a = mpf(n) ** (mpf(2) / 3)
        k = int(floor(p * n - a))
        B = exp(log_pmf(n, k, p)) * ratio_over_pmf(n, k, p)
        floored = B * a / sqrt(n) * exp(n * D(mpf(k) / n, p))
        unfloored = B * a / sqrt(n) * exp(n * D((p * n - a) / n, p))
        print(n, k, floored, "gap", abs(floored / lim - 1), "unfloored", unfloored)

    section("CLT p=1/2, x=1: lower bound at real k_n = pn - x sqrt(pqn)")
    x = mpf(1)
    lim = ell(x) * exp(-x * x / 2)
    print("limit", lim)
    for n in [100, 1000, 10**4, 10**5, 10**6]:
        kn = p * n - x * sqrt(p * (1 - p) * n)
        lminus = n * exp(mpf(1) / (12 * n) - 1 / (12 * kn) - 1 / (12 * (n - kn))) / sqrt(2 * pi) / sqrt(kn * (n - kn)) * L(n, kn, p)
        v = lminus / sqrt(n) * exp(-n * D(kn / n, p))
        print(n, kn, v, "gap", abs(v / lim - 1))

    section("k = 12 slice at p = k/n: B/(bL)")
    for n in [24, 50, 100, 1000, 10**4, 10**5]:
        q = mpf(12) / n
        print(n, ratio_over_pmf(n, 12, q) / L(n, 12, q))
