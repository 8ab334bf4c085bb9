"""Independent oracles used to freeze expected values in the C++ tests.

Nothing here shares code with the library: values come from sympy / mpmath
series manipulation, exact Fractions, and brute-force enumeration.
Run: python3 tests/oracles/freeze_values.py
"""
from fractions import Fraction
import itertools

import mpmath as mp
import sympy as sp

mp.mp.prec = 256
GOLDEN = (mp.sqrt(5) - 1) / 2


def alpha_closed_form(n):
    t = sp.symbols("t")
    a = (t + 1) / 4 * (1 - sp.sqrt(1 - 8 * t / (1 + t) ** 2))
    s = sp.series(a, t, 0, n + 1).removeO()
    return [sp.nsimplify(s.coeff(t, k)) for k in range(1, n + 1)]


def linearization_half(n):
    """phi for f(z) = z/2 + z^2 solving f(phi(w)) = phi(w/2) by undetermined coefficients."""
    lam = sp.Rational(1, 2)
    w = sp.symbols("w")
    cs = sp.symbols("c2:%d" % (n + 1))
    phi = w + sum(c * w**k for c, k in zip(cs, range(2, n + 1)))
    expr = sp.expand(lam * phi + phi**2 - phi.subs(w, lam * w))
    sol = {}
    for k in range(2, n + 1):
        eq = expr.coeff(w, k).subs(sol)
        sol[cs[k - 2]] = sp.solve(eq, cs[k - 2])[0]
    return [sol[c] for c in cs]


def golden_divisor(k):
    lam = mp.expjpi(2 * GOLDEN)
    return abs(lam**k - lam)


def delta_brute_half(kmax):
    """delta_k for lambda = 1/2 by enumerating every ordered composition."""
    eps = {k: abs(Fraction(1, 2**k) - Fraction(1, 2)) for k in range(2, kmax + 1)}
    delta = {1: Fraction(1)}

    def compositions(m):
        if m == 0:
            yield ()
            return
        for first in range(1, m + 1):
            for rest in compositions(m - first):
                yield (first,) + rest

    for k in range(2, kmax + 1):
        best = max(
            _prod(delta[p] for p in c) for c in compositions(k) if len(c) >= 2
        )
        delta[k] = best / eps[k]
    return delta


def _prod(it):
    out = Fraction(1)
    for x in it:
        out *= x
    return out


def fibonacci_brjuno(depth):
    q = [1, 1]
    while len(q) < depth + 2:
        q.append(q[-1] + q[-2])
    # q_0 = 1, q_1 = 1, q_2 = 2, ...
    return sum(mp.log(q[v + 1]) / q[v] for v in range(depth))


if __name__ == "__main__":
    print("alpha closed form:", alpha_closed_form(12))
    print("phi_k for z/2+z^2:", linearization_half(10))
    print("golden |lam^2-lam| =", mp.nstr(golden_divisor(2), 20),
          " 2 sin(pi theta) =", mp.nstr(2 * mp.sin(mp.pi * GOLDEN), 20))
    for m in range(2, 13):
        print("golden omega(%d) =" % m, mp.nstr(min(golden_divisor(k) for k in range(2, m + 1)), 20))
    d = delta_brute_half(7)
    print("delta_k half:", {k: str(v) for k, v in d.items()})
    for depth in (10, 20, 30):
        print("fibonacci brjuno depth", depth, mp.nstr(fibonacci_brjuno(depth), 20))
    print("fib increment 20->30:", mp.nstr(fibonacci_brjuno(30) - fibonacci_brjuno(20), 5))
    # delta growth bound for lambda = 1/2, dyadic p, terms with p_nu < N = 10
    S1 = sum(mp.log(4) / 2**v for v in range(4))
    S2 = sum(mp.mpf(1) / 2**v for v in range(4))
    print("half growth bound N=10:", mp.nstr(2 * (S1 + mp.log(8) * S2), 20))
    print("half max (1/k)log delta_k, k<=7:", mp.nstr(max(mp.log(mp.mpf(v.numerator) / v.denominator) / k for k, v in d.items() if k >= 2), 20))
