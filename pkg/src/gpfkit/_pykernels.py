"""Pure-Python hot loops: integer polynomials and fixed-point 2F1 summation.

Coefficient lists are low-to-high.  ``_ckernels.pyx`` compiles the same
algorithms; :mod:`gpfkit.kernels` picks whichever is importable.
"""

from math import gcd

BACKEND = "python"


def ipoly_mul(a, b):
    """Product of two integer coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def ipoly_eval_homog(c, num, den):
    """Return den**n * p(num/den) for ``p`` of degree n, as an exact integer."""
    n = len(c) - 1
    if n < 0:
        return 0
    acc = c[n]
    dpow = 1
    for i in range(n - 1, -1, -1):
        dpow *= den
        acc = acc * num + c[i] * dpow
    return acc


def ipoly_primitive(c):
    """Divide out the positive content; keeps the sign of the leading term."""
    g = 0
    for v in c:
        g = gcd(g, v)
        if g == 1:
            return list(c)
    if g <= 1:
        return list(c)
    return [v // g for v in c]


def ipoly_prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` scaled by ``|lc(b)|**k`` (sign-safe)."""
    r = list(a)
    db = len(b) - 1
    lb = b[db]
    mag = lb if lb > 0 else -lb
    sgn = 1 if lb > 0 else -1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        # r <- |lb| * r - sign(lb) * lr * x^shift * b ; leading term cancels.
        r = [v * mag for v in r]
        f = sgn * lr
        for j in range(db + 1):
            r[shift + j] -= f * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def sturm_chain(p):
    """Sturm sequence of a square-free integer polynomial with primitive members."""
    n = len(p) - 1
    dp = [i * p[i] for i in range(1, n + 1)]
    chain = [ipoly_primitive(p), ipoly_primitive(dp)]
    while len(chain[-1]) > 1:
        rem = ipoly_prem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(ipoly_primitive([-v for v in rem]))
    return chain


def sign_variations(chain, num, den):
    """Sign changes of the chain evaluated at num/den (den > 0), zeros skipped."""
    count = 0
    last = 0
    for poly in chain:
        v = ipoly_eval_homog(poly, num, den)
        if v:
            s = 1 if v > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count


def hyp2f1_fixed(a, b, c, x, wp, rel_bits, maxterms):
    """Sum 2F1(a, b; c; x) in fixed point.

    Arguments are integers holding value * 2**wp.  Summation stops once three
    consecutive terms fall below 2**-rel_bits of the partial sum while the
    tail ratio bound is below one, or when a numerator factor is exactly zero.

    Returns ``(s, k, last, err_ulps, status)``; ``err_ulps`` bounds the
    accumulated rounding error of ``s`` and ``status`` is
    0 = converged, 1 = terminated exactly, 2 = maxterms reached.
    """
    one = 1 << wp
    s = one
    t = one
    err = 0
    err_total = 0
    small = 0
    ax = x if x >= 0 else -x
    k = 0
    while k < maxterms:
        A = a + k * one
        B = b + k * one
        C = c + k * one
        K1 = (k + 1) * one
        if A == 0 or B == 0:
            return s, k, 0, err_total, 1
        num = t * A * B * x
        den = C * K1
        t_new = num // (den << wp)
        # Error propagation: e_{k+1} <= |ratio| e_k + 1 ulp.
        rnum = A * B * ax
        rden = C * K1 * one
        if rnum < 0:
            rnum = -rnum
        if rden < 0:
            rden = -rden
        err = (err * rnum + rden - 1) // rden + 1 if err else 1
        err_total += err
        t = t_new
        s += t
        k += 1
        at = t if t >= 0 else -t
        as_ = s if s >= 0 else -s
        if (at << rel_bits) < as_ or t == 0:
            small += 1
        else:
            small = 0
        if small >= 3 and A > 0 and B > 0 and C > 0:
            # rho < 1 with rho = |x| * max(A/C, 1) * max(B/K1, 1) at the next index.
            An = A + one
            Bn = B + one
            Cn = C + one
            Kn = K1 + one
            lhs = ax * (An if An > Cn else Cn) * (Bn if Bn > Kn else Kn)
            if lhs < one * Cn * Kn:
                return s, k, t, err_total, 0
    return s, k, t, err_total, 2
