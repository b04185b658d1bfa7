# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot loops; same contracts as ``_pykernels``.

Integers stay Python objects (coefficients and fixed-point values are
unbounded), so the gain comes from typed loop control and list access.
"""

from math import gcd

BACKEND = "cython"


def ipoly_mul(list a, list b):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    cdef object ai
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    for i in range(na):
        ai = a[i]
        if ai:
            for j in range(nb):
                out[i + j] += ai * b[j]
    return out


def ipoly_eval_homog(list c, object num, object den):
    cdef Py_ssize_t n = len(c) - 1, i
    cdef object acc, dpow
    if n < 0:
        return 0
    acc = c[n]
    dpow = 1
    for i in range(n - 1, -1, -1):
        dpow *= den
        acc = acc * num + c[i] * dpow
    return acc


def ipoly_primitive(list c):
    cdef object g = 0
    for v in c:
        g = gcd(g, v)
        if g == 1:
            return list(c)
    if g <= 1:
        return list(c)
    return [v // g for v in c]


def ipoly_prem(list a, list b):
    cdef list r = list(a)
    cdef Py_ssize_t db = len(b) - 1, shift, j
    cdef object lb = b[db], mag, f, lr
    cdef int sgn = 1 if lb > 0 else -1
    mag = lb if lb > 0 else -lb
    while r and len(r) - 1 >= db:
        lr = r[len(r) - 1]
        shift = len(r) - 1 - db
        r = [v * mag for v in r]
        f = sgn * lr
        for j in range(db + 1):
            r[shift + j] -= f * b[j]
        while r and r[len(r) - 1] == 0:
            r.pop()
    return r


def sturm_chain(list p):
    cdef Py_ssize_t n = len(p) - 1, i
    cdef list dp = [i * p[i] for i in range(1, n + 1)]
    cdef list chain = [ipoly_primitive(p), ipoly_primitive(dp)]
    cdef list rem
    while len(chain[len(chain) - 1]) > 1:
        rem = ipoly_prem(chain[len(chain) - 2], chain[len(chain) - 1])
        if not rem:
            break
        chain.append(ipoly_primitive([-v for v in rem]))
    return chain


def sign_variations(list chain, object num, object den):
    cdef int count = 0, last = 0, s
    cdef object v
    for poly in chain:
        v = ipoly_eval_homog(poly, num, den)
        if v:
            s = 1 if v > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count


def hyp2f1_fixed(object a, object b, object c, object x, int wp, int rel_bits,
                 Py_ssize_t maxterms):
    cdef object one = (<object>1) << wp  # Python shift; a C int shift overflows
    cdef object s = one, t = one, err = 0, err_total = 0
    cdef object A, B, C, K1, num, den, rnum, rden, at, as_, An, Bn, Cn, Kn, lhs
    cdef object ax = x if x >= 0 else -x
    cdef int small = 0
    cdef Py_ssize_t k = 0
    while k < maxterms:
        A = a + k * one
        B = b + k * one
        C = c + k * one
        K1 = (k + 1) * one
        if A == 0 or B == 0:
            return s, k, 0, err_total, 1
        num = t * A * B * x
        den = C * K1
        t = num // (den << wp)
        rnum = A * B * ax
        rden = C * K1 * one
        if rnum < 0:
            rnum = -rnum
        if rden < 0:
            rden = -rden
        err = (err * rnum + rden - 1) // rden + 1 if err else 1
        err_total += err
        s += t
        k += 1
        at = t if t >= 0 else -t
        as_ = s if s >= 0 else -s
        if (at << rel_bits) < as_ or t == 0:
            small += 1
        else:
            small = 0
        if small >= 3 and A > 0 and B > 0 and C > 0:
            An = A + one
            Bn = B + one
            Cn = C + one
            Kn = K1 + one
            lhs = ax * (An if An > Cn else Cn) * (Bn if Bn > Kn else Kn)
            if lhs < one * Cn * Kn:
                return s, k, t, err_total, 0
    return s, k, t, err_total, 2
