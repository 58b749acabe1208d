"""Sizes of small finite dilatations by direct enumeration in Python.

Independent of the C++ oracle: the ring is Z/n or F_p[y]/(g) with elements as
coefficient tuples, the localization is e*A for the first idempotent power e
of f, and the dilatation is the subring generated by e*A and e*m*(e*a)^-1.
Printed sizes are frozen into tests/unit/test_oracle.cpp.
"""
from itertools import product


def poly_ring(p, g):
    """F_p[y]/(g), g monic given low-to-high without the leading 1."""
    d = len(g)
    elems = list(product(range(p), repeat=d))

    def add(a, b):
        return tuple((x + y) % p for x, y in zip(a, b))

    def mul(a, b):
        c = [0] * (2 * d)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                c[i + j] += x * y
        for k in range(2 * d - 1, d - 1, -1):
            top = c[k]
            c[k] = 0
            for j in range(d):
                c[k - d + j] -= top * g[j]
        return tuple(v % p for v in c[:d])

    one = tuple([1] + [0] * (d - 1))
    return elems, add, mul, one


def zmod(n):
    return list(range(n)), (lambda a, b: (a + b) % n), (lambda a, b: (a * b) % n), 1 % n


def dilatation_size(ring, centers):
    elems, add, mul, one = ring
    f = one
    for _, a in centers:
        f = mul(f, a)
    e = f
    while mul(e, e) != e:
        e = mul(e, f)
    loc = {mul(e, x) for x in elems}

    def inv(u):
        return next(v for v in loc if mul(u, v) == e)

    gens = {mul(e, x) for x in elems}
    for ideal_gens, a in centers:
        ideal = {mul(g, r) for g in ideal_gens for r in elems}
        changed = True
        while changed:
            new = {add(x, y) for x in ideal for y in ideal} - ideal
            changed = bool(new)
            ideal |= new
        ia = inv(mul(e, a))
        gens |= {mul(mul(e, m), ia) for m in ideal}
    sub = set(gens) | {e}
    while True:
        new = {add(x, y) for x in sub for y in sub} | {mul(x, y) for x in sub for y in sub}
        if new <= sub:
            return len(sub)
        sub |= new


print("z6_3_over_2", dilatation_size(zmod(6), [([3], 2)]))
print("z4_2_over_2", dilatation_size(zmod(4), [([2], 2)]))
print("z6_unit_over_2", dilatation_size(zmod(6), [([1], 2)]))
print("z12_4_over_2", dilatation_size(zmod(12), [([4], 2)]))
# F_2[y]/(y^3 - y) = F_2[y]/(y^3 + y), center [(y - 1), y]
print("f2_cubic", dilatation_size(poly_ring(2, [0, 1, 0]), [([(1, 1, 0)], (0, 1, 0))]))
# F_3[y]/(y^2), center [(y), y]
print("f3_dual", dilatation_size(poly_ring(3, [0, 0]), [([(0, 1)], (0, 1))]))
# F_2[y]/(y^3), center [(y), y]
print("f2_y3", dilatation_size(poly_ring(2, [0, 0, 0]), [([(0, 1, 0)], (0, 1, 0))]))
# F_5[y]/(y^2 - 1), center [(y + 1), y + 1]
print("f5_split", dilatation_size(poly_ring(5, [4, 0]), [([(1, 1)], (1, 1))]))
