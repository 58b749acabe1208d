# Brute-force orders for the congruence tests: scans all of M_n(Z/p^N)
# directly rather than using the lattice parametrization.
import itertools


def det(m, n, q):
    if n == 1:
        return m[0] % q
    if n == 2:
        return (m[0] * m[3] - m[1] * m[2]) % q
    raise ValueError(n)


def mul(x, y, n, q):
    return tuple(sum(x[a * n + c] * y[c * n + b] for c in range(n)) % q for a in range(n) for b in range(n))


def member(kind, m, n, sub, mod):
    """g mod `mod` lies in the catalog subgroup `sub`."""
    if mod == 1:
        return True
    y = [v % mod for v in m]
    d = det(y, n, mod)
    if kind == "SL" and d != 1:
        return False
    if kind == "GL" and any(d * k % mod == 1 for k in range(mod)) is False:
        return False
    for a in range(n):
        for b in range(n):
            e = (y[a * n + b] - (a == b)) % mod
            if e == 0:
                continue
            if sub == "e" or (sub in ("T", "L11") and a != b) or (sub == "B" and a > b):
                return False
    return True


def group(kind, n, p, N, H, v):
    q = p ** N
    return [m for m in itertools.product(range(q), repeat=n * n)
            if member(kind, m, n, "G", q) and all(member(kind, m, n, h, p ** e) for h, e in zip(H, v))]


def lie(kind, n, p, N, H, v):
    q = p ** N
    out = []
    for x in itertools.product(range(q), repeat=n * n):
        if kind == "SL" and sum(x[a * n + a] for a in range(n)) % q:
            continue
        ok = True
        for h, e in zip(H, v):
            mod = p ** e
            for a in range(n):
                for b in range(n):
                    if x[a * n + b] % mod and (h == "e" or (h in ("T", "L11") and a != b) or (h == "B" and a > b)):
                        ok = False
        if ok:
            out.append(x)
    return out


def quotient_orders(kind, n, p, N, H, s, r):
    q = p ** N
    Gs, Gr = group(kind, n, p, N, H, s), group(kind, n, p, N, H, r)
    cosets = {frozenset(mul(g, h, n, q) for h in Gr) for g in Gs}
    Ls, Lr = lie(kind, n, p, N, H, s), set(lie(kind, n, p, N, H, r))
    lcos = {frozenset(tuple((x[k] + y[k]) % q for k in range(n * n)) for y in Lr) for x in Ls}
    return len(cosets), len(lcos)


if __name__ == "__main__":
    print("gl1_3_3_v1", len(group("GL", 1, 3, 3, ["e"], [1])))
    print("sl2_2_3_v1", len(group("SL", 2, 2, 3, ["e"], [1])))
    print("sl2_2_3_eT_v12", len(group("SL", 2, 2, 3, ["e", "T"], [1, 2])))
    print("lie_sl2_2_3_v1", len(lie("SL", 2, 2, 3, ["e"], [1])))
    print("lie_sl2_2_3_eT_v12", len(lie("SL", 2, 2, 3, ["e", "T"], [1, 2])))
    print("q_gl1_3_3", quotient_orders("GL", 1, 3, 3, ["e"], [1], [2]))
    print("q_sl2_2_4", quotient_orders("SL", 2, 2, 4, ["e"], [1], [2]))
    print("q_sl2_2_4_eT", quotient_orders("SL", 2, 2, 4, ["e", "T"], [1, 2], [2, 3]))
    print("q_gl2_2_3_eL", quotient_orders("GL", 2, 2, 3, ["e", "L11"], [1, 2], [2, 3]))
    print("q_gl2_3_2_eB", quotient_orders("GL", 2, 3, 2, ["e", "B"], [1, 1], [2, 2]))
