"""Independent reference values for the ideal/Groebner unit tests.

Computed with sympy (not the C++ engine). Run: python3 derive_ideal_values.py
The printed values are frozen into tests/unit/test_polycore.cpp and tests/unit/test_ideals.cpp.
"""
from sympy import symbols, groebner, expand

x, y, z, t, s, u, v, a, g, h = symbols("x y z t s u v a g h")


def show(label, gb):
    print(label, [str(p) for p in gb.exprs])


# reduced GB of {x^2 - y, x^3 - z} under lex x > y > z
show("gb_twisted", groebner([x**2 - y, x**3 - z], x, y, z, order="lex"))

# (x^2, x*y) ∩ (y): eliminate tag w from w*I + (1-w)*J
w = symbols("w")
gb = groebner([w * x**2, w * x * y, (1 - w) * y], w, x, y, order="lex")
show("intersect", [p for p in gb.exprs if not p.has(w)] and groebner([p for p in gb.exprs if not p.has(w)], x, y, order="grevlex"))

# (a*x, a*y) : a^inf  via  I + (1 - z*a), eliminate z
gb = groebner([a * x, a * y, 1 - z * a], z, a, x, y, order="lex")
show("sat", groebner([p for p in gb.exprs if not p.has(z)], a, x, y, order="grevlex"))

# eliminate u, v from (t*s*u - x, s*v - x)
gb = groebner([t * s * u - x, s * v - x], u, v, x, t, s, order="lex")
print("elim_tsuv", [str(p) for p in gb.exprs if not (p.has(u) or p.has(v))])

# NF(x*y - 1, {y - x}) with lex x > y and with lex y > x
from sympy import reduced
print("nf_x_gt_y", reduced(x * y - 1, [y - x], x, y, order="lex")[1])
print("nf_y_gt_x", reduced(x * y - 1, [y - x], y, x, order="lex")[1])

# kernel of Q[x,y] -> Q[t], x -> t^2, y -> t^3
gb = groebner([x - t**2, y - t**3], t, x, y, order="lex")
print("cusp_kernel", [str(p) for p in gb.exprs if not p.has(t)])
