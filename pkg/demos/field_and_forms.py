# A tour of the field and geometry layers: arithmetic in GF(9), a hyperbolic
# O4+(3) space, subspace types, and point counts against closed forms.

from classical_span import GF, classify, point_class, standard_space
from classical_span.counting import closed_form_values
from classical_span.enumeration import enumerate_point_counts

F = GF(9)  # GF(3^2), elements indexed 0..8
a, b = F(4), F(7)
print("a + b =", int(a + b), " a * b =", int(a * b), " a^-1 =", int(a.inverse()))
print("squares in GF(9):", [x for x in range(1, 9) if F(x).is_square()])

V = standard_space("orthogonal", 4, "+", GF(3))  # basis e1, f1, e2, f2
print(V)

# a hyperbolic line <e1, f1> and an anisotropic line <e1 + f1, e2 + f2>
U = V.span([[1, 0, 0, 0], [0, 1, 0, 0]])
W = V.span([[1, 1, 0, 0], [0, 0, 1, 1]])
print("type of <e1, f1>:", classify(U))
print("type of <e1+f1, e2+f2>:", classify(W))
print("perp of <e1, f1>:", U.perp())

# singular and non-singular points
print("<e1>:", point_class(V.span([[1, 0, 0, 0]])))
print("<e1+f1>:", point_class(V.span([[1, 1, 0, 0]])))

# brute-force point counts next to the closed forms
closed = closed_form_values("orthogonal", 4, 3, 1)
found = enumerate_point_counts(V)
for name in closed:
    print(f"{name:4s} closed {closed[name]:4d}  enumerated {found[name]:4d}")
