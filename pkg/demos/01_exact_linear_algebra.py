"""Tour of the exact linear algebra layer.

Everything is a dense matrix of rationals and every answer is exact: row
reduction, kernels, solving, cokernels and tensor products.  No floats,
no tolerances, no surprises.
"""

from fractions import Fraction

from cycrep import QMatrix, cokernel, kernel_basis, kronecker, rank, rref, solve

print("=== reduced row echelon form ===")
m = QMatrix.from_rows([[2, 4, 1], [1, 2, 3], [3, 6, 4]])
r, pivots = rref(m)
print("matrix:", m.to_rows())
print("rref:  ", r.to_rows())
print("pivot columns:", pivots, " rank:", rank(m))

print()
print("=== kernels are exact ===")
k = kernel_basis(m)
print("kernel basis columns:", [k.col(j) for j in range(k.cols)])
print("m @ kernel is zero:", (m @ k).is_zero())
print("rank + nullity = columns:", rank(m) + k.cols == m.cols)

print()
print("=== solving with a witness or a definitive no ===")
b = QMatrix.column([1, Fraction(1, 2), Fraction(3, 2)])
x = solve(m, b)
print("solution for a consistent system:", x.col(0))
print("verification m @ x == b:", m @ x == b)
print("inconsistent system returns:", solve(QMatrix.from_rows([[1], [0]]), [0, 1]))

print()
print("=== cokernels: the surjection whose kernel is the image ===")
inc = QMatrix.from_rows([[1], [1]])
p, dim = cokernel(inc)
print("projection:", p.to_rows(), " cokernel dimension:", dim)
print("projection kills the image:", (p @ inc).is_zero())

print()
print("=== tensor products with the lexicographic pairing ===")
a = QMatrix.from_rows([[0, 1], [1, 0]])
t = kronecker(a, QMatrix.identity(2))
print("swap tensor identity is a 4x4 permutation:", t.to_rows())
