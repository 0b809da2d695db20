"""The indexing site and the representation rings living over it.

Levels are positive integers closed under divisors; each level n carries
the group of units mod n (the outer automorphisms of a cyclic group of
order n) and the ring Q[X]/(X^n - 1) of rational virtual characters.
"""

from cycrep import (
    RUElement,
    crt_iso,
    divisor_closure,
    mul,
    rank,
    restrict_proj,
    restrict_sub,
    tau_level,
    totient,
    transfer,
    transfer_ideal,
    unit_reduction,
    units,
)

print("=== divisor-closed supports ===")
support = divisor_closure([12])
print("closure of {12}:", list(support))
print("covering pairs (prime steps):", support.covering_pairs())

print()
print("=== unit groups and their reduction fibers ===")
print("units mod 12:", list(units(12)))
mapping, fibers = unit_reduction(12, 4)
print("reduction to units mod 4:", mapping)
print("fibers:", fibers)

print()
print("=== the ring of virtual characters at level n ===")
x = RUElement.x(6)
print("X * X^5 =", mul(x, RUElement.monomial(6, 5)), " (the relation X^6 = 1)")
print("inflate X from level 3 to level 6:", restrict_proj(6, 3, RUElement.x(3)))
print("restrict X from level 6 to level 3:", restrict_sub(6, 3, x))
print("induce 1 from level 2 to level 6:", transfer(2, 6, RUElement.one(2)))

print()
print("=== the ideal of proper transfers and its quotient ===")
for n in [4, 9, 12]:
    ideal = transfer_ideal(n)
    lv = tau_level(n)
    print(f"level {n}: ideal rank {rank(ideal)},",
          f"quotient dimension {lv.dim} = totient {totient(n)},",
          f"quotient basis monomials {lv.basis_monomials}")

print()
print("=== coprime levels multiply out to the product level ===")
for (n, m) in [(2, 3), (4, 9)]:
    print(f"multiplication map for ({n},{m}) has rank {rank(crt_iso(n, m))}"
          f" of {n * m}: invertible")
