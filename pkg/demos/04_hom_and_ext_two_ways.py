"""Morphism and extension groups computed by two unrelated routes.

Route one solves the equivariance-plus-naturality linear system head on.
Route two dualizes levelwise and computes (derived) inverse limits over
the divisor poset, reconstructing morphisms from compatible families of
linear forms.  They must agree, and watching them agree is the best part.
"""

from cycrep import (
    SupportSet,
    atomic_module,
    dual_system,
    ext_via_resolution,
    hom_direct,
    hom_via_limit,
    lim_derived,
    regular_module,
    sequential_lim1,
    support_of_divisors,
    tau_ru_module,
    tower_along_chain,
)

support = support_of_divisors(12)
reg = regular_module(support)

print("=== morphisms into the regular module, twice ===")
for name, x in [("regular", reg), ("transfer quotient", tau_ru_module(support)),
                ("level-1 atom", atomic_module(1, 1, support))]:
    direct = hom_direct(x, reg)
    limit = hom_via_limit(x)
    print(f"{name:>18}: direct {direct.dimension}, via limits {limit.dimension}")

print()
print("=== a support with a top level has no higher derived limits ===")
print("derived limits of the dual regular module:",
      lim_derived(dual_system(reg), 3).dims)
print("extension groups into the regular module:",
      ext_via_resolution(reg, reg, 3))

print()
print("=== the three-point support is the smallest interesting one ===")
threept = SupportSet([1, 2, 3])
atom = atomic_module(1, 1, threept)
print("morphisms out of the atom:",
      hom_direct(atom, regular_module(threept)).dimension)
print("extension groups:", ext_via_resolution(atom, regular_module(threept), 2))
print("derived limits of the dual:", lim_derived(dual_system(atom), 2).dims)
print("the one-dimensional first derived limit comes from the two maximal")
print("levels 2 and 3 sharing nothing above them")

print()
print("=== sequential towers and the surjectivity shadow ===")
d = dual_system(regular_module(support_of_divisors(60)))
dims, maps = tower_along_chain(d, [1, 2, 4, 12, 60])
report = sequential_lim1(dims, maps)
print(f"tower along 1|2|4|12|60: lim {report.lim_dim}, lim^1 {report.lim1_dim},",
      f"all maps surjective: {report.mittag_leffler}")
