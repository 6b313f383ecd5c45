"""Smoke test for the coble extension module."""

import coble

lat = coble.Lattice("P2", 10)
k = lat.canonical()
assert k.self_intersection() == -1
sextic = lat.parse("6e0 - 2e1 - 2e2 - 2e3 - 2e4 - 2e5 - 2e6 - 2e7 - 2e8 - 2e9 - 2e10")
assert sextic == -2 * k
assert sextic.self_intersection() == -4
assert sextic.arithmetic_genus() == 0

v = coble.MultiplicityVector("(6;3,3,2,2,2,2)")
assert v.genus() == 0
trace = v.reduce()
assert trace["result"]["d"] <= 3

found = coble.enumerate_negative_classes(coble.Lattice("P2", 6), 1, 3)
assert len(found) == 27

names = coble.catalog_names()
assert "ten-nodal-sextic" in names
for name in names:
    report = coble.verify_example(name)
    assert report["passed"], name

try:
    coble.MultiplicityVector("(6;3")
except ValueError:
    pass
else:
    raise AssertionError("malformed vector accepted")

print("smoke test ok:", len(names), "catalog entries verified")
