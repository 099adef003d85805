"""A short walk through the library scenarios.

Run with ``python3 demos/tour.py``.
"""
from fractions import Fraction as F

from toricdisp import Settings, certify_point, classify, get_scenario, region


def show_regions(name):
    s = get_scenario(name)
    r = region(s)
    print(f"{name}: {s.description}")
    print(f"  certified non-displaceable: {r.nd.render()}")
    print(f"  displaced by probes:        {r.d.render()}")


def show_point(name, point, settings=Settings()):
    s = get_scenario(name)
    v = classify(s, point, settings)
    print(f"{name} at {tuple(str(x) for x in point)} -> {v.kind}")
    if v.kind == "NonDisplaceable":
        cert = v.evidence
        print("  valuations:", ", ".join(str(w) for w in cert.valuations))
        print("  kernel witness:", ", ".join(str(z) for z in cert.witness))


for name in ("disk", "p1", "ball2", "p112", "ellipsoid12"):
    show_regions(name)
    print()

# The cone C^2/Z_2: the spurious term needs the coefficient -2 to balance.
show_point("c2z2", (0, 3))
cert = certify_point(get_scenario("c2z2").model, get_scenario("c2z2").spurious(), (0, 3))
print("  leading coefficient of the spurious term:", cert.leading_coefficients()[-1])
print()

# P(1,3,5) without bulk terms has a single certified fiber.
show_point("p135", (F(5, 3), F(5, 3)), Settings(candidates=()))
show_point("p135", (2, F(1, 2)), Settings(candidates=()))
# With the two spurious directions a whole open set is certified.
show_point("p135", (F(11, 4), F(3, 10)))
print("  certified area:", region(get_scenario("p135")).nd.area())
