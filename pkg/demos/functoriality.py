"""Products, open embeddings and quotients acting on certified regions."""
from fractions import Fraction as F

from toricdisp import QuotientMap, check_functoriality, get_scenario, pushforward_eps, restrict
from toricdisp.toric import canonical_cover

p112 = get_scenario("p112")
chart = canonical_cover(p112.model)[0]
w = restrict(p112.data, chart)
print("chart of P(1,1,2) at the smooth corner, facet map:", w.facet_map)
print("candidates on the chart (the opened facet joins them):", w.pulled_back(p112.candidates))

pi = QuotientMap(((1, 1),))
pushed = pushforward_eps(pi, {(1, 0): 0, (0, 1): F(-1, 2), (2, -1): None})
print("pushforward of eps along (x, y) -> x + y:", {k: str(v) for k, v in pushed.items()})

for check in check_functoriality("all")["checks"]:
    status = {True: "pass", False: "FAIL", None: "info"}[check["passed"]]
    print(f"{status:4}  {check['name']}")
