"""Smoke test for the pymerodiff extension module.

Build with `maturin develop -m crates/python/Cargo.toml`, or copy
target/debug/libpymerodiff.so to pymerodiff.so on PYTHONPATH.
"""
import cmath
import math

import pymerodiff as pm


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


f = pm.FunctionModel("exp(z^1)")
assert close(f.evaluate(1.0), math.e, 1e-14)
assert f.known_order() == 1.0
assert close(pm.delta_k(f, 0j, 1.0, 3), (math.e - 1) ** 3, 1e-13)
ratios = pm.delta_ratios(f, 2 + 1j, 1.0, 2)
assert close(ratios[1], math.e - 1, 1e-13)

half = pm.FunctionModel("prod(lambda=0.5)")
z = 3.7 + 0.4j
expected = cmath.sin(math.pi * cmath.sqrt(z)) / (math.pi * cmath.sqrt(z))
assert close(half.evaluate(z), expected, 1e-10)

order = pm.estimate_order(pm.FunctionModel("exp(z^2)"), 10.0, 1e5, 20)
assert abs(order - 2.0) < 0.05, order

mu, nu = pm.maximal_term(pm.FunctionModel("cossqrt"), 1e4)
assert nu > 0 and mu > 0

rat = pm.FunctionModel("rat(zeros=[2];poles=[3])")
ch = pm.characteristic(rat, 100.0)
assert ch["n_poles"] == 1
assert close(ch["N_poles"], math.log(100 / 3), 1e-12)

q, n = pm.log_difference_error(pm.FunctionModel("exp(z^1)"), 5 + 2j, 1.0)
assert abs(q) < 1e-12, q

disks = pm.cartan_disks([0j, 1 + 0j, 10j], 1.0)
assert disks and all(r > 0 for _, r in disks)

assert pm.operator_series(2, 4) == ["0", "0", "1", "1", "7/12"]

oc = pm.order_candidates("(z)*D2 + (-1)*D0")
assert oc["candidates_below_one"] == ["1/2"], oc
assert pm.order_candidates("Q[0] = -z\nQ[1] = 1\n", "shift")["gate"] == "OrderAtLeastOne"

report = pm.run_experiment("E3")
assert report["verdict"] == "PASS", report["notes"]
report = pm.run_experiment("E2", {"seed": "3", "points": "30"})
assert report["verdict"] == "PASS" and len(report["rows"]) == 30

for bad in (lambda: pm.FunctionModel("poly(1,0,)"),
            lambda: pm.run_experiment("E9"),
            lambda: pm.run_experiment("E2", {"colour": "blue"}),
            lambda: pm.operator_series(0, 4)):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

print("pymerodiff smoke test: ok")
