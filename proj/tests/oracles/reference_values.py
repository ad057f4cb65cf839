"""High-precision reference values frozen into the C++ tests.

Independent of the C++ code: uses mpmath at 50 digits with closed forms or
direct quadrature. Run with `python3 reference_values.py`; the printed
constants are pasted into tests/reference_values.hpp.
"""
import random

import mpmath as mp

mp.mp.dps = 50


def potential(p, z):
    f, h0, h1, a, c0, c1 = (mp.mpf(p[k]) for k in ("f", "h0", "h1", "a", "c0", "c1"))
    tau = c1 - c0 - a
    disc = tau**2 - 4 * a * c0
    R = a * z**2 + tau * z + c0
    term1 = (f * z**2 - (h0 - h1 + f) * z + h0 + 1) / R
    term2 = (a + (a + (c1 - c0) * (2 * z - 1)) / (z * (z - 1)) - mp.mpf(5) / 4 * disc / R) * z**2 * (1 - z) ** 2 / R**2
    return term1 + term2


def r_of_z(p, z):
    a, c0, c1 = (mp.mpf(p[k]) for k in ("a", "c0", "c1"))
    tau = c1 - c0 - a
    return mp.quad(lambda t: mp.sqrt(a * t**2 + tau * t + c0) / (2 * t * (1 - t)), [0, z])


def residual(p, E, nu):
    alpha = mp.sqrt(-p["a"] * E + p["f"] + 1)
    beta = mp.sqrt(-p["c0"] * E + p["h0"] + 1)
    delta = mp.sqrt(-p["c1"] * E + p["h1"] + 1)
    return alpha - beta - delta - (2 * nu + 1)


def levels(p):
    out = []
    upper = mp.mpf(p["h1"] + 1) / p["c1"]
    if p["a"] > 0:
        upper = min(upper, mp.mpf(p["f"] + 1) / p["a"])
    nu = 0
    while True:
        grid = [upper - mp.mpf(j) / 100 for j in range(1, 200001)]
        vals = [residual(p, E, nu) for E in grid[::50]]
        root = None
        for j in range(len(vals) - 1):
            if vals[j] * vals[j + 1] < 0:
                root = mp.findroot(lambda E: residual(p, E, nu), (grid[50 * j], grid[50 * (j + 1)]), solver="anderson")
                break
        if root is None:
            return out
        out.append(root)
        nu += 1


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(value, 20)};")


generic = {"f": 1, "h0": 0, "h1": -1, "a": 1, "c0": 0, "c1": 2}
emit("kGenericV03", potential(generic, mp.mpf("0.3")))

rng = random.Random(20240611)
print("inline constexpr std::array<std::array<double, 3>, 20> kGenericRandomPoints = {{")
for _ in range(20):
    z = mp.mpf(rng.uniform(0.02, 0.98))
    print(f"    {{{mp.nstr(z, 20)}, {mp.nstr(r_of_z(generic, z), 20)}, {mp.nstr(potential(generic, z), 20)}}},")
print("}};")

for label, z in [("One", 1), ("Half", mp.mpf(1) / 2), ("OnePlusI", 1 + 1j), ("Neg", mp.mpc(-3.5, 2)),
                 ("Far", mp.mpc(-49.5, 100)), ("Big", mp.mpc(30, -80)), ("Small", mp.mpc(0.01, 0.02))]:
    v = mp.loggamma(z)
    emit(f"kLogGamma{label}Re", mp.re(v))
    emit(f"kLogGamma{label}Im", mp.im(v))
emit("kArgGammaOnePlusI", mp.im(mp.loggamma(1 + 1j)))

# tanh^2 family c1 = 4: z = tanh^2(r/2); coefficients at r = 1, p = 1.3, m = 0.7.
r0, pp, m = mp.mpf(1), mp.mpf("1.3"), mp.mpf("0.7")
zf = lambda r: mp.tanh(r / 2) ** 2
z, z1, z2, z3 = (mp.diff(zf, r0, n) for n in range(4))
for sign, label in [(1, "Plus"), (-1, "Minus")]:
    c1 = sign * mp.sqrt(z) * (z - 1) / z1
    c0 = m * (z + 1) / (2 * mp.sqrt(z)) - sign * (z - 1) / 2 * ((1 - sign * pp) / mp.sqrt(z) - z2 * mp.sqrt(z) / z1**2)
    emit(f"kJ{label}C1", c1)
    emit(f"kJ{label}C0", c0)
emit("kQC2", z * (z - 1) ** 2 / z1**2)
emit("kQC0", -m**2 * (z - 1) ** 2 / (4 * z) - pp * m * (z**2 - 1) / (2 * z)
     + (z - 1) ** 2 / 4 * (z**2 * (2 * z3 * z1 - 3 * z2**2) - z1**4 * (pp**2 - 1)) / (z * z1**4))

fgen = {"f": 12, "h0": 3, "h1": -1, "a": 1, "c0": 0, "c1": 2}
f3 = {"f": 40, "h0": 0, "h1": -1, "a": 1, "c0": 0, "c1": 2}
for label, fam in [("Fgen", fgen), ("F3", f3)]:
    for i, E in enumerate(levels(fam)):
        emit(f"k{label}E{i}", E)

# Large-k phase of Gamma(m+1/2-if)/Gamma(m+1/2+if) for m = 1/2, c1 = 4, k = 50.
emit("kPhaseK50", -2 * mp.im(mp.loggamma(1 + 50j)))
