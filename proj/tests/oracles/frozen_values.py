"""Reference values frozen into tests/oracle_values.hpp, computed with mpmath / scipy."""
import mpmath as mp
import numpy as np
from scipy import stats

mp.mp.dps = 40


def noge_pmf(x, theta, phi):
    return mp.mpf(phi) if x == 0 else (1 - mp.mpf(phi)) * (1 - mp.mpf(theta)) ** (x - 1) * mp.mpf(theta)


def gp_pmf(x, eta, kappa):
    eta, kappa = mp.mpf(eta), mp.mpf(kappa)
    s = eta + kappa * x
    if s <= 0:
        return mp.mpf(0)
    return eta * s ** (x - 1) * mp.e ** (-s) / mp.factorial(x)


print("// NoGe(theta=0.3, phi=0.2), x = 0..5")
print([mp.nstr(noge_pmf(x, "0.3", "0.2"), 20) for x in range(6)])
print("// GP(eta=2.5, kappa=0.3), x = 0..5")
print([mp.nstr(gp_pmf(x, "2.5", "0.3"), 20) for x in range(6)])
print("// GP(eta=2, kappa=-0.4) truncated mass, m")
m = max(k for k in range(100) if 2 - 0.4 * k > 1e-15)
print(m, mp.nstr(sum(gp_pmf(x, "2", "-0.4") for x in range(m + 1)), 20))
print("// NB(n=2.5, p=0.4), x = 0..5")
print([repr(stats.nbinom.pmf(x, 2.5, 0.4)) for x in range(6)])
print("// Poisson(3.2), x = 0..5")
print([repr(stats.poisson.pmf(x, 3.2)) for x in range(6)])

# Scenario I acvf (law of total variance form)
a, b, phi, a0 = mp.mpf("0.2"), mp.mpf("0.1"), mp.mpf("0.05"), mp.mpf(1)
zeta = 2 / (1 - phi)
mu = a0 / (1 - a - b)
K = (1 + phi) / (1 - phi) * mu ** 2 - mu
D = 1 - zeta * a ** 2 - 2 * a * b - b ** 2
gl0 = a ** 2 * K / D
var = zeta * gl0 + K
g1 = (zeta * a + b) * gl0 + a * K
print("// scenario I: mu, var, gamma_x(1), rho_x(1), rho_x(2), gamma_lambda(0)")
print(mp.nstr(mu, 20), mp.nstr(var, 20), mp.nstr(g1, 20), mp.nstr(g1 / var, 20), mp.nstr((a + b) * g1 / var, 20), mp.nstr(gl0, 20))
a, b, phi = mp.mpf("0.4"), mp.mpf("0.2"), mp.mpf("0.55")
print("// scenario III second-order coefficient")
print(mp.nstr(2 / (1 - phi) * a ** 2 + 2 * a * b + b ** 2, 20))

# Leapfrog on U = theta^2/2, eps = 0.1, one step from (1, 0)
eps = mp.mpf("0.1")
v_half = 0 - eps / 2 * 1
th = 1 + eps * v_half
v = v_half - eps / 2 * th
print("// leapfrog", mp.nstr(v_half, 20), mp.nstr(th, 20), mp.nstr(v, 20))

# Geometric-shaped predictive crossing 0.5 between 2 and 3: NoGe(theta=0.25, phi=0.1)
cdf = np.cumsum([float(noge_pmf(x, "0.25", "0.1")) for x in range(10)])
print("// NoGe(0.25, 0.1) cdf", cdf[:5], "median", int(np.argmax(cdf >= 0.5)))
