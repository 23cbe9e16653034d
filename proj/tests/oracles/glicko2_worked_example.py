"""Hand-executed Glicko-2 step sequence for the standard worked example.

Each step is written out literally (no loops shared with the C++ engine) and
the intermediate values are frozen into glicko2_worked_example.json.
"""
import json
import math
import sys

SCALE = 173.7178
tau = 0.5
eps = 1e-6

r, rd, sigma = 1500.0, 200.0, 0.06
opponents = [(1400.0, 30.0, 1.0), (1550.0, 100.0, 0.0), (1700.0, 300.0, 0.0)]

# Step 2: internal scale.
mu = (r - 1500.0) / SCALE
phi = rd / SCALE
ops = [((ro - 1500.0) / SCALE, rdo / SCALE, s) for ro, rdo, s in opponents]

def g(ph):
    return 1.0 / math.sqrt(1.0 + 3.0 * ph * ph / math.pi ** 2)

def E(m, mj, phj):
    return 1.0 / (1.0 + math.exp(-g(phj) * (m - mj)))

# Step 3: estimated variance.
v = 1.0 / sum(g(pj) ** 2 * E(mu, mj, pj) * (1 - E(mu, mj, pj)) for mj, pj, _ in ops)
# Step 4: improvement.
delta_sum = sum(g(pj) * (s - E(mu, mj, pj)) for mj, pj, s in ops)
delta = v * delta_sum

# Step 5: volatility via Illinois iteration.
a = math.log(sigma ** 2)
def f(x):
    ex = math.exp(x)
    return ex * (delta ** 2 - phi ** 2 - v - ex) / (2.0 * (phi ** 2 + v + ex) ** 2) - (x - a) / tau ** 2

A = a
if delta ** 2 > phi ** 2 + v:
    B = math.log(delta ** 2 - phi ** 2 - v)
else:
    k = 1
    while f(a - k * tau) < 0:
        k += 1
    B = a - k * tau
fA, fB = f(A), f(B)
iterations = 0
while abs(B - A) > eps:
    C = A + (A - B) * fA / (fB - fA)
    fC = f(C)
    if fC * fB <= 0:
        A, fA = B, fB
    else:
        fA = fA / 2.0
    B, fB = C, fC
    iterations += 1
sigma_new = math.exp(A / 2.0)

# Step 6-7.
phi_star = math.sqrt(phi ** 2 + sigma_new ** 2)
phi_new = 1.0 / math.sqrt(1.0 / phi_star ** 2 + 1.0 / v)
mu_new = mu + phi_new ** 2 * delta_sum

# Step 8.
out = {
    "player": {"r": r, "rd": rd, "sigma": sigma},
    "tau": tau,
    "opponents": [{"r": ro, "rd": rdo, "score": s} for ro, rdo, s in opponents],
    "mu": mu, "phi": phi,
    "v": v, "delta": delta,
    "sigma_new": sigma_new, "volatility_iterations": iterations,
    "phi_star": phi_star, "phi_new": phi_new, "mu_new": mu_new,
    "r_new": SCALE * mu_new + 1500.0, "rd_new": SCALE * phi_new,
}
json.dump(out, sys.stdout, indent=2)
print()
