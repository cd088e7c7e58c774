"""Independent symbolic oracles for the C++ test suite.

Run with `python3 tests/oracles/generate_oracles.py`. It asserts the symbolic
identities the library relies on and prints the frozen numeric values that
tests/unit/oracle_values.hpp records.
"""
import sympy as sp

t, x, z, lam = sp.symbols("t x z lambda", real=True)
g, f, N = sp.symbols("g f N", positive=True)
k, m = sp.symbols("k m", real=True)


def J(a, b):
    return sp.diff(a, x) * sp.diff(b, z) - sp.diff(a, z) * sp.diff(b, x)


def lap(a):
    return sp.diff(a, x, 2) + sp.diff(a, z, 2)


def residuals(psi, v, rho):
    r1 = sp.diff(lap(psi), t) - g * sp.diff(rho, x) - f * sp.diff(v, z) - J(psi, lap(psi))
    r2 = sp.diff(v, t) + f * sp.diff(psi, z) - J(psi, v)
    r3 = sp.diff(rho, t) + N**2 / g * sp.diff(psi, x) - J(psi, rho)
    return r1, r2, r3


def check_zero(expr, what):
    assert sp.simplify(expr) == 0, what


omega = sp.sqrt((k**2 * N**2 + m**2 * f**2) / (k**2 + m**2))
L = k * x + m * z


def frozen(name, value):
    print(f"{name} = {sp.N(value, 20)}")


# Dispersion relation.
frozen("omega_k3_m4_N2_f1", omega.subs({k: 3, m: 4, N: 2, f: 1}))

# Invariant solution: psi = phi lambda^2, v = V lambda, rho = R lambda.
C1, C2, C3 = sp.symbols("C1 C2 C3", real=True)
br = C2 * sp.cos(omega * t) - C1 * sp.sin(omega * t)
psi_i = (C1 * sp.cos(omega * t) + C2 * sp.sin(omega * t)) * L**2
v_i = (2 * f * m / omega * br + C3) * L
rho_i = (2 * k * N**2 / (g * omega) * br - f * m / (g * k) * C3) * L
for i, r in enumerate(residuals(psi_i, v_i, rho_i)):
    check_zero(r, f"invariant solution residual {i}")
ivals = {g: sp.Rational(981, 100), f: sp.Rational(7, 10), N: sp.Rational(13, 10), k: sp.Rational(3, 2),
         m: -sp.Rational(1, 2), C1: sp.Rational(3, 10), C2: -sp.Rational(4, 5), C3: sp.Rational(9, 20),
         t: sp.Rational(37, 100), x: sp.Rational(2, 5), z: -sp.Rational(11, 10)}
frozen("invariant_psi", psi_i.subs(ivals))
frozen("invariant_v", v_i.subs(ivals))
frozen("invariant_rho", rho_i.subs(ivals))

# Generalized beam with arbitrary envelopes, and the mean-profile constraint.
A, B, F, H = (sp.Function(n) for n in "ABFH")
S = sp.diff(B(L), x) / k * sp.cos(omega * t) - sp.diff(A(L), x) / k * sp.sin(omega * t)
psi_b = A(L) * sp.cos(omega * t) + B(L) * sp.sin(omega * t)
v_b = f * m / omega * S + F(L)
rho_b = k * N**2 / (g * omega) * S + H(L)
r1, r2, r3 = residuals(psi_b, v_b, rho_b)
check_zero(r2, "beam residual 2")
check_zero(r3, "beam residual 3")
Fp = sp.diff(F(L), x) / k
Hp = sp.diff(H(L), x) / k
check_zero(r1 + g * k * Hp + f * m * Fp, "beam residual 1 equals -(gkH' + fmF')")

# Lorentzian beam: A + iB = a / (1 - i lambda).
a = sp.Rational(13, 10)
A_l = a / (1 + lam**2)
B_l = a * lam / (1 + lam**2)
l0 = sp.Rational(7, 10)
for n in range(4):
    frozen(f"lorentz_A_d{n}", sp.diff(A_l, lam, n).subs(lam, l0))
    frozen(f"lorentz_B_d{n}", sp.diff(B_l, lam, n).subs(lam, l0))
check_zero(sp.diff(A_l, lam)**2 + sp.diff(B_l, lam)**2 - a**2 / (1 + lam**2)**2, "Lorentzian energy")

bvals = {g: sp.Rational(981, 100), f: sp.Rational(7, 10), N: sp.Rational(13, 10), k: 1, m: 2,
         t: sp.Rational(37, 100), x: sp.Rational(2, 5), z: -sp.Rational(11, 10)}
Sl = (sp.diff(B_l, lam) * sp.cos(omega * t) - sp.diff(A_l, lam) * sp.sin(omega * t)).subs(lam, L)
frozen("lorentz_beam_psi", (A_l.subs(lam, L) * sp.cos(omega * t) + B_l.subs(lam, L) * sp.sin(omega * t)).subs(bvals))
frozen("lorentz_beam_v", (f * m / omega * Sl).subs(bvals))
frozen("lorentz_beam_rho", (k * N**2 / (g * omega) * Sl).subs(bvals))

# Gaussian envelope.
ga, gw = sp.Rational(4, 5), sp.Integer(2)
G = ga * sp.exp(-(lam / gw)**2)
for n in range(4):
    frozen(f"gauss_d{n}", sp.diff(G, lam, n).subs(lam, sp.Rational(9, 10)))

# Energy vector: D_t E + D_x C2 + D_z C3 = 0 once time derivatives are
# replaced by the equations (arbitrary fields).
psi, v, rho = (sp.Function(n)(t, x, z) for n in ("psi", "v", "rho"))
w = g**2 / N**2
E = v**2 + w * rho**2 + sp.diff(psi, x)**2 + sp.diff(psi, z)**2
C2e = (2 * g * rho * psi + v**2 * sp.diff(psi, z) + w * rho**2 * sp.diff(psi, z)
       - 2 * psi * sp.diff(psi, x, t) + psi**2 * sp.diff(lap(psi), z))
C3e = (2 * f * v * psi - v**2 * sp.diff(psi, x) - w * rho**2 * sp.diff(psi, x)
       - 2 * psi * sp.diff(psi, z, t) - psi**2 * sp.diff(lap(psi), x))
R1, R2, R3 = residuals(psi, v, rho)
div = sp.diff(E, t) + sp.diff(C2e, x) + sp.diff(C3e, z)
# For arbitrary fields the divergence is a combination of the equation residuals.
check_zero(sp.expand(div - 2 * v * R2 - 2 * w * rho * R3 + 2 * psi * R1), "energy divergence identity")

# Adjoint residuals under phi = psi, mu = -v, r = -(g^2/N^2) rho.
phi, mu, r = psi, -v, -w * rho
theta = (J(mu, v) + J(r, rho) + 2 * (sp.diff(phi, x, z) * sp.diff(psi, x, x) + sp.diff(phi, z, z) * sp.diff(psi, x, z)
                                     - sp.diff(phi, x, x) * sp.diff(psi, x, z) - sp.diff(phi, x, z) * sp.diff(psi, z, z)))
check_zero(theta, "theta under substitution")
a1 = (lap(sp.diff(phi, t)) + N**2 / g * sp.diff(r, x) + f * sp.diff(mu, z) - sp.diff(phi, x) * sp.diff(lap(psi), z)
      + sp.diff(phi, z) * sp.diff(lap(psi), x) - theta)
a2 = -sp.diff(mu, t) - sp.diff(mu, x) * sp.diff(psi, z) + f * sp.diff(phi, z) + sp.diff(mu, z) * sp.diff(psi, x)
a3 = -sp.diff(r, t) + g * sp.diff(phi, x) - sp.diff(r, x) * sp.diff(psi, z) + sp.diff(r, z) * sp.diff(psi, x)
check_zero(a1 - R1, "adjoint 1")
check_zero(a2 - R2, "adjoint 2")
check_zero(a3 - w * R3, "adjoint 3")
print("symbolic identities verified")
