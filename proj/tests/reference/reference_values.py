"""Independent high-precision reference values frozen into the unit tests.

Every quantity here is computed from a contour or Fourier integral, a dense
matrix exponential or a special-function identity in mpmath, never from the
recurrences used by the library. Run with `python3 reference_values.py`.
"""
import mpmath as mp

mp.mp.dps = 30


def laurent(f, j, r):
    g = lambda th: f(r * mp.expj(th)) * (r * mp.expj(th)) ** (-j)
    return mp.re(mp.quad(g, [-mp.pi, 0, mp.pi]) / (2 * mp.pi))


def chain_S(z, t, p, eps, c, T):
    b = mp.sqrt(p * eps * (1 - z))
    q = p * c * (1 - z)
    tau = T - t
    if abs(b) < mp.mpf("1e-25"):
        return q / (1 + q * tau)
    e = mp.exp(-2 * b * tau)
    return b * ((b + q) - (b - q) * e) / ((b + q) + (b - q) * e)


def twosided_S(z, t, p, p1, q1, eps, c, T):
    Tz = (1 - 1 / z) * (1 - p) * q1 + (1 - z) * p * p1
    b = mp.sqrt(eps * Tz)
    q = c * Tz
    tau = T - t
    e = mp.exp(-2 * b * tau)
    return b * ((b + q) - (b - q) * e) / ((b + q) + (b - q) * e)


def variance(t, p):
    # (1/2pi) int (1 - exp(-2 t a)) / (2 a) dtheta with a = sqrt(p) Re sqrt(1 - e^{i theta})
    def f(th):
        a = mp.sqrt(p) * mp.re(mp.sqrt(1 - mp.expj(th)))
        return -mp.expm1(-2 * t * a) / (2 * a)
    return mp.quad(f, [0, mp.pi / 8, mp.pi, 2 * mp.pi - mp.pi / 8, 2 * mp.pi]) / (2 * mp.pi)


def section(name):
    print("\n# " + name)


section("chain stationary coefficients, p=0.25 eps=2: [z^k] sqrt(p eps (1-z))")
for k in (0, 1, 2, 5, 10, 50):
    print(k, mp.nstr(laurent(lambda z: mp.sqrt(0.5 * (1 - z)), k, mp.mpf("0.9")), 20))

section("chain Riccati at t=0, T=1, c=1, p=0.5, eps=1: [z^k] S_0(z)")
coef = mp.taylor(lambda z: chain_S(z, 0, 0.5, 1, 1, 1), 0, 6)
for k in range(7):
    print(k, mp.nstr(coef[k], 20))

section("chain Riccati at t=0.5, T=2, c=0.5, p=1, eps=2")
coef = mp.taylor(lambda z: chain_S(z, 0.5, 1, 2, 0.5, 2), 0, 4)
for k in range(5):
    print(k, mp.nstr(coef[k], 20))

section("two-sided Riccati at t=0, T=1, c=1, p=0.5, p1=1, q1=0.5, eps=1 (contour r=1)")
for j in range(-3, 4):
    print(j, mp.nstr(laurent(lambda z: twosided_S(z, 0, 0.5, 1, 0.5, 1, 1, 1), j, 1), 20))

section("chain kernel p_{0k}(t), p=0.5, t=2: dense expm of the exact upper-triangular truncation")
n = 30
q = [-mp.sqrt(0.5) * (-1) ** k * mp.binomial(mp.mpf(1) / 2, k) for k in range(n)]
Q = mp.matrix(n, n)
for i in range(n):
    for j in range(i, n):
        Q[i, j] = q[j - i]
E = mp.expm(2 * Q)
for k in (0, 1, 2, 5, 20):
    print(k, mp.nstr(E[0, k], 20))

section("variance Var(t) for sigma=1 by Fourier integral")
for p, t in ((1, 0.1), (1, 1), (0.5, 2), (1, 50), (0.5, 50), (0.25, 50)):
    print(p, t, mp.nstr(variance(t, p), 15))

section("two-sided stationary phi^j, p=0.8 p1=1 q1=0.1 eps=1.5 (contour between v/w and 1)")
p, p1, q1, eps = mp.mpf("0.8"), 1, mp.mpf("0.1"), mp.mpf("1.5")
B = p * p1 + (1 - p) * q1
w, v = p * p1 / B, (1 - p) * q1 / B
sym = lambda z: mp.sqrt(eps * B) * mp.sqrt(1 - w * z - v / z)
r = mp.sqrt(v / w)
for j in range(-3, 4):
    print(j, mp.nstr(laurent(sym, j, r), 20))

section("symmetric two-sided phi^j, eps=1 B=1 w=v=1/2")
print(0, mp.nstr(2 * mp.sqrt(2) / mp.pi, 20))
sym = lambda z: mp.sqrt(1 - z / 2 - 1 / (2 * z))
for j in (1, 2, 5):
    print(j, mp.nstr(laurent(sym, j, 1), 20))

section("two-sided kernel weight [z^d] exp(-t sqrt(1 - p z - (1-p)/z)), p=0.3, t=1")
p = mp.mpf("0.3")
f = lambda z: mp.exp(-mp.sqrt(1 - p * z - (1 - p) / z))
for d in (-5, -1, 0, 1, 5):
    print(d, mp.nstr(laurent(f, d, mp.sqrt((1 - p) / p)), 20))

section("two-sided kernel weight p=0.5, t=2")
f = lambda z: mp.exp(-2 * mp.sqrt(1 - z / 2 - 1 / (2 * z)))
for d in (0, 1, 30):
    print(d, mp.nstr(laurent(f, d, 1), 20))

section("hyp2f1")
for a, b, c, z in ((0.25, 0.75, 2, 0.5), (-0.25, 0.25, 1, 1), (1.25, 1.75, 3, 0.97),
                   (0.75, 1.25, 2, 0.999), (1, 1, 2, -0.5), (0.5, 0.5, 1.5, 0.95)):
    print(a, b, c, z, mp.nstr(mp.hyp2f1(a, b, c, z), 20))

section("rho_j(-nu^2) = sqrt(2 nu/pi) e^nu K_{j-1/2}(nu) / (2^j nu^j)")
for j in (0, 1, 3, 8):
    for nu in (0.5, 2):
        nu = mp.mpf(nu)
        print(j, nu, mp.nstr(mp.sqrt(2 * nu / mp.pi) * mp.exp(nu) * mp.besselk(j - 0.5, nu) / (2 ** j * nu ** j), 20))
