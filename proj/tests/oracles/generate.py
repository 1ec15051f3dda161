"""Independent high-precision oracles for the unit tests (mpmath, 30 digits).

Matrix functions are taken by mpmath directly; nothing here shares code with
the C++ library. Run: python3 tests/oracles/generate.py
"""
import mpmath as mp

mp.mp.dps = 30


def herm_fn(m, f):
    e, q = mp.eighe(m)
    d = mp.diag([f(x) if x > mp.mpf("1e-25") else mp.mpf(0) for x in e])
    return q * d * q.H


def tr(m):
    return mp.re(sum(m[i, i] for i in range(m.rows)))


def petz(rho, sigma, a):
    return mp.log(tr(herm_fn(rho, lambda x: x**a) * herm_fn(sigma, lambda x: x ** (1 - a)))) / (a - 1)


def sandwiched(rho, sigma, a):
    s = herm_fn(sigma, lambda x: x ** ((1 - a) / (2 * a)))
    return mp.log(tr(herm_fn(s * rho * s, lambda x: x**a))) / (a - 1)


def vn(rho, sigma):
    return tr(rho * herm_fn(rho, mp.log)) - tr(rho * herm_fn(sigma, mp.log))


def tsallis(rho, sigma, q):
    return (tr(herm_fn(rho, lambda x: x**q) * herm_fn(sigma, lambda x: x ** (1 - q))) - 1) / (q - 1)


def min_rel(rho, sigma):
    return -mp.log(tr(herm_fn(rho, lambda x: mp.mpf(1)) * sigma))


def max_rel(rho, sigma):
    s = herm_fn(sigma, lambda x: x ** mp.mpf(-0.5))
    e, _ = mp.eighe(s * rho * s)
    return mp.log(max(e))


def werner(eps):
    eps = mp.mpf(eps)
    psi = mp.matrix([[0], [1], [-1], [0]]) / mp.sqrt(2)
    return (1 - eps) * mp.eye(4) / 4 + eps * psi * psi.T


def phi_z(rho):
    out = mp.zeros(4, 4)
    for i in range(4):
        for j in range(4):
            if (i // 2) == (j // 2):
                out[i, j] = rho[i, j]
    return out


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


rho = mp.matrix([[0.7, mp.mpc(0.2, 0.1)], [mp.mpc(0.2, -0.1), 0.3]])
sigma = mp.matrix([[0.4, -0.1], [-0.1, 0.6]])
show("qubit vN", vn(rho, sigma))
show("qubit petz 0.5", petz(rho, sigma, mp.mpf(0.5)))
show("qubit petz 2", petz(rho, sigma, mp.mpf(2)))
show("qubit sandwiched 0.5", sandwiched(rho, sigma, mp.mpf(0.5)))
show("qubit sandwiched 2", sandwiched(rho, sigma, mp.mpf(2)))
show("qubit tsallis 1.5", tsallis(rho, sigma, mp.mpf(1.5)))
show("qubit minRel", min_rel(rho, sigma))
show("qubit maxRel", max_rel(rho, sigma))

ln2 = mp.log(2)
for eps, a in [("0.3", "0.25"), ("0.7", "0.5"), ("0.5", "0.125")]:
    w = werner(eps)
    show(f"werner down eps={eps} alpha={a}", ln2 - petz(w, phi_z(w), mp.mpf(a)))
for eps, q in [("0.4", "1.5"), ("0.9", "0.5"), ("0.6", "2")]:
    w = werner(eps)
    q = mp.mpf(q)
    lnq2 = (2 ** (1 - q) - 1) / (1 - q)
    show(f"werner tsallis eps={eps} q={q}", lnq2 - 2 ** (1 - q) * tsallis(w, phi_z(w), q))
for eps, a in [("0.89", "0.24"), ("0.5", "0.5")]:
    # Sibson form: ln d - alpha/(alpha-1) ln Tr[(phi(rho^alpha))^{1/alpha}]
    w = werner(eps)
    a = mp.mpf(a)
    x = phi_z(herm_fn(w, lambda v: v**a))
    show(f"werner up eps={eps} alpha={a}", ln2 - a / (a - 1) * mp.log(tr(herm_fn(x, lambda v: v ** (1 / a)))))
w = werner("0.5")
show("werner maxRel eps=0.5", ln2 - max_rel(w, phi_z(w)))
