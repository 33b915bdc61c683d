#!/usr/bin/env python3
"""Independent reference values for tests/test_ensemble.cpp and tests/test_sagnac.cpp.

Every ensemble transfer matrix is built by multiplying the per-atom and
free-propagation matrices one by one in 30-digit arithmetic (no closed-form
matrix power, no Bloch angle), then the scattering coefficients are read off
the blocks. Run with `python3 gen_oracles.py`; the printed values are frozen
in the C++ tests.
"""
import mpmath as mp

mp.mp.dps = 30
I = mp.mpc(0, 1)
PI = mp.pi


def atom(beta):
    """T_a(β) for a matrix β (list of rows)."""
    n = beta.rows
    one = mp.eye(n)
    t = mp.zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            t[i, j] = one[i, j] - beta[i, j]
            t[i, n + j] = -beta[i, j]
            t[n + i, j] = beta[i, j]
            t[n + i, n + j] = one[i, j] + beta[i, j]
    return t


def free(phase, n):
    t = mp.zeros(2 * n, 2 * n)
    for i in range(n):
        t[i, i] = mp.exp(I * phase)
        t[n + i, n + i] = mp.exp(-I * phase)
    return t


def blocks(t, n):
    def sub(r, c):
        m = mp.zeros(n, n)
        for i in range(n):
            for j in range(n):
                m[i, j] = t[r * n + i, c * n + j]
        return m
    return sub(0, 0), sub(0, 1), sub(1, 0), sub(1, 1)


def scatter(t, n):
    t11, t12, t21, t22 = blocks(t, n)
    inv22 = mp.inverse(t22)
    r_plus = -inv22 * t21
    t_plus = t11 - t12 * inv22 * t21
    r_minus = t12 * inv22
    t_minus = inv22
    if n == 1:
        return r_plus[0, 0], t_plus[0, 0], r_minus[0, 0], t_minus[0, 0]
    # σ₊ in from the left: reflected σ₋, transmitted σ₊ (mirrored on the right).
    return r_plus[1, 0], t_plus[0, 0], r_minus[0, 1], t_minus[1, 1]


def lambda_matrix(N, g1d, dc, om, delta, stored_cell=None):
    gp = 1 - g1d
    big_delta = dc + delta
    b3 = g1d * delta / ((gp - 2 * I * big_delta) * delta + 2 * I * om ** 2)
    b2 = g1d / (gp - 2 * I * big_delta)
    bde = mp.mpf(g1d) / gp
    one = mp.matrix([[1]])
    quarter = free(PI / 2, 1)
    cell = quarter * atom(b2 * one) * quarter * atom(b3 * one)
    ph = quarter * atom(b2 * one) * quarter * atom(bde * one)
    t = mp.eye(2)
    for c in range(N // 2):
        t = (ph if c == stored_cell else cell) * t
    return t


def dual_v_matrix(N, g1d, dc, om, d, delta, stored_atom=None):
    dg = dc + delta + I / 2
    den = dg * dg * delta - 2 * dg * om ** 2
    r_same = -I * (g1d / 2) * (dg * delta - om ** 2) / den
    r_cross = -I * (g1d / 2) * om ** 2 / den
    length = d * N
    t = free(0, 2)
    for j in range(N):
        z = d * j
        if j == stored_atom:
            s = mp.matrix([[-g1d, 0], [0, -g1d]])
        else:
            ph = mp.exp(2 * I * PI * z)
            s = mp.matrix([[r_same, r_cross * ph], [r_cross / ph, r_same]])
        beta = -mp.inverse(mp.eye(2) + s) * s
        nxt = d * (j + 1) if j + 1 < N else length
        t = free(PI * (nxt - z), 2) * atom(beta) * t
    return t


def sagnac_R(r_plus, t_plus, r_minus, t_minus, length):
    once = mp.exp(I * (-PI * length - PI))
    return -(r_plus - (t_plus * once + t_minus * once) + r_minus * once * once) / 2


def show(name, values):
    print(name)
    for label, v in zip(("r_plus", "t_plus", "r_minus", "t_minus"), values):
        print(f"  {label:8s} {mp.nstr(mp.re(v), 17):>26s} {mp.nstr(mp.im(v), 17):>26s}")


if __name__ == "__main__":
    for delta in ("0.1", "0.157394"):
        dl = mp.mpf(delta)
        for site in (None, 2500):
            vals = scatter(lambda_matrix(10000, mp.mpf("0.05"), -10, 10, dl, site), 1)
            show(f"lambda N=1e4 dc=-10 om=10 delta={delta} stored_cell={site}", vals)
            R = sagnac_R(*vals, 5000)
            print(f"  R        {mp.nstr(mp.re(R), 17):>26s} {mp.nstr(mp.im(R), 17):>26s}")
    for site in (None, 100):
        vals = scatter(lambda_matrix(1000, mp.mpf("0.05"), -3, 2, mp.mpf("0.05"), site), 1)
        show(f"lambda N=1000 dc=-3 om=2 delta=0.05 stored_cell={site}", vals)
    for site in (None, 57):
        vals = scatter(dual_v_matrix(200, mp.mpf("0.05"), -2, 1, mp.mpf("0.266"), mp.mpf("0.01"), site), 2)
        show(f"dual_v N=200 dc=-2 om=1 d=0.266 delta=0.01 stored_atom={site}", vals)
        R = sagnac_R(*vals, mp.mpf("0.266") * 200)
        print(f"  R        {mp.nstr(mp.re(R), 17):>26s} {mp.nstr(mp.im(R), 17):>26s}")
