"""Independent numpy recomputation of the reference values frozen in
tests/unit/oracle_values.hpp. Run: python3 tests/oracles/derive.py"""

import itertools
import json
import math

import numpy as np

ln2 = math.log(2.0)


def ceil_snap(x):
    r = round(x)
    return float(r) if abs(x - r) <= 1e-12 * max(1.0, abs(x)) else float(math.ceil(x))


def log_q(x, q):
    v = math.log(x) / math.log(q)
    r = round(v)
    return float(r) if abs(v - r) <= 1e-12 * max(1.0, abs(v)) else v


# ---------------------------------------------------------------- scalars

def scalars():
    out = {}
    out["parallel_r_2_2_1024"] = 2 * ceil_snap(log_q(4 * 1024 * 24, 2) + log_q(10, 2) + 1)
    out["parallel_r_2_1_8"] = 2 * ceil_snap(log_q(1 * 8 / 0.5, 2) + log_q(10, 2) + 1)
    out["glue_0_0_2_1024"] = (1 + 5 * 4 / 1024) - 1
    out["glue_01_0_1_8"] = 1.1 * (1 + 5 / 8) - 1
    out["glue_0_0_1_8"] = 5 / 8
    dims = [2.0 ** 9] * 10
    out["glue_chain_exact"] = math.prod(1 + 20 / a for a in dims) - 1
    out["glue_chain_exp"] = math.exp(1 + sum(20 / a for a in dims)) - 1
    out["parallel_delta_derived_2_1_16_10"] = math.exp(1 + 10 * 16 / (2 ** 9 * 10)) - 1
    out["parallel_delta_stated_2_2_64_8"] = math.exp(1 + 20 * 4 * 64 / (8 * 2 ** 3)) - 1
    out["parallel_delta_derived_2_2_64_8"] = math.exp(1 + 10 * 4 * 64 / (2 ** 7 * 8)) - 1
    out["parallel_lambda_2_2_1024_1"] = 2 / (3 * 2 * math.log2(5670 * 4 * 4 * 1024))
    out["c_qk_2_2"] = 261000 * 9 * 4 * 2 ** (5 + 3.1 / ln2)
    out["parallel_depth_2_1_8"] = ceil_snap((16 + 1) * 4)
    sites = 2 * 2 * ceil_snap(math.log2(60 * 16 / 0.5))
    f = ceil_snap((2 * sites + math.log2(10)) * 4)
    out["tree_sites"] = sites
    out["tree_f"] = f
    out["tree_lambda"] = 0.5 * (1 / 30) / (4 * f)
    out["beta_01_01"] = 0.9 / 1.1 - 0.1 / (0.9 * (2 * ln2 - 1))
    out["compose_05_03"] = 0.3 * out["beta_01_01"]
    h = lambda x: -x * math.log(x) - (1 - x) * math.log(1 - x)
    out["continuity_01_5"] = 0.1 * 5 + 1.1 * h(1 / 11)
    # Smallest t with (1 - lambda)^t k n ln q <= 2 eps^2.
    t = 0
    while (0.99 ** t) * 2 * 10 * ln2 > 2 * 0.01 ** 2:
        t += 1
    out["additive_depth"] = t
    out["rel_entropy_bits"] = 0.75 * math.log2(1.5) + 0.25 * math.log2(0.5)
    out["pinsker_pure_vs_mixed"] = 1.0 - 2 * ln2
    out["spurious_mean_100_50"] = 0.1 * 99 * 50
    out["spurious_sd_100_50"] = math.sqrt(99 * 50 * 0.1 * 0.9)
    return out


# ---------------------------------------------------------------- channels

def choi_of(apply, d):
    j = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for k in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, k] = 1
            j[i * d:(i + 1) * d, k * d:(k + 1) * d] = apply(e)
    return j


def min_eig(m):
    return np.linalg.eigvalsh((m + m.conj().T) / 2).min()


def bisect_eps(jp, js, steps=60):
    # smallest eps with jp - (1 - eps) js PSD
    lo, hi = 0.0, 1.0
    if min_eig(jp - js) >= -1e-10:
        return 0.0
    for _ in range(steps):
        mid = (lo + hi) / 2
        if min_eig(jp - (1 - mid) * js) >= -1e-10:
            hi = mid
        else:
            lo = mid
    return hi


def bisect_delta(jp, js, steps=60):
    if min_eig(js - jp) >= -1e-10:
        return 0.0
    hi = 1.0
    while min_eig((1 + hi) * js - jp) < -1e-10:
        hi *= 2
    lo = 0.0
    for _ in range(steps):
        mid = (lo + hi) / 2
        if min_eig((1 + mid) * js - jp) >= -1e-10:
            hi = mid
        else:
            lo = mid
    return hi


def depol(p):
    return lambda x: (1 - p) * x + p * np.trace(x) * np.eye(x.shape[0]) / x.shape[0]


def comparability():
    jp = choi_of(depol(0.9), 2)
    js = choi_of(depol(1.0), 2)
    return {"depol09_eps": bisect_eps(jp, js), "depol09_delta": bisect_delta(jp, js)}


def cb_return_time(p, t_max=20):
    # Liouville of the unital depolarizer is self-adjoint; (phi* phi)^t
    # has Choi J_t; compare to 0.9 E and 1.1 E.
    paulis = [np.eye(2), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    ks = [math.sqrt(1 - 3 * p / 4) * paulis[0]] + [math.sqrt(p / 4) * s for s in paulis[1:]]
    step = lambda x: sum(k @ x @ k.conj().T for k in ks)
    je = choi_of(depol(1.0), 2)
    for t in range(1, t_max + 1):
        def power(x, t=t):
            for _ in range(2 * t):
                x = step(x)
            return x
        j = choi_of(power, 2)
        if min_eig(j - 0.9 * je) >= -1e-9 and min_eig(1.1 * je - j) >= -1e-9:
            return t
    return None


# ---------------------------------------------------------------- twirls

def perm_op(sigma, d):
    k = len(sigma)
    dim = d ** k
    p = np.zeros((dim, dim))
    for idx in itertools.product(range(d), repeat=k):
        out = [0] * k
        for j in range(k):
            out[sigma[j]] = idx[j]
        a = 0
        b = 0
        for j in range(k):
            a = a * d + out[j]
            b = b * d + idx[j]
        p[a, b] = 1
    return p


def k2_twirl(x, d):
    # Symmetric / antisymmetric projector formula for k = 2.
    swap = perm_op((1, 0), d)
    ident = np.eye(d * d)
    ps = (ident + swap) / 2
    pa = (ident - swap) / 2
    out = np.trace(ps @ x) / np.trace(ps) * ps
    if d > 1:
        out = out + np.trace(pa @ x) / np.trace(pa) * pa
    return out


def apply_on_factors(op_map, rho, dims, factors):
    # Move the listed factors to the front, apply op_map on them, move back.
    n = len(dims)
    rest = [f for f in range(n) if f not in factors]
    order = list(factors) + rest
    t = rho.reshape(dims + dims)
    t = t.transpose(order + [n + o for o in order])
    da = int(np.prod([dims[f] for f in factors]))
    dr = int(np.prod([dims[f] for f in rest])) if rest else 1
    t = t.reshape(da, dr, da, dr)
    out = np.zeros_like(t)
    for a in range(dr):
        for b in range(dr):
            out[:, a, :, b] = op_map(t[:, a, :, b])
    out = out.reshape([dims[f] for f in order] * 2)
    inv = np.argsort(order).tolist()
    out = out.transpose(inv + [n + i for i in inv])
    tot = int(np.prod(dims))
    return out.reshape(tot, tot)


def rel_entropy(r, s):
    er, vr = np.linalg.eigh(r)
    es, vs = np.linalg.eigh(s)
    lr = vr @ np.diag([math.log(x) if x > 1e-12 else 0.0 for x in er]) @ vr.conj().T
    ls = vs @ np.diag([math.log(x) if x > 1e-12 else 0.0 for x in es]) @ vs.conj().T
    return float(np.real(np.trace(r @ (lr - ls))))


def brickwork_ratio_k2():
    # n = 4 qubits, k = 2: factors are copy-major, (copy, site) -> copy*4 + site.
    dims = [2] * 8
    def twirl_sites(rho, sites):
        factors = [c * 4 + s for c in range(2) for s in sites]
        return apply_on_factors(lambda x: k2_twirl(x, 2 ** len(sites)), rho, dims, factors)
    def phi(rho):
        rho = twirl_sites(rho, [0, 1])
        rho = twirl_sites(rho, [2, 3])
        return twirl_sites(rho, [1, 2])
    def e(rho):
        return twirl_sites(rho, [0, 1, 2, 3])
    rho = np.zeros((256, 256), dtype=complex)
    rho[0, 0] = 1
    er = e(rho)
    num = rel_entropy(phi(rho), phi(er))
    den = rel_entropy(rho, er)
    return {"brickwork_k2_ratio_zero_state": num / den, "brickwork_k2_den": den}


def glue_check():
    # n = 5, k = 1: twirl on AB then BC against the global twirl, dim 1024 Choi.
    dims = [2] * 5
    def twirl(rho, sites):
        return apply_on_factors(lambda x: np.trace(x) * np.eye(x.shape[0]) / x.shape[0], rho, dims, sites)
    composed = lambda x: twirl(twirl(x, [0, 1, 2, 3]), [1, 2, 3, 4])
    glob = lambda x: np.trace(x) * np.eye(32) / 32
    jp = choi_of(composed, 32)
    js = choi_of(glob, 32)
    return {"glue_measured_eps": bisect_eps(jp, js), "glue_measured_delta": bisect_delta(jp, js)}


def main():
    out = scalars()
    out.update(comparability())
    out["cb_depol_half"] = cb_return_time(0.5)
    out.update(brickwork_ratio_k2())
    out.update(glue_check())
    out["twirl_00_11_max_abs"] = float(np.abs(k2_twirl(np.outer(np.eye(4)[0], np.eye(4)[3]), 2)).max())
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
