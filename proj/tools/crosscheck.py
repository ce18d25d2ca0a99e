#!/usr/bin/env python3
"""Independent brute-force cross-check for the dit library.

Recomputes, by raw enumeration over all sequence pairs (no dynamic
programming, no context chains, no shared code with the C++ library),
every pinned reference value asserted in tests/.  Run it from the repo
root and compare the printed table against the frozen constants:

    python3 tools/crosscheck.py

Model semantics mirrored here (and nowhere shared with src/):
  * order-k pair process, interleaved generation x_1,y_1,x_2,y_2,...
  * backward kernel  p(x_i | x_{i-k..i-1}, y_{i-k..i-1})
  * forward kernel   p(y_i | x_{i-k+1..i}, y_{i-k..i-1})
  * histories shorter than k near the start are distinct (truncated)
    contexts.

Everything is float64; all logs are base 2.
"""

import math
from itertools import product

LOG2 = math.log(2.0)


def log2(v):
    return math.log(v) / LOG2


def h_bin(p):
    """Binary entropy in bits with 0 log 0 := 0."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * log2(p) - (1.0 - p) * log2(1.0 - p)


def convolve(p, q):
    return (1.0 - p) * q + (1.0 - q) * p


def ent(pmf):
    return -sum(p * log2(p) for p in pmf if p > 0.0)


class Model:
    """Order-k joint process model with dict kernels.

    backward: (x_hist tuple, y_hist tuple) -> pmf over X
    forward:  (x_hist_incl_current tuple, y_hist tuple) -> pmf over Y
    """

    def __init__(self, nx, ny, k, backward, forward):
        self.nx, self.ny, self.k = nx, ny, k
        self.backward, self.forward = backward, forward

    def b(self, xs, ys, i):
        """p(x_i | past) pmf at 1-based step i given full prefixes."""
        t = min(i - 1, self.k)
        return self.backward[(tuple(xs[i - 1 - t:i - 1]), tuple(ys[i - 1 - t:i - 1]))]

    def f(self, xs, ys, i):
        """p(y_i | x^i, past) pmf at step i; xs must include x_i."""
        tx = min(i, self.k)
        ty = min(i - 1, self.k)
        return self.forward[(tuple(xs[i - tx:i]), tuple(ys[i - 1 - ty:i - 1]))]

    def joint(self, xs, ys):
        p = 1.0
        n = len(xs)
        for i in range(1, n + 1):
            p *= self.b(xs, ys, i)[xs[i - 1]] * self.f(xs, ys, i)[ys[i - 1]]
        return p

    def px_causal(self, xs, ys, d):
        """p(x^n || y^{n-d}) = prod_i p(x_i | x^{i-1}, y^{i-d}), d in {0,1}."""
        p = 1.0
        n = len(xs)
        for i in range(1, n + 1):
            bw = self.b(xs, ys, i)
            if d == 1:
                p *= bw[xs[i - 1]]
            else:
                fw = [self.f(xs[:i - 1] + (x,) + xs[i:], ys, i)[ys[i - 1]]
                      for x in range(self.nx)]
                num = bw[xs[i - 1]] * fw[xs[i - 1]]
                den = sum(bw[x] * fw[x] for x in range(self.nx))
                p *= num / den
        return p

    def py_causal(self, xs, ys, d):
        """p(y^n || x^{n-d}): d=0 -> prod p(y_i|x^i,y^{i-1}); d=1 -> marginalized."""
        p = 1.0
        n = len(xs)
        for i in range(1, n + 1):
            if d == 0:
                p *= self.f(xs, ys, i)[ys[i - 1]]
            else:
                bw = self.b(xs, ys, i)
                p *= sum(bw[x] * self.f(xs[:i - 1] + (x,) + xs[i:], ys, i)[ys[i - 1]]
                         for x in range(self.nx))
        return p

    def pairs(self, n):
        for xs in product(range(self.nx), repeat=n):
            for ys in product(range(self.ny), repeat=n):
                yield xs, ys

    def px_marg(self, n):
        m = {}
        for xs, ys in self.pairs(n):
            m[xs] = m.get(xs, 0.0) + self.joint(xs, ys)
        return m

    def py_marg(self, n):
        m = {}
        for xs, ys in self.pairs(n):
            m[ys] = m.get(ys, 0.0) + self.joint(xs, ys)
        return m


def info_report(mdl, n):
    """All information measures by raw enumeration; returns a dict (bits)."""
    px = mdl.px_marg(n)
    py = mdl.py_marg(n)
    H_x = ent(px.values())
    H_y = ent(py.values())
    H_joint = H_xy_c0 = H_xy_c1 = H_yx_c0 = H_yx_c1 = 0.0
    L = L1_xy = L2_xy = L1_yx_d = 0.0
    for xs, ys in mdl.pairs(n):
        j = mdl.joint(xs, ys)
        if j > 0.0:
            H_joint -= j * log2(j)
            H_xy_c0 -= j * log2(mdl.px_causal(xs, ys, 0))
            H_xy_c1 -= j * log2(mdl.px_causal(xs, ys, 1))
            H_yx_c0 -= j * log2(mdl.py_causal(xs, ys, 0))
            H_yx_c1 -= j * log2(mdl.py_causal(xs, ys, 1))
        w = px[xs] * py[ys]
        if w > 0.0:
            L += w * log2(w / mdl.joint(xs, ys))
            L1_xy += w * log2(py[ys] / mdl.py_causal(xs, ys, 0))
            L1_yx_d += w * log2(px[xs] / mdl.px_causal(xs, ys, 1))
        w2 = mdl.px_causal(xs, ys, 1) * py[ys]
        if w2 > 0.0:
            L2_xy += w2 * log2(py[ys] / mdl.py_causal(xs, ys, 0))
    return {
        "H_x": H_x, "H_y": H_y, "H_joint": H_joint,
        "H_x_given_y_causal": H_xy_c0, "H_x_given_y_delayed": H_xy_c1,
        "H_y_given_x_causal": H_yx_c0, "H_y_given_x_delayed": H_yx_c1,
        "di_y_to_x": H_x - H_xy_c0, "di_x_to_y": H_y - H_yx_c0,
        "di_y_delayed_to_x": H_x - H_xy_c1,
        "mi": H_x + H_y - H_joint,
        "lautum": L, "lautum1_x_to_y": L1_xy, "lautum2_x_to_y": L2_xy,
        "lautum1_y_delayed_to_x": L1_yx_d,
    }


# ---------------------------------------------------------------- fixtures

def example1(p, q):
    """First-order stay-probability Markov X, memoryless noise Y."""
    nx = ny = 2
    back = {((), ()): [0.5, 0.5]}
    for a in range(2):
        for ybit in range(2):
            back[((a,), (ybit,))] = [p if a == 0 else 1 - p,
                                     1 - p if a == 0 else p]
    fwd = {}
    for a in range(2):
        pmf = [1 - q if a == 0 else q, q if a == 0 else 1 - q]
        fwd[((a,), ())] = pmf
        for ybit in range(2):
            fwd[((a,), (ybit,))] = pmf
    return Model(nx, ny, 1, back, fwd)


def noisy_copy(q):
    """Pairwise i.i.d.: x uniform, y = x xor Bern(q); order-1, lag-ignoring."""
    nx = ny = 2
    back = {((), ()): [0.5, 0.5]}
    for a in range(2):
        for ybit in range(2):
            back[((a,), (ybit,))] = [0.5, 0.5]
    fwd = {}
    for a in range(2):
        pmf = [1 - q if a == 0 else q, q if a == 0 else 1 - q]
        fwd[((a,), ())] = pmf
        for ybit in range(2):
            fwd[((a,), (ybit,))] = pmf
    return Model(nx, ny, 1, back, fwd)


def asym_model():
    """Hand-picked asymmetric order-1 binary model with feedback."""
    back = {((), ()): [0.6, 0.4],
            ((0,), (0,)): [0.7, 0.3], ((0,), (1,)): [0.55, 0.45],
            ((1,), (0,)): [0.2, 0.8], ((1,), (1,)): [0.35, 0.65]}
    fwd = {((0,), ()): [0.8, 0.2], ((1,), ()): [0.3, 0.7],
           ((0,), (0,)): [0.75, 0.25], ((0,), (1,)): [0.6, 0.4],
           ((1,), (0,)): [0.45, 0.55], ((1,), (1,)): [0.1, 0.9]}
    return Model(2, 2, 1, back, fwd)


def dyadic_si_model():
    """|X|=4 dyadic i.i.d. backward, deterministic forward y = [x >= 1]."""
    back = {}
    fwd = {}
    b = [0.5, 0.25, 0.125, 0.125]
    back[((), ())] = b
    for a in range(4):
        for ybit in range(2):
            back[((a,), (ybit,))] = b
        pmf = [1.0, 0.0] if a == 0 else [0.0, 1.0]
        fwd[((a,), ())] = pmf
        for ybit in range(2):
            fwd[((a,), (ybit,))] = pmf
    return Model(4, 2, 1, back, fwd)


def dyadic_indep_model():
    """|X|=4 dyadic i.i.d. independent of uniform binary Y."""
    back = {}
    fwd = {}
    b = [0.5, 0.25, 0.125, 0.125]
    back[((), ())] = b
    for a in range(4):
        for ybit in range(2):
            back[((a,), (ybit,))] = b
        fwd[((a,), ())] = [0.5, 0.5]
        for ybit in range(2):
            fwd[((a,), (ybit,))] = [0.5, 0.5]
    return Model(4, 2, 1, back, fwd)


# ------------------------------------------------------- gambling / coding

def huffman_lengths(pmf):
    """Code lengths; ties by (prob, smallest original index in subtree)."""
    nodes = [(p, i, [i]) for i, p in enumerate(pmf) if p > 0.0]
    lengths = [0] * len(pmf)
    if len(nodes) <= 1:
        return lengths  # degenerate context: zero-length codeword
    while len(nodes) > 1:
        nodes.sort(key=lambda t: (t[0], t[1]))
        a = nodes.pop(0)
        b = nodes.pop(0)
        for s in a[2] + b[2]:
            lengths[s] += 1
        nodes.append((a[0] + b[0], min(a[1], b[1]), a[2] + b[2]))
    return lengths


def expected_length(mdl, n):
    """(E L, entropy bound, sum r_i) for the causal Huffman code, enumerated."""
    EL = HB = RED = 0.0
    for xs, ys in mdl.pairs(n):
        j = mdl.joint(xs, ys)
        if j <= 0.0:
            continue
        for i in range(1, n + 1):
            bw = mdl.b(xs, ys, i)
            fw = [mdl.f(xs[:i - 1] + (x,) + xs[i:], ys, i)[ys[i - 1]]
                  for x in range(mdl.nx)]
            den = sum(bw[x] * fw[x] for x in range(mdl.nx))
            cond = [bw[x] * fw[x] / den for x in range(mdl.nx)]
            lens = huffman_lengths(cond)
            EL += j * lens[xs[i - 1]]
            HB += -j * log2(cond[xs[i - 1]])
    # redundancy term: sum over steps of E[min(1, max_x p(x|ctx) + 0.086)],
    # with degenerate contexts contributing 0 (zero-length codeword).
    for xs, ys in mdl.pairs(n):
        j = mdl.joint(xs, ys)
        if j <= 0.0:
            continue
        for i in range(1, n + 1):
            bw = mdl.b(xs, ys, i)
            fw = [mdl.f(xs[:i - 1] + (x,) + xs[i:], ys, i)[ys[i - 1]]
                  for x in range(mdl.nx)]
            den = sum(bw[x] * fw[x] for x in range(mdl.nx))
            cond = [bw[x] * fw[x] / den for x in range(mdl.nx)]
            mx = max(cond)
            r = 0.0 if mx >= 1.0 else min(1.0, mx + 0.086)
            RED += j * r
    return EL, HB, RED


def mismatch_redundancy(mdl, n, which):
    px = mdl.px_marg(n)
    py = mdl.py_marg(n)
    out = 0.0
    for xs, ys in mdl.pairs(n):
        j = mdl.joint(xs, ys)
        if j <= 0.0:
            continue
        if which == "forward":
            q = mdl.px_causal(xs, ys, 1) * py[ys]
        elif which == "backward":
            q = px[xs] * mdl.py_causal(xs, ys, 0)
        else:
            q = px[xs] * py[ys]
        out += j * log2(j / q)
    return out


def independent_penalty(mdl, n, which):
    px = mdl.px_marg(n)
    py = mdl.py_marg(n)
    out = 0.0
    for xs, ys in mdl.pairs(n):
        w = px[xs] * py[ys]
        if w <= 0.0:
            continue
        if which == "forward":
            out += w * log2(py[ys] / mdl.py_causal(xs, ys, 0))
        elif which == "backward":
            out += w * log2(px[xs] / mdl.px_causal(xs, ys, 1))
        else:
            out += w * log2(w / mdl.joint(xs, ys))
    return out


def sever_penalty(mdl, n):
    """W*(X^n) - W(b = p(x^n||y^n)) under the severed law p(x)p(y||x^-)."""
    px = mdl.px_marg(n)
    out = 0.0
    for xs, ys in mdl.pairs(n):
        w = px[xs] * mdl.py_causal(xs, ys, 1)
        if w > 0.0:
            out += w * log2(px[xs] / mdl.px_causal(xs, ys, 0))
    return out


def lookahead(mdl_p, mdl_q, k):
    """H(Y_{k+1}|Y^k, X_0) - H(Y_1|X_1) for example1(p, q), enumerated.

    X_0 ~ uniform (stationary), X_{t+1} ~ stay-p chain, Y_t = X_t xor Bern(q).
    """
    p, q = mdl_p, mdl_q
    P = [[p, 1 - p], [1 - p, p]]
    noise = [[1 - q, q], [q, 1 - q]]
    total = 0.0
    for x0 in range(2):
        for ys in product(range(2), repeat=k):
            # forward pass: belief over X_t given x0, y_1..y_t
            bel = [0.0, 0.0]
            bel[x0] = 1.0
            pr = 0.5
            for t in range(k):
                nxt = [sum(bel[a] * P[a][b] for a in range(2)) for b in range(2)]
                nxt = [nxt[b] * noise[b][ys[t]] for b in range(2)]
                s = sum(nxt)
                pr *= s
                bel = [v / s for v in nxt]
            if pr <= 0.0:
                continue
            nxt = [sum(bel[a] * P[a][b] for a in range(2)) for b in range(2)]
            pmf_y = [sum(nxt[b] * noise[b][y] for b in range(2)) for y in range(2)]
            total += pr * ent(pmf_y)
    return total - h_bin(q)


# ------------------------------------------------------------ hyp testing

def np_curves(mdl, n, eps):
    """(beta_np, alpha_np) by whole-LR-class threshold tests, enumerated."""
    py = mdl.py_marg(n)
    atoms = []
    for xs, ys in mdl.pairs(n):
        h0 = mdl.joint(xs, ys)
        h1 = mdl.px_causal(xs, ys, 1) * py[ys]
        if h0 > 0.0 or h1 > 0.0:
            atoms.append((h0, h1))
    # beta: accept classes in ascending h1/h0 until H0 mass > 1 - eps
    def group_run(key_ratio, mass_a, mass_b, need):
        """Sort atoms by key_ratio asc, group equal ratios (rel 1e-12),
        accumulate mass_a until > need; return accumulated mass_b."""
        srt = sorted(atoms, key=key_ratio)
        acc_a = acc_b = 0.0
        i = 0
        while i < len(srt):
            jx = i
            r0 = key_ratio(srt[i])
            ga = gb = 0.0
            while jx < len(srt):
                r1 = key_ratio(srt[jx])
                if not ratios_equal(r0, r1):
                    break
                ga += mass_a(srt[jx])
                gb += mass_b(srt[jx])
                jx += 1
            acc_a += ga
            acc_b += gb
            if acc_a > need:
                return acc_b
            i = jx
        return acc_b

    def ratios_equal(a, b):
        if math.isinf(a) or math.isinf(b):
            return math.isinf(a) and math.isinf(b)
        return abs(a - b) <= 1e-12 * max(abs(a), abs(b), 1e-300)

    beta = group_run(lambda t: (t[1] / t[0]) if t[0] > 0 else math.inf,
                     lambda t: t[0], lambda t: t[1], 1.0 - eps)
    alpha = group_run(lambda t: (t[0] / t[1]) if t[1] > 0 else math.inf,
                      lambda t: t[1], lambda t: t[0], 1.0 - eps)
    return beta, alpha


def ls_slope(ns, vals):
    xb = sum(ns) / len(ns)
    yb = sum(vals) / len(vals)
    num = sum((x - xb) * (y - yb) for x, y in zip(ns, vals))
    den = sum((x - xb) ** 2 for x in ns)
    return num / den


def exponent_fit(mdl, n_list, eps):
    betas = {}
    alphas = {}
    for n in n_list:
        b, a = np_curves(mdl, n, eps)
        betas[n], alphas[n] = b, a
    nmax = max(n_list)
    window = [n for n in n_list if n >= nmax / 2.0]
    eb = ls_slope(window, [-log2(betas[n]) for n in window])
    ea = ls_slope(window, [-log2(alphas[n]) for n in window])
    return betas, alphas, eb, ea


# ------------------------------------------------------------------ main

def main():
    print("=== scalars ===")
    print(f"h(0.9)            = {h_bin(0.9):.12f}")
    print(f"h(0.74)           = {h_bin(0.74):.12f}")
    print(f"convolve(0.8,0.1) = {convolve(0.8, 0.1):.12f}")
    for (p, q) in [(0.8, 0.1), (0.6, 0.2), (0.9, 0.3)]:
        dw = h_bin(convolve(p, q)) - h_bin(q)
        print(f"dW({p},{q}) = h({convolve(p,q):.4f})-h({q}) = {dw:.12f}")

    e1 = example1(0.8, 0.1)
    print("\n=== example1(0.8, 0.1) ===")
    print(f"joint(x=00,y=00)      = {e1.joint((0, 0), (0, 0)):.12f}")
    print(f"p(x1=0||y1=0) (d=0)   = {e1.px_causal((0,), (0,), 0):.12f}")
    print(f"p(y^1=(0))            = {e1.py_marg(1)[(0,)]:.12f}")
    for n in range(1, 7):
        r = info_report(e1, n)
        closed = 1 - h_bin(0.1) + (n - 1) * (h_bin(0.74) - h_bin(0.1))
        print(f"n={n}: I(Y->X)={r['di_y_to_x']:.12f} closed={closed:.12f} "
              f"resid={abs(r['di_y_to_x']-closed):.2e} "
              f"cons={abs(r['mi']-r['di_x_to_y']-r['di_y_delayed_to_x']):.2e}")
    r4 = info_report(e1, 4)
    print("n=4 report:")
    for k in sorted(r4):
        print(f"  {k:24s} = {r4[k]:.12f}")
    print(f"lookahead d0 = {lookahead(0.8, 0.1, 0):.12f}")
    print(f"lookahead d1 = {lookahead(0.8, 0.1, 1):.12f}")
    print(f"lookahead d2 = {lookahead(0.8, 0.1, 2):.12f}")
    print(f"lookahead d8 = {lookahead(0.8, 0.1, 8):.12f}")
    print(f"sever_penalty n=3      = {sever_penalty(e1, 3):.12f}")
    r3 = info_report(e1, 3)
    print(f"L2(Y->X) n=3 (transposed-direction weight) — via sever identity above")
    print(f"indep penalty fwd n=3  = {independent_penalty(e1, 3, 'forward'):.12f}")
    print(f"indep penalty bwd n=3  = {independent_penalty(e1, 3, 'backward'):.12f}")
    print(f"indep penalty both n=3 = {independent_penalty(e1, 3, 'both'):.12f}")
    print(f"lautum n=3             = {r3['lautum']:.12f}")

    nc = noisy_copy(0.1)
    print("\n=== noisy_copy(0.1) ===")
    r1 = info_report(nc, 1)
    print(f"n=1: L1(X->Y)={r1['lautum1_x_to_y']:.12f} L2={r1['lautum2_x_to_y']:.12f}")
    r3 = info_report(nc, 3)
    for k in sorted(r3):
        print(f"  {k:24s} = {r3[k]:.12f}")
    EL, HB, RED = expected_length(nc, 1)
    print(f"compress n=1: EL={EL:.12f} H={HB:.12f} red={RED:.12f}")

    asym = asym_model()
    print("\n=== asym model ===")
    r4 = info_report(asym, 4)
    for k in sorted(r4):
        print(f"  {k:24s} = {r4[k]:.12f}")
    EL, HB, RED = expected_length(asym, 3)
    print(f"compress n=3: EL={EL:.12f} H={HB:.12f} red={RED:.12f}")
    for w in ("forward", "backward", "both"):
        print(f"mismatch_red({w}) n=3 = {mismatch_redundancy(asym, 3, w):.12f}")
    r3 = info_report(asym, 3)
    print(f"  (targets: I(X->Y)={r3['di_x_to_y']:.12f} "
          f"I(Y-1->X)={r3['di_y_delayed_to_x']:.12f} mi={r3['mi']:.12f})")
    print(f"indep penalties n=3: fwd={independent_penalty(asym, 3, 'forward'):.12f} "
          f"bwd={independent_penalty(asym, 3, 'backward'):.12f} "
          f"both={independent_penalty(asym, 3, 'both'):.12f}")
    print(f"  lautum n=3 = {r3['lautum']:.12f}, "
          f"L1(X->Y)+L1(Y-1->X) = "
          f"{r3['lautum1_x_to_y'] + r3['lautum1_y_delayed_to_x']:.12f}")

    dy = dyadic_si_model()
    print("\n=== dyadic with side info ===")
    EL, HB, RED = expected_length(dy, 2)
    print(f"n=2: EL={EL:.12f} H={HB:.12f} diff={abs(EL-HB):.2e}")
    dyi = dyadic_indep_model()
    EL, HB, RED = expected_length(dyi, 3)
    print(f"indep n=3: EL={EL:.12f} H={HB:.12f} diff={abs(EL-HB):.2e}")

    print("\n=== NP / exponents, eps=0.25 ===")
    b5, a5 = np_curves(noisy_copy(0.0), 5, 0.25)
    print(f"copy q=0 n=5: beta_np={b5:.12f} (2^-5={2**-5}) alpha_np={a5:.12f}")
    for q, label in [(0.1, "q=0.1"), (0.3, "q=0.3")]:
        m = noisy_copy(q)
        n_list = list(range(1, 9))
        betas, alphas, eb, ea = exponent_fit(m, n_list, 0.25)
        print(f"{label}: n<=8 betas: " +
              " ".join(f"{n}:{betas[n]:.6f}" for n in n_list))
        print(f"{label}: n<=8 alphas: " +
              " ".join(f"{n}:{alphas[n]:.6f}" for n in n_list))
    # closed-form extension to n=10 (binomial group structure) for the fit
    from math import comb
    for q, label in [(0.1, "q=0.1"), (0.3, "q=0.3")]:
        betas = {}
        alphas = {}
        for n in range(1, 11):
            # beta: accept a-levels ascending until H0 > 0.75
            acc0 = accb = 0.0
            for a in range(n + 1):
                acc0 += comb(n, a) * (1 - q) ** (n - a) * q ** a
                accb += comb(n, a) * 2.0 ** (-n)
                if acc0 > 0.75:
                    break
            betas[n] = accb
            # alpha: reject a-levels descending until H1 > 0.75
            acc1 = acca = 0.0
            for a in range(n, -1, -1):
                acc1 += comb(n, a) * 2.0 ** (-n)
                acca += comb(n, a) * (1 - q) ** (n - a) * q ** a
                if acc1 > 0.75:
                    break
            alphas[n] = acca
        n_list = list(range(1, 11))
        window = [n for n in n_list if n >= 5]
        eb = ls_slope(window, [-log2(betas[n]) for n in window])
        ea = ls_slope(window, [-log2(alphas[n]) for n in window])
        m1 = info_report(noisy_copy(q), 1)
        print(f"{label} closed-form n<=10: beta_fit={eb:.6f} "
              f"(target I rate={m1['di_x_to_y']:.6f}) "
              f"alpha_fit={ea:.6f} (target L2 rate={m1['lautum2_x_to_y']:.6f})")


if __name__ == "__main__":
    main()
