"""Hot numeric kernels: LLR recursions, the constrained SCL engine, the joint
channel+source SCL engine and genie-aided Monte Carlo counting loops.

Everything here is loop-based numpy so it runs either compiled (numba) or
interpreted, selected by PACSIM_BACKEND.  Kernels are deterministic; all
randomness is generated by callers and passed in as arrays.

Conventions:
  * bits are int8 arrays, LLRs float64, LLR sign convention ln(P(0)/P(1))
  * per-path polar workspace is a flat LLR array of length 2N (levels packed
    contiguously, level ``lam`` at offset ``2N - (2N >> lam)``), plus a flat
    partial-sum array of length 4N (two parity planes per slot)
  * constraint tags: 0 = free, 1 = forced pre-conv bit, 2 = forced post-conv
    (tree-constrained) bit
"""

import math

import numpy as np

from .backend import maybe_njit

TAG_FREE = 0
TAG_FORCED_V = 1
TAG_FORCED_U = 2

# Stand-in for ln(1+exp(+inf)) so that hopeless paths stay rankable.
PM_CAP = 1.0e9


@maybe_njit
def boxplus(a, b):
    """Exact check-node LLR combination 2*atanh(tanh(a/2)*tanh(b/2))."""
    if math.isinf(a):
        if math.isinf(b):
            return math.inf if (a > 0) == (b > 0) else -math.inf
        return b if a > 0 else -b
    if math.isinf(b):
        return a if b > 0 else -a
    sgn = 1.0
    if a < 0:
        sgn = -sgn
    if b < 0:
        sgn = -sgn
    m = min(abs(a), abs(b))
    return sgn * m + math.log1p(math.exp(-abs(a + b))) - math.log1p(math.exp(-abs(a - b)))


@maybe_njit
def bitnode(a, b, u):
    """Variable-node combination: b + a for u = 0, b - a for u = 1."""
    if math.isinf(a) and math.isinf(b):
        s = b + a if u == 0 else b - a
        if math.isnan(s):
            return 0.0  # conflicting certainties cancel to an erasure
        return s
    return b + a if u == 0 else b - a


@maybe_njit
def pm_penalty(llr, bit):
    """Path metric increment ln(1 + exp(-(1-2*bit)*llr)), capped at PM_CAP."""
    x = llr if bit == 1 else -llr
    if math.isinf(x):
        return PM_CAP if x > 0 else 0.0
    if x > 37.0:
        return x  # log1p(exp(-x)) below double precision
    return math.log1p(math.exp(x))


@maybe_njit
def _update_leaf(P, C, pos, n, N):
    """Refresh the LLR workspace so P[2N-2] is the decision LLR for ``pos``."""
    if pos == 0:
        lam_start = 1
    else:
        t = 0
        x = pos
        while x & 1 == 0:
            x >>= 1
            t += 1
        lam_g = n - t
        o = 2 * N - ((2 * N) >> lam_g)
        po = 2 * N - ((2 * N) >> (lam_g - 1))
        size = N >> lam_g
        for b in range(size):
            P[o + b] = bitnode(P[po + 2 * b], P[po + 2 * b + 1], C[2 * (o + b)])
        lam_start = lam_g + 1
    for lam in range(lam_start, n + 1):
        o = 2 * N - ((2 * N) >> lam)
        po = 2 * N - ((2 * N) >> (lam - 1))
        size = N >> lam
        for b in range(size):
            P[o + b] = boxplus(P[po + 2 * b], P[po + 2 * b + 1])


@maybe_njit
def _commit_bit(C, pos, n, N, bit):
    """Record the decision for ``pos`` and propagate finished partial sums."""
    C[2 * (2 * N - 2) + (pos & 1)] = bit
    lam = n
    phi = pos
    while (phi & 1) == 1 and lam > 0:
        psi = phi >> 1
        o = 2 * N - ((2 * N) >> lam)
        oo = 2 * N - ((2 * N) >> (lam - 1))
        size = N >> lam
        par = psi & 1
        for b in range(size):
            left = C[2 * (o + b)]
            right = C[2 * (o + b) + 1]
            C[2 * (oo + 2 * b) + par] = left ^ right
            C[2 * (oo + 2 * b + 1) + par] = right
        phi = psi
        lam -= 1


@maybe_njit
def conv_invert_bits(u, taps, out):
    """Back-substitution v with conv_forward(v) = u, for c_0 = 1 taps."""
    N = u.shape[0]
    nu = taps.shape[0] - 1
    for j in range(N):
        acc = u[j]
        kmax = nu if nu < j else j
        for k in range(1, kmax + 1):
            if taps[k] == 1:
                acc ^= out[j - k]
        out[j] = acc


@maybe_njit
def _conv_fb(v, pos, taps):
    """Convolution feedback: XOR of taps[1:] against the last decided bits."""
    fb = 0
    kmax = taps.shape[0] - 1
    if kmax > pos:
        kmax = pos
    for k in range(1, kmax + 1):
        if taps[k] == 1:
            fb ^= v[pos - k]
    return fb


@maybe_njit
def scl_run(llr, tags, tbits, taps, L, tree_conv, v_out, pm_out):
    """Constrained SCL decode; returns the number of final paths.

    ``tree_conv`` selects the orientation of the convolutional pre-transform:
      True  -- the polar tree decodes conv_forward(v) (PAC channel codes);
               metric penalties fall on the post-conv bits.
      False -- the polar tree decodes v itself and the forced-u constraints
               apply to conv_forward(v) (PAC source codes); penalties fall on
               the tree bits so exp(-pm) stays the exact path probability.

    Candidate sequences (rows of ``v_out``) are always the pre-conv vector.
    Survivor selection is by path metric with ties broken toward the
    lexicographically smaller candidate prefix; outputs are sorted the same
    way.  ``v_out``/``pm_out`` must have at least L rows.

    Paths live in a slot pool; surviving children update their parent's slot
    in place and a fresh slot is claimed only when both children of a path
    survive pruning.  ``slots`` keeps the active paths in lexicographic
    order of their candidate prefixes, which makes the stable metric sort
    deliver the documented tie-breaking.
    """
    N = llr.shape[0]
    n = 0
    while (1 << n) < N:
        n += 1
    cap = 2 * L
    P = np.empty((cap, 2 * N), np.float64)
    C = np.zeros((cap, 4 * N), np.int8)
    V = np.zeros((cap, N), np.int8)
    pm = np.zeros(cap, np.float64)
    slots = np.zeros(cap, np.int64)
    nslots = np.zeros(cap, np.int64)
    free = np.zeros(cap, np.int64)
    cnt = np.zeros(cap, np.int64)
    cpm = np.empty(cap, np.float64)
    leaf = 2 * N - 2
    for j in range(N):
        P[0, j] = llr[j]
    ftop = 0
    for sl in range(cap - 1, 0, -1):
        free[ftop] = sl
        ftop += 1
    m = 1
    for pos in range(N):
        for a in range(m):
            _update_leaf(P[slots[a]], C[slots[a]], pos, n, N)
        tag = tags[pos]
        if tag == TAG_FREE:
            for a in range(m):
                l = slots[a]
                fb = _conv_fb(V[l], pos, taps)
                for bit in range(2):
                    tb = (bit ^ fb) if tree_conv else bit
                    cpm[2 * a + bit] = pm[l] + pm_penalty(P[l, leaf], tb)
            nch = 2 * m
            keep = L if L < nch else nch
            order = np.argsort(cpm[:nch], kind="mergesort")
            sel = np.sort(order[:keep])
            for a in range(m):
                cnt[a] = 0
            for i in range(keep):
                cnt[sel[i] >> 1] += 1
            for a in range(m):
                if cnt[a] == 0:
                    free[ftop] = slots[a]
                    ftop += 1
            for i in range(keep):
                c = sel[i]
                a = c >> 1
                bit = c & 1
                l = slots[a]
                if cnt[a] == 2 and bit == 0:
                    # both children survive: the first works on a fresh copy,
                    # the second then takes the parent slot in place
                    ftop -= 1
                    nl = free[ftop]
                    P[nl, :] = P[l, :]
                    C[nl, :] = C[l, :]
                    V[nl, :] = V[l, :]
                    l = nl
                V[l, pos] = bit
                pm[l] = cpm[c]
                fb = _conv_fb(V[l], pos, taps)
                tb = (bit ^ fb) if tree_conv else bit
                _commit_bit(C[l], pos, n, N, tb)
                nslots[i] = l
            for i in range(keep):
                slots[i] = nslots[i]
            m = keep
        else:
            for a in range(m):
                l = slots[a]
                fb = _conv_fb(V[l], pos, taps)
                b = tbits[pos]
                cb = b if tag == TAG_FORCED_V else b ^ fb
                tb = (cb ^ fb) if tree_conv else cb
                pm[l] += pm_penalty(P[l, leaf], tb)
                V[l, pos] = cb
                _commit_bit(C[l], pos, n, N, tb)
    for a in range(m):
        cpm[a] = pm[slots[a]]
    order = np.argsort(cpm[:m], kind="mergesort")
    for i in range(m):
        l = slots[order[i]]
        pm_out[i] = pm[l]
        v_out[i, :] = V[l, :]
    return m


@maybe_njit
def _neg_logsumexp(pm_row, pen_row, count):
    """-ln sum_i exp(-(pm_i + pen_i)) with a min shift for stability."""
    mn = pm_row[0] + pen_row[0]
    for i in range(1, count):
        t = pm_row[i] + pen_row[i]
        if t < mn:
            mn = t
    s = 0.0
    for i in range(count):
        s += math.exp(mn - (pm_row[i] + pen_row[i]))
    return mn - math.log(s)


@maybe_njit
def _advance_source_list(SP, SC, SV, spm, snum, spos, l, j, gs, L_sc,
                         XP, XC, XV, scnt, ns, Ns):
    """Advance channel path ``l``'s source list through free source indices
    [spos[l], j), expanding and pruning to L_sc one index at a time.

    The list is stored compactly in lexicographic order.  Survivors that are
    their parent's only child and already sit at their target position are
    committed in place; the rest route through scratch rows (read everything
    before overwriting anything).
    """
    xpm = np.empty(2 * L_sc, np.float64)
    for sj in range(spos[l], j):
        sn = snum[l]
        for sl in range(sn):
            _update_leaf(SP[l, sl], SC[l, sl], sj, ns, Ns)
            lf = SP[l, sl, 2 * Ns - 2]
            xpm[2 * sl] = spm[l, sl] + pm_penalty(lf, 0)
            xpm[2 * sl + 1] = spm[l, sl] + pm_penalty(lf, 1)
        nch = 2 * sn
        keep = L_sc if L_sc < nch else nch
        order = np.argsort(xpm[:nch], kind="mergesort")
        sel = np.sort(order[:keep])
        for sl in range(sn):
            scnt[sl] = 0
        for i in range(keep):
            scnt[sel[i] >> 1] += 1
        for i in range(keep):
            sl = sel[i] >> 1
            if sl != i or scnt[sl] != 1:
                XP[i, :] = SP[l, sl, :]
                XC[i, :] = SC[l, sl, :]
                XV[i, :] = SV[l, sl, :]
        for i in range(keep):
            sl = sel[i] >> 1
            if sl != i or scnt[sl] != 1:
                SP[l, i, :] = XP[i, :]
                SC[l, i, :] = XC[i, :]
                SV[l, i, :] = XV[i, :]
        for i in range(keep):
            bit = sel[i] & 1
            SV[l, i, sj] = bit
            spm[l, i] = xpm[sel[i]]
            _commit_bit(SC[l, i], sj, ns, Ns, bit)
        snum[l] = keep
    spos[l] = j


@maybe_njit
def joint_run(llr, ctbits, gc, L_c, kind, srcj, hpos, prior, Ns, gs, L_sc,
              v_out, pmt_out, pmc_out, psc_out, trace_on, tr_bits, tr_pm):
    """Joint channel+source SCL decode over the channel pre-conv vector.

    ``kind`` per channel position: -1 frozen, 0 info bit carrying a source
    post-conv bit (source index in ``srcj``), 1 CRC info bit.  At kind-0
    positions every channel path advances its embedded source list to the
    constrained source index, the two hypotheses are scored with the combined
    metric pm_c + pm_sc (pm_sc = log-sum-exp over the source list), and the
    surviving channel paths carry their source lists forward.  CRC positions
    branch on the channel metric with the carried pm_sc.

    Channel paths use the same slot-pool discipline as scl_run: a surviving
    child updates its parent in place unless both children survive, in which
    case the first child claims a fresh slot and copies the parent state
    (including its source list).

    Outputs are sorted by total metric.  When ``trace_on`` is set, every
    scored (hypothesis prefix, pm_sc) pair is appended to ``tr_bits``/``tr_pm``
    before pruning; the second return value is the number of rows written.
    """
    Nc = llr.shape[0]
    nc = 0
    while (1 << nc) < Nc:
        nc += 1
    ns = 0
    while (1 << ns) < Ns:
        ns += 1
    capc = 2 * L_c
    # channel-side state, indexed by slot
    P = np.empty((capc, 2 * Nc), np.float64)
    C = np.zeros((capc, 4 * Nc), np.int8)
    V = np.zeros((capc, Nc), np.int8)
    pmc = np.zeros(capc, np.float64)
    # per-slot source lists
    SP = np.empty((capc, L_sc, 2 * Ns), np.float64)
    SC = np.zeros((capc, L_sc, 4 * Ns), np.int8)
    SV = np.zeros((capc, L_sc, Ns), np.int8)
    spm = np.zeros((capc, L_sc), np.float64)
    snum = np.zeros(capc, np.int64)
    spos = np.zeros(capc, np.int64)
    psc = np.zeros(capc, np.float64)
    # slot bookkeeping and scratch
    slots = np.zeros(capc, np.int64)
    nslots = np.zeros(capc, np.int64)
    free = np.zeros(capc, np.int64)
    cnt = np.zeros(capc, np.int64)
    XP = np.empty((2 * L_sc, 2 * Ns), np.float64)
    XC = np.empty((2 * L_sc, 4 * Ns), np.int8)
    XV = np.empty((2 * L_sc, Ns), np.int8)
    scnt = np.zeros(2 * L_sc, np.int64)
    pen0 = np.empty(L_sc, np.float64)
    pen1 = np.empty(L_sc, np.float64)
    cpm_t = np.empty(capc, np.float64)
    cpm_c = np.empty(capc, np.float64)
    cpm_s = np.empty(capc, np.float64)
    leafc = 2 * Nc - 2
    leafs = 2 * Ns - 2
    for j in range(Nc):
        P[0, j] = llr[j]
    for j in range(Ns):
        SP[0, 0, j] = prior
    snum[0] = 1
    ftop = 0
    for sl in range(capc - 1, 0, -1):
        free[ftop] = sl
        ftop += 1
    m = 1
    mh = 0
    tr_n = 0
    for pos in range(Nc):
        for a in range(m):
            _update_leaf(P[slots[a]], C[slots[a]], pos, nc, Nc)
        k = kind[pos]
        if k == -1:
            for a in range(m):
                l = slots[a]
                fb = _conv_fb(V[l], pos, gc)
                b = ctbits[pos]
                pmc[l] += pm_penalty(P[l, leafc], b ^ fb)
                V[l, pos] = b
                _commit_bit(C[l], pos, nc, Nc, b ^ fb)
            continue
        j = srcj[pos]
        if k == 0:
            for a in range(m):
                l = slots[a]
                _advance_source_list(SP, SC, SV, spm, snum, spos, l, j,
                                     gs, L_sc, XP, XC, XV, scnt, ns, Ns)
                sn = snum[l]
                for sl in range(sn):
                    _update_leaf(SP[l, sl], SC[l, sl], j, ns, Ns)
                    lf = SP[l, sl, leafs]
                    fbs = _conv_fb(SV[l, sl], j, gs)
                    pen0[sl] = pm_penalty(lf, fbs)
                    pen1[sl] = pm_penalty(lf, 1 ^ fbs)
                cpm_s[2 * a] = _neg_logsumexp(spm[l], pen0, sn)
                cpm_s[2 * a + 1] = _neg_logsumexp(spm[l], pen1, sn)
                fbc = _conv_fb(V[l], pos, gc)
                for d in range(2):
                    cpm_c[2 * a + d] = pmc[l] + pm_penalty(P[l, leafc], d ^ fbc)
                    cpm_t[2 * a + d] = cpm_c[2 * a + d] + cpm_s[2 * a + d]
                if trace_on:
                    for d in range(2):
                        for q in range(mh):
                            tr_bits[tr_n, q] = V[l, hpos[q]]
                        tr_bits[tr_n, mh] = d
                        tr_pm[tr_n] = cpm_s[2 * a + d]
                        tr_n += 1
        else:
            for a in range(m):
                l = slots[a]
                fbc = _conv_fb(V[l], pos, gc)
                for d in range(2):
                    cpm_c[2 * a + d] = pmc[l] + pm_penalty(P[l, leafc], d ^ fbc)
                    cpm_s[2 * a + d] = psc[l]
                    cpm_t[2 * a + d] = cpm_c[2 * a + d] + psc[l]
        nch = 2 * m
        keep = L_c if L_c < nch else nch
        order = np.argsort(cpm_t[:nch], kind="mergesort")
        sel = np.sort(order[:keep])
        for a in range(m):
            cnt[a] = 0
        for i in range(keep):
            cnt[sel[i] >> 1] += 1
        for a in range(m):
            if cnt[a] == 0:
                free[ftop] = slots[a]
                ftop += 1
        for i in range(keep):
            c = sel[i]
            a = c >> 1
            d = c & 1
            l = slots[a]
            sn = snum[l]
            if cnt[a] == 2 and d == 0:
                ftop -= 1
                nl = free[ftop]
                P[nl, :] = P[l, :]
                C[nl, :] = C[l, :]
                V[nl, :] = V[l, :]
                for sl in range(sn):
                    SP[nl, sl, :] = SP[l, sl, :]
                    SC[nl, sl, :] = SC[l, sl, :]
                    SV[nl, sl, :] = SV[l, sl, :]
                    spm[nl, sl] = spm[l, sl]
                snum[nl] = sn
                spos[nl] = spos[l]
                l = nl
            V[l, pos] = d
            pmc[l] = cpm_c[c]
            psc[l] = cpm_s[c]
            fbc = _conv_fb(V[l], pos, gc)
            _commit_bit(C[l], pos, nc, Nc, d ^ fbc)
            if k == 0:
                for sl in range(sn):
                    fbs = _conv_fb(SV[l, sl], j, gs)
                    cb = d ^ fbs
                    spm[l, sl] += pm_penalty(SP[l, sl, leafs], cb)
                    SV[l, sl, j] = cb
                    _commit_bit(SC[l, sl], j, ns, Ns, cb)
                spos[l] = j + 1
            nslots[i] = l
        for i in range(keep):
            slots[i] = nslots[i]
        m = keep
        if k == 0:
            mh += 1
    for a in range(m):
        cpm_t[a] = pmc[slots[a]] + psc[slots[a]]
    order = np.argsort(cpm_t[:m], kind="mergesort")
    for i in range(m):
        l = slots[order[i]]
        v_out[i, :] = V[l, :]
        pmt_out[i] = cpm_t[order[i]]
        pmc_out[i] = pmc[l]
        psc_out[i] = psc[l]
    return m, tr_n


@maybe_njit
def _entropy_from_llr(llr):
    """Binary entropy (nats) of the distribution an LLR describes."""
    a = abs(llr)
    if a > 37.0:
        return 0.0
    return a / (1.0 + math.exp(a)) + math.log1p(math.exp(-a))


@maybe_njit
def genie_stats(llr_rows, u_rows, err_counts, ent_sums):
    """Genie-aided SC statistics: per-index hard-decision error counts and
    summed conditional entropies (nats) of the exact leaf LLRs.

    ``llr_rows`` is one channel/prior observation per trial, ``u_rows`` the
    matching true polar-tree inputs; previous decisions are always corrected
    to the truth before the next index is scored.  Since the leaf LLRs are
    the exact conditionals, ent_sums/trials estimates H(U_j | U^{1:j-1}).
    """
    T = llr_rows.shape[0]
    N = llr_rows.shape[1]
    n = 0
    while (1 << n) < N:
        n += 1
    P = np.empty(2 * N, np.float64)
    C = np.zeros(4 * N, np.int8)
    for t in range(T):
        for j in range(N):
            P[j] = llr_rows[t, j]
        for j in range(4 * N):
            C[j] = 0
        for pos in range(N):
            _update_leaf(P, C, pos, n, N)
            leaf = P[2 * N - 2]
            hard = 1 if leaf < 0.0 else 0
            if hard != u_rows[t, pos]:
                err_counts[pos] += 1
            ent_sums[pos] += _entropy_from_llr(leaf)
            _commit_bit(C, pos, n, N, u_rows[t, pos])
