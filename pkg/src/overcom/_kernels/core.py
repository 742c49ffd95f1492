"""Hot-loop kernel sources.

Every function here is plain Python over NumPy arrays so the same source
runs either interpreted (fallback) or compiled by numba. Keep the bodies
numba-friendly: scalar loops, no Python objects, preallocated outputs.
"""

import numpy as np


def push_step(indptr, indices, invd, x, out):
    """out = x @ P for the row-stochastic walk matrix P = D^-1 A (CSR)."""
    n = x.shape[0]
    for v in range(n):
        out[v] = 0.0
    for u in range(n):
        xu = x[u] * invd[u]
        if xu != 0.0:
            for e in range(indptr[u], indptr[u + 1]):
                out[indices[e]] += xu
    return out


def walk_matrix(indptr, indices, invd, t, out):
    """Fill out[u] with the t-step walk distribution started at u, for the
    first out.shape[0] vertices. out needs one column per vertex."""
    n = invd.shape[0]
    if out.shape[1] != n or out.shape[0] > n:
        raise ValueError("out must be (rows, n) with rows <= n")
    x = np.empty(n, dtype=np.float64)
    y = np.empty(n, dtype=np.float64)
    for u in range(out.shape[0]):
        for v in range(n):
            x[v] = 0.0
        x[u] = 1.0
        for _ in range(t):
            push_step(indptr, indices, invd, x, y)
            x, y = y, x
        for v in range(n):
            out[u, v] = x[v]
    return out


def louvain_sweep(optr, oidx, owt, iptr, iidx, iwt, sout, sin,
                  comm_out, comm_in, labels, order, total_w):
    """One local-move sweep over `order`; mutates labels and community sums.

    Gains follow the directed modularity kernel (arc weight vs
    d_in*d_out/W expectation); on symmetric arc data this is exactly the
    undirected gain. Returns the modularity improvement of the sweep.
    """
    nc = comm_out.shape[0]
    kw = np.zeros(nc, dtype=np.float64)
    touched = np.empty(nc, dtype=np.int64)
    gain = 0.0
    for i in range(order.shape[0]):
        u = order[i]
        a = labels[u]
        ntouched = 0
        # arc weight between u and each neighboring community (self-arcs stay
        # with u wherever it goes, so they cancel and are skipped)
        for e in range(optr[u], optr[u + 1]):
            v = oidx[e]
            if v != u:
                c = labels[v]
                if kw[c] == 0.0:
                    touched[ntouched] = c
                    ntouched += 1
                kw[c] += owt[e]
        for e in range(iptr[u], iptr[u + 1]):
            v = iidx[e]
            if v != u:
                c = labels[v]
                if kw[c] == 0.0:
                    touched[ntouched] = c
                    ntouched += 1
                kw[c] += iwt[e]
        comm_out[a] -= sout[u]
        comm_in[a] -= sin[u]
        stay = kw[a] - (sout[u] * comm_in[a] + sin[u] * comm_out[a]) / total_w
        best_c = -1
        best_g = -np.inf
        for j in range(ntouched):
            c = touched[j]
            if c == a:
                continue
            g = kw[c] - (sout[u] * comm_in[c] + sin[u] * comm_out[c]) / total_w
            if g > best_g or (g == best_g and (best_c == -1 or c < best_c)):
                best_c = c
                best_g = g
        if best_c >= 0 and best_g > stay:
            labels[u] = best_c
            comm_out[best_c] += sout[u]
            comm_in[best_c] += sin[u]
            gain += (best_g - stay) / total_w
        else:
            comm_out[a] += sout[u]
            comm_in[a] += sin[u]
        for j in range(ntouched):
            kw[touched[j]] = 0.0
    return gain


def overlap_pass_undirected(indptr, indices, deg, two_m, theta, member,
                            comm_deg, cand_u, cand_j, cand_lhs, cand_rhs,
                            cand_acc):
    """One expansion pass: admit u to C_j when the in-community edge
    fraction beats theta times the community's expected share.

    Admissions apply immediately, so later vertices in the same pass see
    grown communities. Returns (candidates evaluated, vertices admitted).
    """
    n = member.shape[0]
    k = member.shape[1]
    cnt = np.zeros(k, dtype=np.int64)
    n_eval = 0
    n_add = 0
    for u in range(n):
        for j in range(k):
            cnt[j] = 0
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            for j in range(k):
                cnt[j] += member[w, j]
        for j in range(k):
            if cnt[j] > 0 and member[u, j] == 0:
                lhs = cnt[j] / deg[u]
                rhs = theta * comm_deg[j] / two_m
                acc = lhs > rhs
                cand_u[n_eval] = u
                cand_j[n_eval] = j
                cand_lhs[n_eval] = lhs
                cand_rhs[n_eval] = rhs
                cand_acc[n_eval] = 1 if acc else 0
                n_eval += 1
                if acc:
                    member[u, j] = 1
                    comm_deg[j] += deg[u]
                    n_add += 1
    return n_eval, n_add


def overlap_pass_directed(optr, oidx, iptr, iidx, din, dout, m_arcs, theta,
                          member, comm_din, comm_dout, cand_u, cand_j,
                          cand_lhs, cand_rhs, cand_acc):
    """Directed counterpart: arc count both ways vs the d_in*d_out null."""
    n = member.shape[0]
    k = member.shape[1]
    cnt = np.zeros(k, dtype=np.int64)
    n_eval = 0
    n_add = 0
    for u in range(n):
        for j in range(k):
            cnt[j] = 0
        for e in range(optr[u], optr[u + 1]):
            w = oidx[e]
            for j in range(k):
                cnt[j] += member[w, j]
        for e in range(iptr[u], iptr[u + 1]):
            w = iidx[e]
            for j in range(k):
                cnt[j] += member[w, j]
        for j in range(k):
            if cnt[j] > 0 and member[u, j] == 0:
                lhs = float(cnt[j])
                rhs = theta * (din[u] * comm_dout[j] + dout[u] * comm_din[j]) / m_arcs
                acc = lhs > rhs
                cand_u[n_eval] = u
                cand_j[n_eval] = j
                cand_lhs[n_eval] = lhs
                cand_rhs[n_eval] = rhs
                cand_acc[n_eval] = 1 if acc else 0
                n_eval += 1
                if acc:
                    member[u, j] = 1
                    comm_din[j] += din[u]
                    comm_dout[j] += dout[u]
                    n_add += 1
    return n_eval, n_add


def overlap_pass_sd(optr, oidx, iptr, iidx, phi, invd, theta, member,
                    comm_phi, cand_u, cand_j, cand_lhs, cand_rhs, cand_acc):
    """Stationary-walk counterpart: phi-weighted flow both ways vs 2*theta*phi_u*phi(C)."""
    n = member.shape[0]
    k = member.shape[1]
    out_cnt = np.zeros(k, dtype=np.int64)
    in_cnt = np.zeros(k, dtype=np.int64)
    win = np.zeros(k, dtype=np.float64)
    n_eval = 0
    n_add = 0
    for u in range(n):
        for j in range(k):
            out_cnt[j] = 0
            in_cnt[j] = 0
            win[j] = 0.0
        for e in range(optr[u], optr[u + 1]):
            w = oidx[e]
            for j in range(k):
                out_cnt[j] += member[w, j]
        for e in range(iptr[u], iptr[u + 1]):
            w = iidx[e]
            fw = phi[w] * invd[w]
            for j in range(k):
                if member[w, j] != 0:
                    in_cnt[j] += 1
                    win[j] += fw
        for j in range(k):
            if out_cnt[j] + in_cnt[j] > 0 and member[u, j] == 0:
                lhs = phi[u] * invd[u] * out_cnt[j] + win[j]
                rhs = 2.0 * theta * phi[u] * comm_phi[j]
                acc = lhs > rhs
                cand_u[n_eval] = u
                cand_j[n_eval] = j
                cand_lhs[n_eval] = lhs
                cand_rhs[n_eval] = rhs
                cand_acc[n_eval] = 1 if acc else 0
                n_eval += 1
                if acc:
                    member[u, j] = 1
                    comm_phi[j] += phi[u]
                    n_add += 1
    return n_eval, n_add
