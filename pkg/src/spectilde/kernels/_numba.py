"""numba-compiled twins of the kernels in ``_numpy``; same signatures and results."""
import numpy as np
from numba import njit

_ONE = np.int64(1)


@njit(cache=True)
def _close_mult(mask, mul):
    n = mul.shape[0]
    members = np.empty(n, dtype=np.int64)
    count = 0
    for i in range(n):
        if (mask >> np.int64(i)) & _ONE:
            members[count] = i
            count += 1
    start = 0
    while start < count:
        stop = count
        for ia in range(start, stop):
            a = members[ia]
            for ib in range(count):
                c = np.int64(mul[a, members[ib]])
                if not ((mask >> c) & _ONE):
                    mask |= _ONE << c
                    members[count] = c
                    count += 1
        start = stop
    return mask


def close_mult(mask, mul):
    from ._numpy import _to_signed
    return int(_close_mult(np.int64(_to_signed(int(mask))), mul))


@njit(cache=True)
def _enumerate_submonoids(mul, one):
    n = mul.shape[0]
    start = _close_mult(_ONE << np.int64(one), mul)
    seen = {start}
    stack = [start]
    while len(stack) > 0:
        s = stack.pop()
        for e in range(n):
            bit = _ONE << np.int64(e)
            if s & bit:
                continue
            t = _close_mult(s | bit, mul)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    out = np.empty(len(seen), dtype=np.int64)
    i = 0
    for s in seen:
        out[i] = s
        i += 1
    return np.sort(out)


def enumerate_submonoids(mul, one):
    return _enumerate_submonoids(np.ascontiguousarray(mul), one)


@njit(cache=True)
def coset_union(base, gens, add):
    result = base.copy()
    n = base.shape[0]
    for g in gens:
        if result[g]:
            continue
        for a in range(n):
            if base[a]:
                result[add[a, g]] = True
    return result


@njit(cache=True)
def prime_violation(in_sub, act, in_colon):
    nr, nm = act.shape
    for r in range(nr):
        if in_colon[r]:
            continue
        for m in range(nm):
            if in_sub[act[r, m]] and not in_sub[m]:
                return True
    return False


@njit(cache=True)
def colon_vector(in_sub, act):
    nr, nm = act.shape
    out = np.ones(nr, dtype=np.bool_)
    for r in range(nr):
        for m in range(nm):
            if not in_sub[act[r, m]]:
                out[r] = False
                break
    return out


@njit(cache=True)
def _union_closure_dense(basis, n_points):
    seen = np.zeros(_ONE << np.int64(n_points), dtype=np.bool_)
    opens = np.empty(seen.shape[0], dtype=np.int64)
    opens[0] = 0
    seen[0] = True
    count = 1
    for b in basis:
        stop = count
        for i in range(stop):
            u = opens[i] | b
            if not seen[u]:
                seen[u] = True
                opens[count] = u
                count += 1
    return np.sort(opens[:count])


@njit(cache=True)
def _union_closure_sparse(basis, n_points):
    seen = {np.int64(0)}
    opens = [np.int64(0)]
    for b in basis:
        stop = len(opens)
        for i in range(stop):
            u = opens[i] | b
            if u not in seen:
                seen.add(u)
                opens.append(u)
    return np.sort(np.array(opens))


def union_closure(basis, n_points):
    basis = np.unique(np.asarray(basis, dtype=np.int64))
    if n_points <= 24:
        return _union_closure_dense(basis, n_points)
    return _union_closure_sparse(basis, n_points)


@njit(cache=True)
def smallest_neighbourhoods(opens, n_points):
    full = (_ONE << np.int64(n_points)) - _ONE
    out = np.full(n_points, full, dtype=np.int64)
    for x in range(n_points):
        bit = _ONE << np.int64(x)
        for o in opens:
            if o & bit:
                out[x] &= o
    return out


@njit(cache=True)
def closure_batch(opens, subsets, full):
    out = np.empty(subsets.shape[0], dtype=np.int64)
    for i in range(subsets.shape[0]):
        acc = np.int64(0)
        for o in opens:
            if not (o & subsets[i]):
                acc |= o
        out[i] = full & ~acc
    return out


@njit(cache=True)
def interior_batch(opens, subsets):
    out = np.empty(subsets.shape[0], dtype=np.int64)
    for i in range(subsets.shape[0]):
        acc = np.int64(0)
        for o in opens:
            if not (o & ~subsets[i]):
                acc |= o
        out[i] = acc
    return out


@njit(cache=True)
def limit_points_batch(opens, subsets, n_points):
    out = np.zeros(subsets.shape[0], dtype=np.int64)
    for i in range(subsets.shape[0]):
        for x in range(n_points):
            bit = _ONE << np.int64(x)
            rest = subsets[i] & ~bit
            ok = True
            for o in opens:
                if (o & bit) and not (o & rest):
                    ok = False
                    break
            if ok:
                out[i] |= bit
    return out


@njit(cache=True)
def separated_pairs(opens, n_points):
    t0 = True
    t1 = True
    for x in range(n_points):
        bx = _ONE << np.int64(x)
        for y in range(n_points):
            if x == y:
                continue
            by = _ONE << np.int64(y)
            only_x = False
            only_y = False
            for o in opens:
                if (o & bx) and not (o & by):
                    only_x = True
                elif (o & by) and not (o & bx):
                    only_y = True
                if only_x:
                    break
            if not only_x:
                t1 = False
                if not only_y:
                    t0 = False
    return t0, t1


@njit(cache=True)
def has_proper_clopen(opens, full):
    # opens is sorted, so membership is a binary search
    for o in opens:
        if o == 0 or o == full:
            continue
        c = full & ~o
        j = np.searchsorted(opens, c)
        if j < opens.shape[0] and opens[j] == c:
            return True
    return False


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - _ONE
        c += 1
    return c


@njit(cache=True)
def is_chain(opens):
    k = opens.shape[0]
    counts = np.empty(k, dtype=np.int64)
    for i in range(k):
        counts[i] = _popcount(opens[i])
    ordered = opens[np.argsort(counts, kind="mergesort")]
    for i in range(k - 1):
        if ordered[i] & ~ordered[i + 1]:
            return False
    return True


@njit(cache=True)
def is_intersection_closed(opens):
    k = opens.shape[0]
    for i in range(k):
        for j in range(i + 1, k):
            c = opens[i] & opens[j]
            p = np.searchsorted(opens, c)
            if p >= k or opens[p] != c:
                return False
    return True
