"""Pure numpy / Python implementations of the hot kernels.

Point sets are int64 bitmasks (bit i = point i); ring subsets are int64
bitmasks over ring element indices (rings are bounded at 64 elements).
"""
import numpy as np


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _to_signed(mask):
    mask &= (1 << 64) - 1
    return mask - (1 << 64) if mask >> 63 else mask


def _to_unsigned(mask):
    return int(mask) & ((1 << 64) - 1)


# -- multiplicative sets -------------------------------------------------------

def close_mult(mask, mul):
    """Smallest subset containing ``mask`` closed under the product table."""
    mask = _to_unsigned(mask)
    members = _bits(mask)
    frontier = list(members)
    while frontier:
        new = []
        for a in frontier:
            row = mul[a]
            for b in members:
                c = int(row[b])
                if not (mask >> c) & 1:
                    mask |= 1 << c
                    new.append(c)
        members.extend(new)
        frontier = new
    return _to_signed(mask)


def enumerate_submonoids(mul, one):
    n = mul.shape[0]
    start = _to_unsigned(close_mult(1 << one, mul))
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        for e in range(n):
            if (s >> e) & 1:
                continue
            t = _to_unsigned(close_mult(s | (1 << e), mul))
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return np.array(sorted(_to_signed(s) for s in seen), dtype=np.int64)


# -- submodule lattices ----------------------------------------------------------

def coset_union(base, gens, add):
    """``base + <gens>`` where ``gens`` is already a subgroup."""
    result = base.copy()
    base_idx = np.flatnonzero(base)
    for g in gens:
        if not result[g]:
            result[add[base_idx, g]] = True
    return result


def prime_violation(in_sub, act, in_colon):
    """True iff some r*m lands in the submodule with m outside and r outside the colon."""
    hit = in_sub[act]
    return bool((hit & ~in_sub[None, :] & ~in_colon[:, None]).any())


def colon_vector(in_sub, act):
    return in_sub[act].all(axis=1)


# -- finite topologies -----------------------------------------------------------

def union_closure(basis, n_points):
    opens = np.zeros(1, dtype=np.int64)
    for b in np.unique(basis):
        opens = np.union1d(opens, opens | b)
    return opens


def smallest_neighbourhoods(opens, n_points):
    full = np.int64((1 << n_points) - 1)
    out = np.full(n_points, full, dtype=np.int64)
    for x in range(n_points):
        bit = np.int64(1) << np.int64(x)
        containing = opens[(opens & bit) != 0]
        if containing.size:
            out[x] = np.bitwise_and.reduce(containing)
    return out


def closure_batch(opens, subsets, full):
    # complement of the union of all opens missing the subset
    disjoint = (opens[None, :] & subsets[:, None]) == 0
    unions = np.where(disjoint, opens[None, :], 0)
    return full & ~np.bitwise_or.reduce(unions, axis=1)


def interior_batch(opens, subsets):
    inside = (opens[None, :] & ~subsets[:, None]) == 0
    return np.bitwise_or.reduce(np.where(inside, opens[None, :], 0), axis=1)


def limit_points_batch(opens, subsets, n_points):
    out = np.zeros(subsets.shape[0], dtype=np.int64)
    for x in range(n_points):
        bit = np.int64(1) << np.int64(x)
        containing = opens[(opens & bit) != 0]
        rest = subsets & ~bit
        # x is a limit point iff every open through x meets N - {x}
        ok = ((containing[None, :] & rest[:, None]) != 0).all(axis=1)
        out |= np.where(ok, bit, 0)
    return out


def separated_pairs(opens, n_points):
    """(t0, t1) flags computed by scanning every open for every ordered pair."""
    member = ((opens[:, None] >> np.arange(n_points)) & 1).astype(bool)
    t0 = True
    t1 = True
    for x in range(n_points):
        for y in range(n_points):
            if x == y:
                continue
            only_x = member[:, x] & ~member[:, y]
            if not only_x.any():
                t1 = False
                if not (member[:, y] & ~member[:, x]).any():
                    t0 = False
    return t0, t1


def has_proper_clopen(opens, full):
    complements = full & ~opens
    proper = (opens != 0) & (opens != full)
    return bool((proper & np.isin(complements, opens)).any())


def is_chain(opens):
    counts = np.array([bin(int(o) & ((1 << 64) - 1)).count("1") for o in opens])
    ordered = opens[np.argsort(counts, kind="stable")]
    return bool(((ordered[:-1] & ~ordered[1:]) == 0).all())


def is_intersection_closed(opens):
    inter = (opens[:, None] & opens[None, :]).ravel()
    return bool(np.isin(inter, opens).all())
