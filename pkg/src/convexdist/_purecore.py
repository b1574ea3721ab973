"""Pure-Python solver kernels.

Reference implementation of the hot loops: support functions, hill-climbing
over mesh adjacency, origin projection onto simplices, and the three solver
iterations. ``_core.pyx`` mirrors this module statement for statement so the
two backends produce bit-identical results; any change here must be applied
there as well.

Everything below works on plain floats and tuples on purpose: it keeps the
arithmetic identical to the C backend and avoids per-iteration numpy
overhead.
"""

from __future__ import annotations

import math

BACKEND_NAME = "pure"

# shape kind tags shared with the packed pair representation
KIND_SPHERE = 0
KIND_BOX = 1
KIND_ELLIPSOID = 2
KIND_MESH = 3

# solver tags
ALGO_FW = 0
ALGO_GJK = 1
ALGO_NESTEROV = 2

MODE_DISTANCE = 0
MODE_BOOLEAN = 1

STATUS_SEPARATED = 0
STATUS_INTERSECTING = 1
STATUS_MAX_ITERATIONS = 2
STATUS_NUMERICAL_FAILURE = 3

# norm of the iterate at or below which the origin counts as reached
ZERO_TOL = 1e-12
# squared-norm guard against exactly degenerate directions
DEGENERATE_SQ = 1e-280

# subsets of simplex vertices ordered by (cardinality, bitmask); lower-rank
# faces are scanned first so ties prefer the smaller face
_MASK_ORDER = (
    (1,),
    (1, 2, 3),
    (1, 2, 4, 3, 5, 6, 7),
    (1, 2, 4, 8, 3, 5, 6, 9, 10, 12, 7, 11, 13, 14, 15),
)

def hill_climb(verts, nbrs, dx, dy, dz, i0):
    """Greedy walk to a vertex minimizing <v, d> over the adjacency graph.

    ``verts`` is a sequence of (x, y, z) tuples, ``nbrs`` a sequence of
    index tuples. Returns (index, dot value). Exact on the edge graph of a
    convex polytope: a vertex with no strictly better neighbor attains the
    global minimum value.
    """
    cur = i0
    v = verts[cur]
    rmin = v[0] * dx + v[1] * dy + v[2] * dz
    improved = True
    while improved:
        improved = False
        best = cur
        for j in nbrs[cur]:
            w = verts[j]
            r = w[0] * dx + w[1] * dy + w[2] * dz
            if r < rmin:
                rmin = r
                best = j
                improved = True
        if improved:
            cur = best
    return cur, rmin


def brute_force_support(verts, dx, dy, dz):
    """Full scan over all vertices; ties broken by lowest index."""
    best = 0
    v = verts[0]
    rmin = v[0] * dx + v[1] * dy + v[2] * dz
    for i in range(1, len(verts)):
        v = verts[i]
        r = v[0] * dx + v[1] * dy + v[2] * dz
        if r < rmin:
            rmin = r
            best = i
    return best, rmin


def support_local(kind, prm, verts, nbrs, dx, dy, dz, hint):
    """Support point (argmin of <x, d>) of a shape in its local frame.

    ``prm`` packs the shape parameters (radius / half-extents / Cholesky
    factor of the ellipsoid matrix). Returns (px, py, pz, vertex_index);
    the index is -1 for analytic shapes.
    """
    if kind == KIND_SPHERE:
        n = math.sqrt(dx * dx + dy * dy + dz * dz)
        s = -prm[0] / n
        return s * dx, s * dy, s * dz, -1
    if kind == KIND_BOX:
        px = -prm[0] if dx >= 0.0 else prm[0]
        py = -prm[1] if dy >= 0.0 else prm[1]
        pz = -prm[2] if dz >= 0.0 else prm[2]
        return px, py, pz, -1
    if kind == KIND_ELLIPSOID:
        l00, l10, l11, l20, l21, l22 = prm
        # z = A^{-1} d via the cached Cholesky factor (A = L L^T)
        u0 = dx / l00
        u1 = (dy - l10 * u0) / l11
        u2 = (dz - l20 * u0 - l21 * u1) / l22
        z2 = u2 / l22
        z1 = (u1 - l21 * z2) / l11
        z0 = (u0 - l10 * z1 - l20 * z2) / l00
        den = math.sqrt(dx * z0 + dy * z1 + dz * z2)
        return -z0 / den, -z1 / den, -z2 / den, -1
    i, _ = hill_climb(verts, nbrs, dx, dy, dz, hint)
    v = verts[i]
    return v[0], v[1], v[2], i


def support_posed(kind, prm, verts, nbrs, R, t, dx, dy, dz, hint):
    """Support of the posed shape R*S + t: p = R s(R^T d) + t."""
    r00, r01, r02, r10, r11, r12, r20, r21, r22 = R
    lx = r00 * dx + r10 * dy + r20 * dz
    ly = r01 * dx + r11 * dy + r21 * dz
    lz = r02 * dx + r12 * dy + r22 * dz
    px, py, pz, idx = support_local(kind, prm, verts, nbrs, lx, ly, lz, hint)
    wx = r00 * px + r01 * py + r02 * pz + t[0]
    wy = r10 * px + r11 * py + r12 * pz + t[1]
    wz = r20 * px + r21 * py + r22 * pz + t[2]
    return wx, wy, wz, idx


def support_pair(pp, dx, dy, dz, h1, h2):
    """Support of the Minkowski difference with witnesses on both shapes.

    Realizes s_D(d) = s_1(d) - s_2(-d). Returns the flat tuple
    (w1x, w1y, w1z, w2x, w2y, w2z, px, py, pz, h1, h2).
    """
    w1x, w1y, w1z, i1 = support_posed(
        pp.kind1, pp.prm1, pp.vlist1, pp.nlist1, pp.R1, pp.t1, dx, dy, dz, h1
    )
    w2x, w2y, w2z, i2 = support_posed(
        pp.kind2, pp.prm2, pp.vlist2, pp.nlist2, pp.R2, pp.t2, -dx, -dy, -dz, h2
    )
    if i1 >= 0:
        h1 = i1
    if i2 >= 0:
        h2 = i2
    return w1x, w1y, w1z, w2x, w2y, w2z, w1x - w2x, w1y - w2y, w1z - w2z, h1, h2


def johnson_project(pts, n):
    """Project the origin onto the convex hull of ``n`` (<= 4) points.

    Johnson's distance subalgorithm: cofactor values Delta_i(X) are built
    recursively for every nonempty subset X; the supporting face is the
    first subset (scanned smallest first) whose own cofactors are all
    positive and whose one-point extensions are all non-positive.

    Returns (x, y, z, lam, mask, ok) with ``lam`` a list of n barycentric
    coordinates (zero off the face) and ``mask`` the face bitmask. ``ok``
    is False only on non-finite arithmetic.
    """
    if n == 1:
        p = pts[0]
        return p[0], p[1], p[2], [1.0], 1, _finite3(p)

    dots = [[0.0] * n for _ in range(n)]
    for i in range(n):
        pi = pts[i]
        for j in range(i, n):
            pj = pts[j]
            d = pi[0] * pj[0] + pi[1] * pj[1] + pi[2] * pj[2]
            dots[i][j] = d
            dots[j][i] = d

    nmask = 1 << n
    delta = [[0.0] * n for _ in range(nmask)]
    for i in range(n):
        delta[1 << i][i] = 1.0
    for m in range(1, nmask):
        size = _popcount(m)
        if size < 2:
            continue
        for j in range(n):
            jb = 1 << j
            if not (m & jb):
                continue
            sub = m ^ jb
            ref = _lowest_index(sub)
            acc = 0.0
            for i in range(n):
                if sub & (1 << i):
                    acc += delta[sub][i] * (dots[i][ref] - dots[i][j])
            delta[m][j] = acc

    order = _MASK_ORDER[n - 1]
    for m in order:
        ok = True
        for i in range(n):
            ib = 1 << i
            if m & ib:
                if not (delta[m][i] > 0.0):
                    ok = False
                    break
            else:
                if delta[m | ib][i] > 0.0:
                    ok = False
                    break
        if ok:
            return _compose(pts, n, m, delta)

    # numerically inconsistent cofactor signs: fall back to the best
    # feasible face (all cofactors positive), minimizing the norm
    best_m = 0
    best_sq = math.inf
    best = (0.0, 0.0, 0.0, [0.0] * n)
    for m in order:
        feasible = True
        for i in range(n):
            if m & (1 << i) and not (delta[m][i] > 0.0):
                feasible = False
                break
        if not feasible:
            continue
        x, y, z, lam = _compose_raw(pts, n, m, delta)
        sq = x * x + y * y + z * z
        if sq < best_sq:
            best_sq = sq
            best_m = m
            best = (x, y, z, lam)
    if best_m == 0:
        return 0.0, 0.0, 0.0, [0.0] * n, 0, False
    x, y, z, lam = best
    ok = math.isfinite(x) and math.isfinite(y) and math.isfinite(z)
    return x, y, z, lam, best_m, ok


def _finite3(p):
    return math.isfinite(p[0]) and math.isfinite(p[1]) and math.isfinite(p[2])


def _popcount(m):
    c = 0
    while m:
        m &= m - 1
        c += 1
    return c


def _lowest_index(mask):
    i = 0
    while not (mask & (1 << i)):
        i += 1
    return i


def _compose_raw(pts, n, m, delta):
    total = 0.0
    for i in range(n):
        if m & (1 << i):
            total += delta[m][i]
    x = 0.0
    y = 0.0
    z = 0.0
    lam = [0.0] * n
    for i in range(n):
        if m & (1 << i):
            li = delta[m][i] / total
            lam[i] = li
            p = pts[i]
            x += li * p[0]
            y += li * p[1]
            z += li * p[2]
    return x, y, z, lam


def _compose(pts, n, m, delta):
    x, y, z, lam = _compose_raw(pts, n, m, delta)
    ok = math.isfinite(x) and math.isfinite(y) and math.isfinite(z)
    return x, y, z, lam, m, ok


def solve_packed(pp, algo, mode, eps, max_iter, normalize, h1, h2, collect_trace):
    """Run one solver on a packed pair.

    Returns (status, distance, w1, w2, iterations, h1, h2, trace) where
    w1/w2 are witness-point tuples and trace is a list of
    (iter, gap, norm_x, dx, dy, dz, momentum) rows or None.
    """
    trace = [] if collect_trace else None

    r = support_pair(pp, 1.0, 0.0, 0.0, h1, h2)
    w1x, w1y, w1z, w2x, w2y, w2z, xx, xy, xz, h1, h2 = r
    cw = [w1x, w1y, w1z, w2x, w2y, w2z]

    nx2 = xx * xx + xy * xy + xz * xz
    normx = math.sqrt(nx2)
    if normx <= ZERO_TOL:
        if collect_trace:
            trace.append((0, 0.0, normx, 0.0, 0.0, 0.0, False))
        return _result(STATUS_INTERSECTING, 0.0, cw, 1, h1, h2, trace)

    if algo == ALGO_FW:
        return _fw_loop(pp, mode, eps, max_iter, h1, h2, xx, xy, xz, cw, trace)

    simplex = []  # rows (px,py,pz, w1x,w1y,w1z, w2x,w2y,w2z)
    momentum = algo == ALGO_NESTEROV
    dpx, dpy, dpz = xx, xy, xz  # momentum direction state
    spx, spy, spz = xx, xy, xz  # previous support point

    for k in range(max_iter):
        nx2 = xx * xx + xy * xy + xz * xz
        normx = math.sqrt(nx2)

        used_momentum = False
        if momentum:
            delta = (k + 1.0) / (k + 3.0)
            yx = delta * xx + (1.0 - delta) * spx
            yy = delta * xy + (1.0 - delta) * spy
            yz = delta * xz + (1.0 - delta) * spz
            if normalize:
                nd = math.sqrt(dpx * dpx + dpy * dpy + dpz * dpz)
                ny = math.sqrt(yx * yx + yy * yy + yz * yz)
                if nd * nd <= DEGENERATE_SQ or ny * ny <= DEGENERATE_SQ:
                    momentum = False
                else:
                    dx = delta * (dpx / nd) + (1.0 - delta) * (yx / ny)
                    dy = delta * (dpy / nd) + (1.0 - delta) * (yy / ny)
                    dz = delta * (dpz / nd) + (1.0 - delta) * (yz / ny)
            else:
                dx = delta * dpx + (1.0 - delta) * yx
                dy = delta * dpy + (1.0 - delta) * yy
                dz = delta * dpz + (1.0 - delta) * yz
            if momentum and dx * dx + dy * dy + dz * dz <= DEGENERATE_SQ:
                momentum = False
            if momentum:
                used_momentum = True
                dpx, dpy, dpz = dx, dy, dz
        if not used_momentum:
            dx, dy, dz = xx, xy, xz

        r = support_pair(pp, dx, dy, dz, h1, h2)
        sw1x, sw1y, sw1z, sw2x, sw2y, sw2z, sx, sy, sz, h1, h2 = r
        spx, spy, spz = sx, sy, sz

        gap = nx2 - (xx * sx + xy * sy + xz * sz)
        if collect_trace:
            nd = math.sqrt(dx * dx + dy * dy + dz * dz)
            trace.append((k, gap, normx, dx / nd, dy / nd, dz / nd, used_momentum))

        if mode == MODE_BOOLEAN and sx * dx + sy * dy + sz * dz > 0.0:
            return _result(STATUS_SEPARATED, normx, cw, k + 1, h1, h2, trace)

        if gap <= eps:
            if used_momentum:
                # fixed point of the momentum recursion: drop the candidate
                # support and continue as vanilla GJK
                momentum = False
                continue
            return _result(STATUS_SEPARATED, normx, cw, k + 1, h1, h2, trace)

        if used_momentum and _duplicate(simplex, sx, sy, sz):
            momentum = False
            continue

        simplex.append((sx, sy, sz, sw1x, sw1y, sw1z, sw2x, sw2y, sw2z))
        n = len(simplex)
        if n > 4:
            return _result(STATUS_NUMERICAL_FAILURE, normx, cw, k + 1, h1, h2, trace)
        px, py, pz, lam, mask, ok = johnson_project(simplex, n)
        if not ok:
            return _result(STATUS_NUMERICAL_FAILURE, normx, cw, k + 1, h1, h2, trace)

        cw = [0.0] * 6
        kept = []
        for i in range(n):
            if mask & (1 << i):
                row = simplex[i]
                li = lam[i]
                cw[0] += li * row[3]
                cw[1] += li * row[4]
                cw[2] += li * row[5]
                cw[3] += li * row[6]
                cw[4] += li * row[7]
                cw[5] += li * row[8]
                kept.append(i)
        xx, xy, xz = px, py, pz

        normnew = math.sqrt(xx * xx + xy * xy + xz * xz)
        if normnew <= ZERO_TOL:
            if collect_trace:
                trace.append((k + 1, 0.0, normnew, 0.0, 0.0, 0.0, False))
            return _result(STATUS_INTERSECTING, 0.0, cw, k + 1, h1, h2, trace)

        if len(kept) == 4:
            # full-rank face with a nonzero projection can only come from the
            # numerical fallback; drop the weakest vertex to keep rank <= 3
            drop = kept[0]
            lmin = lam[drop]
            for i in kept[1:]:
                if lam[i] < lmin:
                    lmin = lam[i]
                    drop = i
            kept.remove(drop)
        simplex = [simplex[i] for i in kept]

    nx2 = xx * xx + xy * xy + xz * xz
    return _result(
        STATUS_MAX_ITERATIONS, math.sqrt(nx2), cw, max_iter, h1, h2, trace
    )


def _fw_loop(pp, mode, eps, max_iter, h1, h2, xx, xy, xz, cw, trace):
    collect_trace = trace is not None
    zero_band = math.sqrt(2.0 * eps)
    normx = 0.0
    for k in range(max_iter):
        nx2 = xx * xx + xy * xy + xz * xz
        normx = math.sqrt(nx2)

        r = support_pair(pp, xx, xy, xz, h1, h2)
        sw1x, sw1y, sw1z, sw2x, sw2y, sw2z, sx, sy, sz, h1, h2 = r

        gap = nx2 - (xx * sx + xy * sy + xz * sz)
        if collect_trace:
            trace.append((k, gap, normx, xx / normx, xy / normx, xz / normx, False))

        if mode == MODE_BOOLEAN and sx * xx + sy * xy + sz * xz > 0.0:
            return _result(STATUS_SEPARATED, normx, cw, k + 1, h1, h2, trace)

        if gap <= eps:
            if normx <= zero_band:
                # within the resolution of the gap criterion the iterate is
                # indistinguishable from the origin
                return _result(STATUS_INTERSECTING, 0.0, cw, k + 1, h1, h2, trace)
            return _result(STATUS_SEPARATED, normx, cw, k + 1, h1, h2, trace)

        ex = xx - sx
        ey = xy - sy
        ez = xz - sz
        den = ex * ex + ey * ey + ez * ez
        if den <= DEGENERATE_SQ:
            return _result(STATUS_SEPARATED, normx, cw, k + 1, h1, h2, trace)
        gamma = gap / den
        if gamma > 1.0:
            gamma = 1.0
        om = 1.0 - gamma
        xx = om * xx + gamma * sx
        xy = om * xy + gamma * sy
        xz = om * xz + gamma * sz
        cw = [
            om * cw[0] + gamma * sw1x,
            om * cw[1] + gamma * sw1y,
            om * cw[2] + gamma * sw1z,
            om * cw[3] + gamma * sw2x,
            om * cw[4] + gamma * sw2y,
            om * cw[5] + gamma * sw2z,
        ]
        normnew = math.sqrt(xx * xx + xy * xy + xz * xz)
        if normnew <= ZERO_TOL:
            if collect_trace:
                trace.append((k + 1, 0.0, normnew, 0.0, 0.0, 0.0, False))
            return _result(STATUS_INTERSECTING, 0.0, cw, k + 1, h1, h2, trace)

    nx2 = xx * xx + xy * xy + xz * xz
    return _result(
        STATUS_MAX_ITERATIONS, math.sqrt(nx2), cw, max_iter, h1, h2, trace
    )


def _duplicate(simplex, sx, sy, sz):
    for row in simplex:
        if row[0] == sx and row[1] == sy and row[2] == sz:
            return True
    return False


def _result(status, dist, cw, iters, h1, h2, trace):
    if status == STATUS_INTERSECTING:
        dist = 0.0
    return (
        status,
        dist,
        (cw[0], cw[1], cw[2]),
        (cw[3], cw[4], cw[5]),
        iters,
        h1,
        h2,
        trace,
    )
