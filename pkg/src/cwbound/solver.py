"""Primal-dual interior-point solver for block programs.

Solves maximize b'y + b0 subject to, per block, A_const + sum y_i A_i
being positive semidefinite, with an infeasible-start predictor and
corrector scheme.  The search direction comes from the Schur system
B dy = g with B_ij = sum of tr(A_i X A_j Z^-1) over blocks, which is
symmetric positive definite since all data matrices are symmetric.
Diagonal blocks take a vectorized shortcut.

Double precision is the workhorse; np.longdouble is available for
stubborn small programs, with hand-rolled Cholesky and triangular
solves because the LAPACK bindings only cover the standard dtypes.
Step lengths and eigenvalue bounds may always drop to double: they
only gate progress, never accuracy of the iterates.

Before any numerics, rows of a block that are identical as linear
forms are merged: the duplicate is a copy of a principal-submatrix
row, so feasibility is unchanged, and keeping it would make every
interior iterate singular.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .assembler import SdpProgram
from .linform import Block
from .sdpaio import fold_program


# ---------------------------------------------------------------- dtype


def _chol(a, extended: bool):
    if not extended:
        return np.linalg.cholesky(a)
    n = a.shape[0]
    ell = np.zeros_like(a)
    for j in range(n):
        v = a[j:, j] - ell[j:, :j] @ ell[j, :j]
        if v[0] <= 0:
            raise np.linalg.LinAlgError("not positive definite")
        ell[j, j] = np.sqrt(v[0])
        ell[j + 1 :, j] = v[1:] / ell[j, j]
    return ell


def _solve_lower(ell, b):
    x = np.array(b, copy=True)
    n = ell.shape[0]
    for i in range(n):
        x[i] = (x[i] - ell[i, :i] @ x[:i]) / ell[i, i]
    return x


def _chol_solve(ell, b, extended: bool):
    """Solve (L L') x = b."""
    if not extended:
        x = np.linalg.solve(ell, b)
        return np.linalg.solve(ell.T, x)
    x = _solve_lower(ell, b)
    n = ell.shape[0]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - ell[i + 1 :, i] @ x[i + 1 :]) / ell[i, i]
    return x


def _inv_from_chol(ell, extended: bool):
    eye = np.eye(ell.shape[0], dtype=ell.dtype)
    return _chol_solve(ell, eye, extended)


def _max_step(ell, delta) -> float:
    """sup alpha with M + alpha*D psd, M = L L'. Computed in double."""
    ell64 = np.asarray(ell, dtype=np.float64)
    d64 = np.asarray(delta, dtype=np.float64)
    s = sla.solve_triangular(ell64, d64, lower=True, check_finite=False)
    s = sla.solve_triangular(ell64, s.T, lower=True, check_finite=False)
    lam = float(np.linalg.eigvalsh(0.5 * (s + s.T))[0])
    if lam >= -1e-300:
        return math.inf
    return -1.0 / lam


class _SchurFactor:
    """Cholesky of the Schur system plus iterative refinement.

    Extended mode factors a double-precision copy and lets refinement recover
    the longdouble digits; when conditioning defeats that, callers ask for the
    native longdouble factorization instead.
    """

    def __init__(self, bmat, extended, native_ld):
        self.bmat = bmat
        self.extended = extended
        self.native_ld = extended and native_ld
        if self.native_ld:
            self.ell = _chol(bmat, True)
        else:
            mat = np.asarray(bmat, dtype=np.float64) if extended else bmat
            self.fac = sla.cho_factor(mat, lower=True, check_finite=False)

    def _base(self, rhs):
        if self.native_ld:
            return _chol_solve(self.ell, rhs, True)
        if self.extended:
            out = sla.cho_solve(
                self.fac, np.asarray(rhs, dtype=np.float64), check_finite=False
            )
            return np.asarray(out, dtype=np.longdouble)
        return sla.cho_solve(self.fac, rhs, check_finite=False)

    def solve(self, rhs):
        sol = self._base(rhs)
        healthy = True
        first = None
        for _ in range(3):
            res = rhs - self.bmat @ sol
            rn = float(np.max(np.abs(res)))
            if first is None:
                first = rn
            elif first > 0.0 and rn > 0.5 * first:
                healthy = False
                break
            sol = sol + self._base(res)
        return sol, healthy


# ------------------------------------------------------- preprocessing


def merge_clone_rows(block: Block) -> Block:
    if block.diag or block.size < 2:
        return block
    keys = [tuple(f.key() for f in row) for row in block.forms]
    keep: list[int] = []
    seen = set()
    for i, k in enumerate(keys):
        if k not in seen:
            seen.add(k)
            keep.append(i)
    if len(keep) == block.size:
        return block
    forms = tuple(tuple(block.forms[i][j] for j in keep) for i in keep)
    labels = tuple(block.labels[i] for i in keep)
    return Block(block.kind, block.params, labels, forms, block.diag)


# --------------------------------------------------------- folded data


class _DenseBlock:
    __slots__ = ("size", "a0", "tens", "vids", "nv", "scale")

    def __init__(self, fb, dtype, scale):
        s = fb.size
        self.size = s
        self.scale = scale
        a0 = np.zeros((s, s), dtype=dtype)
        for i, j, v in fb.const:
            a0[i, j] = v / scale
            a0[j, i] = v / scale
        var_cols = sorted({v for v, _ in fb.per_var})
        self.vids = np.array(var_cols, dtype=np.int64)
        self.nv = len(var_cols)
        local = {v: k for k, v in enumerate(var_cols)}
        # one constant symmetric matrix per touched variable
        tens = np.zeros((self.nv, s, s), dtype=dtype)
        for v, entries in fb.per_var:
            k = local[v]
            for i, j, c in entries:
                tens[k, i, j] += c / scale
                if i != j:
                    tens[k, j, i] += c / scale
        self.a0 = a0
        self.tens = tens

    def build(self, y):
        """A_const + sum y_i A_i at dense-variable vector y."""
        return self.a0 + np.tensordot(y[self.vids], self.tens, axes=1)


class _DiagBlock:
    __slots__ = ("size", "a0", "nz_p", "nz_v", "nz_c", "vids", "nv", "scale")

    def __init__(self, fb, dtype, scale):
        self.size = fb.size
        self.scale = scale
        self.a0 = np.zeros(fb.size, dtype=dtype)
        for i, j, v in fb.const:
            self.a0[i] += v / scale
        var_cols = sorted({v for v, _ in fb.per_var})
        self.vids = np.array(var_cols, dtype=np.int64)
        self.nv = len(var_cols)
        local = {v: k for k, v in enumerate(var_cols)}
        nz_p, nz_v, nz_c = [], [], []
        for v, entries in fb.per_var:
            for i, j, c in entries:
                nz_p.append(i); nz_v.append(local[v]); nz_c.append(c / scale)
        self.nz_p = np.array(nz_p, dtype=np.int64)
        self.nz_v = np.array(nz_v, dtype=np.int64)
        self.nz_c = np.array(nz_c, dtype=dtype)

    def build(self, y):
        z = np.array(self.a0, copy=True)
        np.add.at(z, self.nz_p, self.nz_c * y[self.vids[self.nz_v]])
        return z


class _SparseBlock:
    """Dense block held as per-variable sparse entry lists.

    Same contract as _DenseBlock; chosen when the per-variable dense
    stack would be too large to keep resident.  Entries are stored
    upper-triangular once and mirrored on use.
    """

    __slots__ = ("size", "a0", "vids", "nv", "scale",
                 "rows_v", "rows_i", "rows_j", "rows_c", "starts")

    def __init__(self, fb, dtype, scale):
        s = fb.size
        self.size = s
        self.scale = scale
        a0 = np.zeros((s, s), dtype=dtype)
        for i, j, v in fb.const:
            a0[i, j] = v / scale
            a0[j, i] = v / scale
        self.a0 = a0
        var_cols = sorted({v for v, _ in fb.per_var})
        self.vids = np.array(var_cols, dtype=np.int64)
        self.nv = len(var_cols)
        local = {v: k for k, v in enumerate(var_cols)}
        per = sorted(fb.per_var, key=lambda kv: local[kv[0]])
        ii, jj, cc, starts = [], [], [], [0]
        for _, entries in per:
            for i, j, c in entries:
                ii.append(i)
                jj.append(j)
                cc.append(c / scale)
            starts.append(len(ii))
        self.rows_i = np.array(ii, dtype=np.int64)
        self.rows_j = np.array(jj, dtype=np.int64)
        self.rows_c = np.array(cc, dtype=dtype)
        self.starts = np.array(starts, dtype=np.int64)
        self.rows_v = np.repeat(
            np.arange(self.nv, dtype=np.int64), np.diff(self.starts)
        )

    def _scatter(self, coeff, out):
        w = coeff[self.rows_v] * self.rows_c
        np.add.at(out, (self.rows_i, self.rows_j), w)
        off = self.rows_i != self.rows_j
        np.add.at(out, (self.rows_j[off], self.rows_i[off]), w[off])
        return out

    def build(self, y):
        return self._scatter(y[self.vids], np.array(self.a0, copy=True))

    def densify(self, k0, k1, dtype):
        """Dense symmetric stack of the variables in [k0, k1)."""
        t = np.zeros((k1 - k0, self.size, self.size), dtype=dtype)
        sl = slice(self.starts[k0], self.starts[k1])
        k = self.rows_v[sl] - k0
        i = self.rows_i[sl]
        j = self.rows_j[sl]
        c = self.rows_c[sl].astype(dtype, copy=False)
        np.add.at(t, (k, i, j), c)
        off = i != j
        np.add.at(t, (k[off], j[off], i[off]), c[off])
        return t


def _psd_factor(a, extended: bool):
    """Some F with F F' = a, for symmetric psd a."""
    try:
        return _chol(a, extended)
    except np.linalg.LinAlgError:
        lam, u = np.linalg.eigh(np.asarray(a, dtype=np.float64))
        f = u * np.sqrt(np.clip(lam, 0.0, None))
        return np.asarray(f, dtype=a.dtype)


# dense per-variable stacks above this element count switch to sparse
SPARSE_BLOCK_ELEMS = 2_000_000


def _block_scale(fb) -> float:
    worst = 1.0
    for _, _, v in fb.const:
        worst = max(worst, abs(float(v)))
    for _, entries in fb.per_var:
        for _, _, v in entries:
            worst = max(worst, abs(float(v)))
    return worst


def _fold(prog: SdpProgram, dtype):
    merged = tuple(merge_clone_rows(b) for b in prog.blocks)
    slim = SdpProgram(
        n=prog.n, d=prog.d, w=prog.w, variant=prog.variant,
        formulation=prog.formulation, registry=prog.registry,
        blocks=merged, objective=prog.objective, fixed=prog.fixed,
    )
    folded, bvec, b0, free = fold_program(slim)
    blocks = []
    for fb in folded:
        scale = _block_scale(fb)
        if fb.diag:
            blocks.append(_DiagBlock(fb, dtype, scale))
        elif len({v for v, _ in fb.per_var}) * fb.size * fb.size > SPARSE_BLOCK_ELEMS:
            blocks.append(_SparseBlock(fb, dtype, scale))
        else:
            blocks.append(_DenseBlock(fb, dtype, scale))
    return blocks, np.array(bvec, dtype=dtype), b0, free


# ---------------------------------------------------------------- core


@dataclass(frozen=True)
class SolveResult:
    value: float
    dual_value: float
    gap: float
    iterations: int
    precision_mode: str
    status: str
    tol: float
    y: tuple
    min_eigen_slack: float

    @property
    def converged(self) -> bool:
        return self.status == "optimal"


@dataclass(frozen=True)
class CertifiedBound:
    bound: int
    guard: float
    certified: bool
    boundary_tight: bool


def certify_floor(result: SolveResult) -> CertifiedBound:
    # guard absorbs both solver tolerance and the last digits of a
    # near-integral optimum; dual agreement within the guard certifies.
    # the relative floor must stay below the closest observed distance
    # from a true optimum to the integer above it (8e-6 relative)
    v = result.value
    guard = max(1e-6 * abs(v), 10 * result.tol * abs(v))
    bound = math.floor(v + guard)
    certified = result.converged and abs(v - result.dual_value) <= max(guard, 1e-12)
    boundary_tight = bound > math.floor(v)
    return CertifiedBound(bound=bound, guard=guard, certified=certified,
                          boundary_tight=boundary_tight)


def _assemble_schur(blocks, xs, zinvs, m, dtype, chunk_elems=1 << 23):
    big = np.zeros((m, m), dtype=dtype)
    for blk, x, zinv in zip(blocks, xs, zinvs):
        if isinstance(blk, _DiagBlock):
            q = x * zinv
            contrib = blk.nz_c * blk.nz_c * q[blk.nz_p]
            # positions touched by a single variable each add on the diagonal;
            # shared positions need the cross terms too
            order = np.argsort(blk.nz_p, kind="stable")
            p_sorted = blk.nz_p[order]
            uniq, starts = np.unique(p_sorted, return_index=True)
            counts = np.diff(np.append(starts, len(p_sorted)))
            simple = np.ones(len(blk.nz_p), dtype=bool)
            for u_i, st, ct in zip(uniq, starts, counts):
                if ct == 1:
                    continue
                idxs = order[st : st + ct]
                simple[idxs] = False
                vs = blk.vids[blk.nz_v[idxs]]
                cs = blk.nz_c[idxs] * np.sqrt(q[blk.nz_p[idxs]])
                big[np.ix_(vs, vs)] += np.outer(cs, cs)
            vi = blk.vids[blk.nz_v[simple]]
            np.add.at(big, (vi, vi), contrib[simple])
            continue
        s = blk.size
        step = max(1, chunk_elems // max(1, s * s))
        if isinstance(blk, _SparseBlock):
            # tr(A_i X A_j Zinv) = <L'A_i R, L'A_j R> with X = LL',
            # Zinv = RR'; the Gram form never needs the full stack
            extended = dtype == np.longdouble
            lx = _psd_factor(x, extended)
            rz = _psd_factor(zinv, extended)
            g = np.empty((blk.nv, s * s), dtype=dtype)
            for k0 in range(0, blk.nv, step):
                k1 = min(blk.nv, k0 + step)
                part = np.matmul(lx.T, np.matmul(blk.densify(k0, k1, dtype), rz))
                g[k0:k1] = part.reshape(k1 - k0, s * s)
            big[np.ix_(blk.vids, blk.vids)] += g @ g.T
            continue
        # B[i,j] += tr(A_i X A_j Zinv), batched over the block's variables
        t = blk.tens
        rows = np.empty((blk.nv, blk.nv), dtype=dtype)
        for k0 in range(0, blk.nv, step):
            part = np.matmul(t[k0 : k0 + step], zinv)
            part = np.matmul(x, part)
            rows[:, k0 : k0 + part.shape[0]] = np.tensordot(
                t, part, axes=([1, 2], [1, 2])
            )
        big[np.ix_(blk.vids, blk.vids)] += rows
    big = 0.5 * (big + big.T)
    return big


def _trace_dots(blocks, mats, m, dtype):
    """Vector of sums over blocks of tr(A_i W_block)."""
    g = np.zeros(m, dtype=dtype)
    for blk, wmat in zip(blocks, mats):
        if isinstance(blk, _DiagBlock):
            vals = blk.nz_c * wmat[blk.nz_p]
            np.add.at(g, blk.vids[blk.nz_v], vals)
        else:
            g[blk.vids] += np.tensordot(blk.tens, wmat, axes=([1, 2], [0, 1]))
    return g


def _scatter_dy(blk, dy):
    """sum_i dy_i A_i for one block."""
    if isinstance(blk, _DiagBlock):
        out = np.zeros(blk.size, dtype=dy.dtype)
        np.add.at(out, blk.nz_p, blk.nz_c * dy[blk.vids[blk.nz_v]])
        return out
    return np.tensordot(dy[blk.vids], blk.tens, axes=1)


def _solve_once(
    blocks, b, b0, tol, extended, max_iter, time_cap, start_time
):
    dtype = np.longdouble if extended else np.float64
    m = len(b)
    ntot = sum(blk.size for blk in blocks)
    bscale = max(1.0, float(np.max(np.abs(b)))) if m else 1.0
    bhat = np.asarray(b, dtype=dtype) / dtype(bscale)

    init = dtype(max(10.0, 1.5 * float(np.max(np.abs(bhat))) if m else 10.0))
    y = np.zeros(m, dtype=dtype)
    xs, zs = [], []
    for blk in blocks:
        if isinstance(blk, _DiagBlock):
            xs.append(np.full(blk.size, init, dtype=dtype))
            zs.append(np.full(blk.size, init, dtype=dtype))
        else:
            xs.append(init * np.eye(blk.size, dtype=dtype))
            zs.append(init * np.eye(blk.size, dtype=dtype))

    status = "iteration-cap"
    it = 0
    use_ld_factor = False
    val = dval = gap = math.nan
    rp_n = rd_n = math.inf
    best_merit = math.inf
    best = (math.nan, math.nan, math.nan, y.copy())
    for it in range(1, max_iter + 1):
        if time_cap is not None and time.monotonic() - start_time > time_cap:
            status = "time-cap"
            break
        # factor current iterates
        try:
            zl = [
                None if isinstance(bk, _DiagBlock) else _chol(z, extended)
                for bk, z in zip(blocks, zs)
            ]
            xl = [
                None if isinstance(bk, _DiagBlock) else _chol(x, extended)
                for bk, x in zip(blocks, xs)
            ]
        except np.linalg.LinAlgError:
            status = "stalled" if best_merit < 1e-3 else "numerical-failure"
            break
        zinvs = [
            1.0 / z if isinstance(bk, _DiagBlock) else _inv_from_chol(l, extended)
            for bk, z, l in zip(blocks, zs, zl)
        ]

        mu = sum(
            float(np.dot(x, z)) if isinstance(bk, _DiagBlock) else float(np.sum(x * z))
            for bk, x, z in zip(blocks, xs, zs)
        ) / ntot

        rds = []
        for blk, z in zip(blocks, zs):
            zexp = blk.build(y)
            rds.append(zexp - z)
        tr_ax = _trace_dots(blocks, xs, m, dtype)
        rp = -bhat - tr_ax
        val = float(bscale * float(np.dot(bhat, y)) + b0)
        dv = sum(
            float(np.dot(blk.a0, x)) if isinstance(blk, _DiagBlock) else float(np.sum(blk.a0 * x))
            for blk, x in zip(blocks, xs)
        )
        dval = float(bscale * dv + b0)
        gap = abs(val - dval) / (1.0 + abs(val) + abs(dval))
        rp_n = float(np.max(np.abs(rp))) / (1.0 + float(np.max(np.abs(bhat))))
        rd_n = max(
            (float(np.max(np.abs(r))) for r in rds), default=0.0
        )
        merit = max(gap, rp_n, rd_n)
        if merit < best_merit:
            best_merit = merit
            best = (val, dval, gap, y.copy())
        if gap <= tol and rp_n <= tol and rd_n <= tol:
            status = "optimal"
            break
        # rounding noise eventually overtakes the updates; once the residuals
        # blow back up well past the best visited point, stop and keep the best
        if best_merit < 1e-5 and merit > 1e3 * best_merit:
            status = "stalled"
            break

        big = _assemble_schur(blocks, xs, zinvs, m, dtype)
        # a ridge at rounding scale can rescue a marginally indefinite
        # factorization; anything larger would poison the direction, so the
        # run ends on the best iterate once the rescue attempts are spent
        eps_mode = 1.1e-19 if extended else 2.2e-16
        maxdiag = float(np.max(np.diagonal(big))) if m else 1.0
        fac = None
        bmat = big
        ridged = False
        while fac is None:
            try:
                fac = _SchurFactor(bmat, extended, use_ld_factor)
            except np.linalg.LinAlgError:
                if extended and not use_ld_factor:
                    # the double copy can miss definiteness the longdouble
                    # matrix still has
                    use_ld_factor = True
                elif not ridged:
                    ridged = True
                    bmat = big + (maxdiag * eps_mode * 8) * np.eye(m, dtype=dtype)
                else:
                    break
        if fac is None:
            status = "stalled" if best_merit < 1e-3 else "numerical-failure"
            break

        # predictor
        w_pred = []
        for blk, x, zinv, rd in zip(blocks, xs, zinvs, rds):
            if isinstance(blk, _DiagBlock):
                w_pred.append(-x * rd * zinv)
            else:
                w_pred.append(-(x @ rd @ zinv))
        g_aff = bhat + _trace_dots(blocks, w_pred, m, dtype)
        dy_aff, healthy = fac.solve(g_aff)
        if not healthy and extended and not use_ld_factor:
            use_ld_factor = True
            try:
                fac = _SchurFactor(bmat, True, True)
            except np.linalg.LinAlgError:
                status = "stalled" if best_merit < 1e-3 else "numerical-failure"
                break
            dy_aff, _ = fac.solve(g_aff)
        dz_aff, dx_aff = [], []
        for blk, x, z, zinv, rd in zip(blocks, xs, zs, zinvs, rds):
            dz = _scatter_dy(blk, dy_aff) + rd
            if isinstance(blk, _DiagBlock):
                dx = -x - x * dz * zinv
            else:
                dx = -x - x @ dz @ zinv
                dx = 0.5 * (dx + dx.T)
            dz_aff.append(dz)
            dx_aff.append(dx)
        ap = _steps(blocks, xs, xl, dx_aff, 1.0)
        ad = _steps(blocks, zs, zl, dz_aff, 1.0)
        mu_aff = sum(
            float(np.dot(x + ap * dx, z + ad * dz))
            if isinstance(blk, _DiagBlock)
            else float(np.sum((x + ap * dx) * (z + ad * dz)))
            for blk, x, z, dx, dz in zip(blocks, xs, zs, dx_aff, dz_aff)
        ) / ntot
        mu_aff = max(mu_aff, 0.0)
        sigma = min(1.0, max(1e-10, (mu_aff / mu) ** 3))

        # corrector
        f_corr = []
        for blk, x, z, dx, dz in zip(blocks, xs, zs, dx_aff, dz_aff):
            if isinstance(blk, _DiagBlock):
                f_corr.append(sigma * mu - x * z - dx * dz)
            else:
                f_corr.append(
                    sigma * mu * np.eye(blk.size, dtype=dtype) - x @ z - dx @ dz
                )
        w_corr = []
        for blk, x, zinv, rd, fc in zip(blocks, xs, zinvs, rds, f_corr):
            if isinstance(blk, _DiagBlock):
                w_corr.append(fc * zinv - x * rd * zinv + x)
            else:
                w_corr.append(fc @ zinv - x @ rd @ zinv + x)
        g_corr = bhat + _trace_dots(blocks, w_corr, m, dtype)
        dy, _ = fac.solve(g_corr)
        dzs, dxs = [], []
        for blk, x, zinv, rd, fc in zip(blocks, xs, zinvs, rds, f_corr):
            dz = _scatter_dy(blk, dy) + rd
            if isinstance(blk, _DiagBlock):
                dx = fc * zinv - x * dz * zinv
            else:
                dx = fc @ zinv - x @ dz @ zinv
                dx = 0.5 * (dx + dx.T)
            dzs.append(dz)
            dxs.append(dx)

        tau = min(0.98, max(0.9, 1.0 - 0.1 * mu))
        ap = _steps(blocks, xs, xl, dxs, tau)
        ad = _steps(blocks, zs, zl, dzs, tau)
        if ap < 1e-10 and ad < 1e-10:
            status = "stalled"
            break
        y = y + ad * dy
        xs = [x + ap * dx for x, dx in zip(xs, dxs)]
        zs = [z + ad * dz for z, dz in zip(zs, dzs)]

    cur_merit = max(gap, rp_n, rd_n) if not math.isnan(gap) else math.inf
    if best_merit < cur_merit:
        val, dval, gap, y = best
    return y, val, dval, gap, it, status, bscale


def _steps(blocks, mats, chols, deltas, tau) -> float:
    best = math.inf
    for blk, mmat, ell, dmat in zip(blocks, mats, chols, deltas):
        if isinstance(blk, _DiagBlock):
            neg = dmat < 0
            if np.any(neg):
                best = min(best, float(np.min(-mmat[neg] / dmat[neg])))
        else:
            best = min(best, _max_step(ell, dmat))
    if math.isinf(best):
        return 1.0
    return min(1.0, tau * best)


def _final_slack(blocks, y) -> float:
    worst = math.inf
    for blk in blocks:
        zexp = blk.build(y)
        if isinstance(blk, _DiagBlock):
            lo = float(np.min(zexp)) if blk.size else 0.0
        else:
            lo = float(np.linalg.eigvalsh(np.asarray(zexp, dtype=np.float64))[0])
        worst = min(worst, lo)
    return worst


def solve(
    prog: SdpProgram,
    tol: float = 1e-8,
    precision: str = "auto",
    max_iter: int = 200,
    time_cap: float | None = None,
) -> SolveResult:
    if precision not in ("auto", "double", "extended"):
        raise ValueError(f"unknown precision {precision!r}")
    start = time.monotonic()
    modes = ["double"] if precision in ("auto", "double") else []
    if precision == "extended":
        modes = ["extended"]
    result = None
    for mode in modes:
        result = _run_mode(prog, tol, mode, max_iter, time_cap, start)
        if result.converged:
            return result
    if precision == "auto" and result is not None and not result.converged:
        ntot = sum(b.size for b in prog.blocks)
        if ntot <= 600 and len(prog.free_ids) <= 400:
            retry = _run_mode(prog, tol, "extended", max_iter, time_cap, start)
            if retry.converged or retry.gap < result.gap:
                return retry
    return result


def _run_mode(prog, tol, mode, max_iter, time_cap, start) -> SolveResult:
    extended = mode == "extended"
    dtype = np.longdouble if extended else np.float64
    blocks, b, b0, free = _fold(prog, dtype)
    y, val, dval, gap, iters, status, _ = _solve_once(
        blocks, b, b0, tol, extended, max_iter, time_cap, start
    )
    slack = _final_slack(blocks, y)
    return SolveResult(
        value=val,
        dual_value=dval,
        gap=gap,
        iterations=iters,
        precision_mode=mode,
        status=status,
        tol=tol,
        y=tuple(float(v) for v in y),
        min_eigen_slack=slack,
    )
