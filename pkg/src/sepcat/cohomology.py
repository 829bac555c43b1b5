"""Hochschild-Mitchell cohomology via the (non-normalized) bar cochain complex.

Degree-n cochains assign to every object tuple (x0, ..., xn) a linear map
hom(x1, x0) (x) ... (x) hom(xn, x(n-1)) -> M[x0][xn]; degree 0 is the
product of the diagonal components M[x][x]. The differential is

  (d phi)(f1, ..., f(n+1)) = f1 . phi(f2, ..., f(n+1))
      + sum_i (-1)^i phi(..., fi . f(i+1), ...)
      + (-1)^(n+1) phi(f1, ..., fn) . f(n+1).

Basis order is fixed: object tuples lexicographically in object order,
input indices row-major, coefficient index fastest; this makes every
matrix in this module reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Optional

from .exactalg import Matrix
from .errors import BudgetExceededError, InternalCheckError
from .lincat import FinLinCat
from .cmod import Bimodule, BimoduleMap, ShortExactSeq, tensor_square, kernel_of, validate_module

__all__ = [
    "DEFAULT_BUDGET",
    "CochainComplex",
    "CohomologyResult",
    "ObstructionResult",
    "LesReport",
    "build_hm_complex",
    "cohomology_dims",
    "cocycle_representatives",
    "obstruction_cocycle",
    "les_analysis",
]

DEFAULT_BUDGET = 20000


@dataclass
class _Slot:
    objs: tuple[str, ...]
    hom_dims: tuple[int, ...]
    mdim: int
    offset: int

    def flat(self, combo: tuple[int, ...], t: int) -> int:
        idx = 0
        for i, d in zip(combo, self.hom_dims):
            idx = idx * d + i
        return self.offset + idx * self.mdim + t


@dataclass
class _DegreeSpace:
    dim: int
    slots: list[_Slot]
    by_objs: dict[tuple[str, ...], _Slot]


class CochainComplex:
    """Bar cochain spaces C^0 .. C^(max_degree+1) and differentials
    d^0 .. d^max_degree, with d . d = 0 checked at build time."""

    def __init__(self, cat: FinLinCat, coefficients: Bimodule, max_degree: int, spaces, diffs):
        self.cat = cat
        self.coefficients = coefficients
        self.max_degree = max_degree
        self.spaces: list[_DegreeSpace] = spaces
        self.diffs: list[Matrix] = diffs

    def space(self, n: int) -> _DegreeSpace:
        return self.spaces[n]

    def dim(self, n: int) -> int:
        return self.spaces[n].dim

    def differential(self, n: int) -> Matrix:
        return self.diffs[n]


def _degree_space(c: FinLinCat, m: Bimodule, n: int, budget: int) -> _DegreeSpace:
    slots: list[_Slot] = []
    by_objs = {}
    offset = 0
    for objs in product(c.objects, repeat=n + 1):
        hom_dims = tuple(c.dim_hom(objs[i], objs[i - 1]) for i in range(1, n + 1))
        size = m.dims[(objs[0], objs[n])]
        for d in hom_dims:
            size *= d
        if size == 0:
            continue
        slot = _Slot(objs, hom_dims, m.dims[(objs[0], objs[n])], offset)
        slots.append(slot)
        by_objs[objs] = slot
        offset += size
        if offset > budget:
            raise BudgetExceededError(
                f"cochain dimension at degree {n} exceeds the budget of {budget} columns"
            )
    return _DegreeSpace(offset, slots, by_objs)


def _build_differential(c: FinLinCat, m: Bimodule, src: _DegreeSpace, tgt: _DegreeSpace, n: int) -> Matrix:
    fld = c.field
    nrows, ncols = tgt.dim, src.dim
    data = [fld.zero] * (nrows * ncols)
    add = fld.add
    sub = fld.sub
    odd_last = (n + 1) % 2 == 1
    for slot in src.slots:
        objs = slot.objs
        x0, xn = objs[0], objs[n]
        input_ranges = [range(d) for d in slot.hom_dims]
        hom_bases = [c.hom(objs[i], objs[i - 1]) for i in range(1, n + 1)]
        for combo in product(*input_ranges):
            col_base = slot.flat(combo, 0)
            for t in range(slot.mdim):
                col = col_base + t
                # term 1: f1 acts on the left of the value
                for w in c.objects:
                    tslot = tgt.by_objs.get((w,) + objs)
                    if tslot is None:
                        continue
                    for b_idx, b in enumerate(c.hom(x0, w)):
                        act = m.left[(b, xn)]
                        for s in range(act.rows):
                            v = act.entries[s * act.cols + t]
                            if v:
                                row = tslot.flat((b_idx,) + combo, s)
                                data[row * ncols + col] = add(data[row * ncols + col], v)
                # terms 2..n+? : merge fi . f(i+1) against the stored input a_i
                for i in range(1, n + 1):
                    negative = i % 2 == 1
                    a_basis = hom_bases[i - 1]
                    a_label = a_basis[combo[i - 1]]
                    left_obj = objs[i - 1]
                    right_obj = objs[i]
                    for w in c.objects:
                        tslot = tgt.by_objs.get(objs[:i] + (w,) + objs[i:])
                        if tslot is None:
                            continue
                        for b_idx, b in enumerate(c.hom(w, left_obj)):
                            for b2_idx, b2 in enumerate(c.hom(right_obj, w)):
                                gamma = c.comp_vector(b, b2)[combo[i - 1]]
                                if not gamma:
                                    continue
                                new_combo = combo[: i - 1] + (b_idx, b2_idx) + combo[i:]
                                row = tslot.flat(new_combo, t)
                                if negative:
                                    data[row * ncols + col] = sub(data[row * ncols + col], gamma)
                                else:
                                    data[row * ncols + col] = add(data[row * ncols + col], gamma)
                # last term: f(n+1) acts on the right of the value
                for w in c.objects:
                    tslot = tgt.by_objs.get(objs + (w,))
                    if tslot is None:
                        continue
                    for b_idx, b in enumerate(c.hom(w, xn)):
                        act = m.right[(b, x0)]
                        for s in range(act.rows):
                            v = act.entries[s * act.cols + t]
                            if v:
                                row = tslot.flat(combo + (b_idx,), s)
                                if odd_last:
                                    data[row * ncols + col] = sub(data[row * ncols + col], v)
                                else:
                                    data[row * ncols + col] = add(data[row * ncols + col], v)
    return Matrix(fld, nrows, ncols, data)


def build_hm_complex(
    c: FinLinCat, m: Bimodule, max_degree: int, budget: int = DEFAULT_BUDGET
) -> CochainComplex:
    """Cochain spaces to degree max_degree + 1 and differentials to degree
    max_degree; raises BudgetExceededError when a space outgrows budget."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    spaces = [_degree_space(c, m, n, budget) for n in range(max_degree + 2)]
    diffs = [_build_differential(c, m, spaces[n], spaces[n + 1], n) for n in range(max_degree + 1)]
    for n in range(max_degree):
        if not (diffs[n + 1] @ diffs[n]).is_zero():
            raise InternalCheckError(f"d^{n + 1} . d^{n} is nonzero; differential construction is wrong")
    return CochainComplex(c, m, max_degree, spaces, diffs)


@dataclass
class DegreeData:
    n: int
    dim_cochain: int
    rank_d: int
    dim_h: int


@dataclass
class CohomologyResult:
    degrees: list[DegreeData]

    def dim_h(self, n: int) -> int:
        return self.degrees[n].dim_h


def cohomology_dims(complex: CochainComplex) -> CohomologyResult:
    """dim H^n = dim ker d^n - rank d^(n-1) for n up to max_degree."""
    out = []
    prev_rank = 0
    for n in range(complex.max_degree + 1):
        d = complex.diffs[n]
        rank = d.rank()
        dim_ker = complex.dim(n) - rank
        out.append(DegreeData(n, complex.dim(n), rank, dim_ker - prev_rank))
        prev_rank = rank
    return CohomologyResult(out)


def cocycle_representatives(complex: CochainComplex, n: int) -> Matrix:
    """Columns representing a basis of H^n: kernel columns completing a
    basis of the coboundary space."""
    ker = complex.diffs[n].kernel_basis()
    if n == 0:
        return ker
    image = complex.diffs[n - 1]
    stacked = image.hstack(ker)
    pivots = stacked.rref().pivot_cols
    chosen = [pc - image.cols for pc in pivots if pc >= image.cols]
    out = Matrix.zeros(complex.cat.field, ker.rows, len(chosen))
    for j, src in enumerate(chosen):
        for i in range(ker.rows):
            out.entries[i * len(chosen) + j] = ker.entries[i * ker.cols + src]
    return out


@dataclass
class ObstructionResult:
    cocycle: Matrix
    is_coboundary: bool
    kernel: Bimodule
    complex: CochainComplex


def obstruction_cocycle(c: FinLinCat, budget: int = DEFAULT_BUDGET) -> ObstructionResult:
    """The splitting obstruction of comp: C (x) C -> C.

    Using the linear (not bimodule) section u -> u (x) 1 of comp, the
    1-cochain f -> f . sigma - sigma . f takes values in ker comp and is a
    cocycle; it is a coboundary exactly when the category is separable.
    """
    cxc, comp_map = tensor_square(c)
    ker, incl = kernel_of(comp_map)
    complex = build_hm_complex(c, ker, 1, budget)
    fld = c.field
    # sigma_x = section(1_x) in the (x, x) component of C (x) C
    from .cmod import tensor_square_basis

    sigma = {}
    for x in c.objects:
        basis = tensor_square_basis(c, x, x)
        index = {b: i for i, b in enumerate(basis)}
        vec = [fld.zero] * len(basis)
        labels = c.hom(x, x)
        ident = c.identity[x]
        for s, coeff_u in enumerate(ident):
            if not coeff_u:
                continue
            for t, coeff_v in enumerate(ident):
                if coeff_v:
                    i = index[(x, labels[s], labels[t])]
                    vec[i] = fld.add(vec[i], fld.mul(coeff_u, coeff_v))
        sigma[x] = Matrix(fld, len(basis), 1, vec)
    cocycle = Matrix.zeros(fld, complex.dim(1), 1)
    for slot in complex.space(1).slots:
        x0, x1 = slot.objs
        for b_idx, b in enumerate(c.hom(x1, x0)):
            value = cxc.left[(b, x1)] @ sigma[x1] - cxc.right[(b, x0)] @ sigma[x0]
            if not (comp_map.blocks[(x0, x1)] @ value).is_zero():
                raise InternalCheckError("obstruction value escapes ker comp")
            coords = incl.blocks[(x0, x1)].solve(value)
            if coords is None:
                raise InternalCheckError("obstruction value has no kernel coordinates")
            for s in range(coords.rows):
                v = coords.entries[s]
                if v:
                    cocycle.entries[slot.flat((b_idx,), s)] = v
    if not (complex.diffs[1] @ cocycle).is_zero():
        raise InternalCheckError("obstruction cochain is not a cocycle")
    is_coboundary = complex.diffs[0].solve(cocycle) is not None
    return ObstructionResult(cocycle, is_coboundary, ker, complex)


@dataclass
class PositionRecord:
    position: str
    incoming_rank: int
    kernel_dim: int
    exact: bool


@dataclass
class LesDegreeDims:
    n: int
    dim_h_m: int
    dim_h_n: int
    dim_h_p: int


@dataclass
class LesReport:
    degrees: list[LesDegreeDims]
    connecting_ranks: list[int]
    positions: list[PositionRecord]

    @property
    def all_exact(self) -> bool:
        return all(rec.exact for rec in self.positions)


def _cochain_map(src: CochainComplex, tgt: CochainComplex, blocks: dict, n: int) -> Matrix:
    fld = src.cat.field
    sspace, tspace = src.space(n), tgt.space(n)
    out = Matrix.zeros(fld, tspace.dim, sspace.dim)
    for slot in sspace.slots:
        tslot = tspace.by_objs.get(slot.objs)
        if tslot is None:
            continue
        blk = blocks[(slot.objs[0], slot.objs[n])]
        for combo in product(*[range(d) for d in slot.hom_dims]):
            for t in range(slot.mdim):
                col = slot.flat(combo, t)
                for s in range(blk.rows):
                    v = blk.entries[s * blk.cols + t]
                    if v:
                        out.entries[tslot.flat(combo, s) * sspace.dim + col] = v
    return out


def les_analysis(c: FinLinCat, ses: ShortExactSeq, max_degree: int, budget: int = DEFAULT_BUDGET) -> LesReport:
    """Verify the long exact cohomology sequence of a short exact sequence.

    Connecting maps are computed by the zig-zag construction with the
    deterministic solver (lift through q, apply d, pull back through i);
    exactness at each position is decided by rank counting.
    """
    report = validate_module(c, ses)
    if not report.ok:
        raise ValueError("input sequence is not short exact: " + "; ".join(report.violations[:3]))
    cm = build_hm_complex(c, ses.m, max_degree, budget)
    cn = build_hm_complex(c, ses.n, max_degree, budget)
    cp = build_hm_complex(c, ses.p, max_degree, budget)
    imaps = [_cochain_map(cm, cn, ses.i.blocks, n) for n in range(max_degree + 2)]
    qmaps = [_cochain_map(cn, cp, ses.q.blocks, n) for n in range(max_degree + 2)]
    kers = {
        "m": [cm.diffs[n].kernel_basis() for n in range(max_degree + 1)],
        "n": [cn.diffs[n].kernel_basis() for n in range(max_degree + 1)],
        "p": [cp.diffs[n].kernel_basis() for n in range(max_degree + 1)],
    }
    hdims = {}
    for key, cx in (("m", cm), ("n", cn), ("p", cp)):
        dims = []
        prev_rank = 0
        for n in range(max_degree + 1):
            rank = cx.diffs[n].rank()
            dims.append(kers[key][n].cols - prev_rank)
            prev_rank = rank
        hdims[key] = dims

    def rank_mod_image(cols: Matrix, image: Optional[Matrix]) -> int:
        if cols.cols == 0:
            return 0
        if image is None:
            return cols.rank()
        return image.hstack(cols).rank() - image.rank()

    def zigzag(n: int, z: Matrix) -> Matrix:
        w = qmaps[n].solve_many(z)
        if w is None:
            raise InternalCheckError("cochain-level surjectivity of q failed")
        v = cn.diffs[n] @ w
        u = imaps[n + 1].solve_many(v)
        if u is None:
            raise InternalCheckError("connecting lift escapes the image of i")
        return u

    connecting_cols = [zigzag(n, kers["p"][n]) for n in range(max_degree + 1)]
    d_of = {"m": cm.diffs, "n": cn.diffs, "p": cp.diffs}

    def image_matrix(key: str, n: int) -> Optional[Matrix]:
        return None if n == 0 else d_of[key][n - 1]

    # induced maps on cohomology, by rank over the coboundary space
    rank_i = [rank_mod_image(imaps[n] @ kers["m"][n], image_matrix("n", n)) for n in range(max_degree + 1)]
    rank_q = [rank_mod_image(qmaps[n] @ kers["n"][n], image_matrix("p", n)) for n in range(max_degree + 1)]
    rank_delta = [rank_mod_image(connecting_cols[n], d_of["m"][n]) for n in range(max_degree + 1)]

    positions = []
    degrees = []
    for n in range(max_degree + 1):
        degrees.append(LesDegreeDims(n, hdims["m"][n], hdims["n"][n], hdims["p"][n]))
        # H^n(M): incoming delta^(n-1), outgoing i
        incoming = 0 if n == 0 else rank_delta[n - 1]
        kernel_dim = hdims["m"][n] - rank_i[n]
        composite_zero = True
        if n > 0:
            composite_zero = (
                rank_mod_image(imaps[n] @ connecting_cols[n - 1], image_matrix("n", n)) == 0
            )
        positions.append(
            PositionRecord(f"H{n}(M)", incoming, kernel_dim, composite_zero and incoming == kernel_dim)
        )
        # H^n(N): incoming i, outgoing q; q.i = 0 on the nose
        kernel_dim = hdims["n"][n] - rank_q[n]
        positions.append(PositionRecord(f"H{n}(N)", rank_i[n], kernel_dim, rank_i[n] == kernel_dim))
        # H^n(P): incoming q, outgoing delta
        kernel_dim = hdims["p"][n] - rank_delta[n]
        composite_zero = rank_mod_image(zigzag(n, qmaps[n] @ kers["n"][n]), d_of["m"][n]) == 0
        positions.append(
            PositionRecord(f"H{n}(P)", rank_q[n], kernel_dim, composite_zero and rank_q[n] == kernel_dim)
        )
    return LesReport(degrees, rank_delta, positions)
