"""Separability of a finite K-linear category, decided by linear feasibility.

A separability family assigns to every ordered object pair (x, y) an
element a[x][y] of hom(y, x) (x) hom(x, y), stored as its coefficient
matrix A[x][y] of shape dim hom(y, x) by dim hom(x, y). The defining
conditions are linear:

  unit:          sum over y of comp(a[x][y]) equals the identity of x;
  equivariance:  f . a[x][y] = a[z][y] . f for every basis f in hom(x, z),

so existence is exactly the feasibility of one linear system, and a
certificate is verified by evaluating both conditions entrywise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .exactalg import Field, Matrix
from .lincat import FinLinCat, FiniteCatPresentation, classify_presentation, linearize
from .cmod import LeftModule, post_mul_matrix, pre_mul_matrix

__all__ = [
    "SeparabilityFamily",
    "FamilyCheck",
    "MaschkeVerdict",
    "DeltaVerdict",
    "SectionResult",
    "ZelinskyReport",
    "separability_system",
    "solve_separability",
    "verify_family",
    "rank_factor",
    "reduce_family",
    "maschke_predict",
    "delta_predict",
    "module_section",
    "zelinsky_report",
]


@dataclass
class SeparabilityFamily:
    """Coefficient matrices A[x][y]; absent pairs are zero. After
    reduce_family, terms[(x, y)] lists rank-many (u, v) coefficient-vector
    pairs with the v's linearly independent."""

    blocks: dict[tuple[str, str], Matrix]
    terms: Optional[dict[tuple[str, str], list[tuple[tuple, tuple]]]] = None

    def block(self, c: FinLinCat, x: str, y: str) -> Matrix:
        blk = self.blocks.get((x, y))
        if blk is None:
            return Matrix.zeros(c.field, c.dim_hom(y, x), c.dim_hom(x, y))
        return blk

    def support(self, c: FinLinCat, x: str) -> list[str]:
        return [y for y in c.objects if not self.block(c, x, y).is_zero()]


@dataclass
class FamilyCheck:
    ok: bool
    unit_residuals: dict[str, tuple] = dc_field(default_factory=dict)
    equivariance_residuals: dict[tuple[str, str], Matrix] = dc_field(default_factory=dict)

    @property
    def unit_witnesses(self) -> list[str]:
        return sorted(self.unit_residuals)

    @property
    def equivariance_witnesses(self) -> list[tuple[str, str]]:
        return sorted(self.equivariance_residuals)


def _block_layout(c: FinLinCat) -> tuple[list[tuple[str, str]], dict[tuple[str, str], int], int]:
    pairs = [(x, y) for x in c.objects for y in c.objects]
    offsets = {}
    total = 0
    for (x, y) in pairs:
        offsets[(x, y)] = total
        total += c.dim_hom(y, x) * c.dim_hom(x, y)
    return pairs, offsets, total


def separability_system(c: FinLinCat) -> tuple[Matrix, Matrix, dict[tuple[str, str], int]]:
    """The linear system over the unknown entries of all A[x][y].

    Returns (coefficient matrix, right-hand side, block offsets); the
    unknown for entry (i, t) of A[x][y] sits at offset[(x,y)] + i*n + t
    with n = dim hom(x, y).
    """
    fld = c.field
    pairs, offsets, total = _block_layout(c)
    rows: list[list] = []
    rhs: list = []
    # unit condition, one scalar equation per basis vector of hom(x, x)
    for x in c.objects:
        dim_xx = c.dim_hom(x, x)
        block_rows = [[fld.zero] * total for _ in range(dim_xx)]
        for y in c.objects:
            us = c.hom(y, x)
            vs = c.hom(x, y)
            base = offsets[(x, y)]
            n = len(vs)
            for i, u in enumerate(us):
                for j, v in enumerate(vs):
                    vec = c.comp_vector(u, v)
                    for t, coeff in enumerate(vec):
                        if coeff:
                            cell = block_rows[t]
                            cell[base + i * n + j] = fld.add(cell[base + i * n + j], coeff)
        ident = c.identity[x]
        for t in range(dim_xx):
            rows.append(block_rows[t])
            rhs.append(ident[t])
    # equivariance, one scalar equation per entry of the (f, y) identity
    for f, (x, z, _) in c.label_info.items():
        for y in c.objects:
            cf = post_mul_matrix(c, f, y)  # hom(y,x) -> hom(y,z)
            rf = pre_mul_matrix(c, f, y)  # hom(z,y) -> hom(x,y)
            m_xy = c.dim_hom(y, x)
            n_xy = c.dim_hom(x, y)
            n_zy = c.dim_hom(z, y)
            base_x = offsets[(x, y)]
            base_z = offsets[(z, y)]
            for s in range(c.dim_hom(y, z)):
                for t in range(n_xy):
                    row = [fld.zero] * total
                    for i in range(m_xy):
                        coeff = cf.entries[s * m_xy + i]
                        if coeff:
                            idx = base_x + i * n_xy + t
                            row[idx] = fld.add(row[idx], coeff)
                    for l in range(n_zy):
                        coeff = rf.entries[t * n_zy + l]
                        if coeff:
                            idx = base_z + s * n_zy + l
                            row[idx] = fld.sub(row[idx], coeff)
                    if any(row):
                        rows.append(row)
                        rhs.append(fld.zero)
    mat = Matrix(fld, len(rows), total, [e for row in rows for e in row])
    return mat, Matrix.column(fld, rhs), offsets


def family_from_vector(c: FinLinCat, vec: list, offsets: dict[tuple[str, str], int]) -> SeparabilityFamily:
    blocks = {}
    for (x, y), base in offsets.items():
        m, n = c.dim_hom(y, x), c.dim_hom(x, y)
        blk = Matrix(c.field, m, n, vec[base : base + m * n])
        if not blk.is_zero():
            blocks[(x, y)] = blk
    return SeparabilityFamily(blocks)


def solve_separability(c: FinLinCat) -> Optional[SeparabilityFamily]:
    """One separability family, or None exactly when the category is not
    separable. Free variables are zeroed, so the output is reproducible."""
    mat, rhs, offsets = separability_system(c)
    sol = mat.solve(rhs)
    if sol is None:
        return None
    return family_from_vector(c, sol.entries, offsets)


def verify_family(c: FinLinCat, fam: SeparabilityFamily) -> FamilyCheck:
    """Evaluate the unit and equivariance conditions; exact zero residuals
    are required. Raises ValueError on block shape mismatch."""
    fld = c.field
    for (x, y), blk in fam.blocks.items():
        if (blk.rows, blk.cols) != (c.dim_hom(y, x), c.dim_hom(x, y)):
            raise ValueError(f"block ({x},{y}) has shape {blk.rows}x{blk.cols}, expected {c.dim_hom(y, x)}x{c.dim_hom(x, y)}")
    check = FamilyCheck(ok=True)
    for x in c.objects:
        total = [fld.zero] * c.dim_hom(x, x)
        for y in c.objects:
            blk = fam.blocks.get((x, y))
            if blk is None:
                continue
            us = c.hom(y, x)
            vs = c.hom(x, y)
            for i, u in enumerate(us):
                for j, v in enumerate(vs):
                    coeff = blk.entries[i * len(vs) + j]
                    if not coeff:
                        continue
                    for t, w in enumerate(c.comp_vector(u, v)):
                        if w:
                            total[t] = fld.add(total[t], fld.mul(coeff, w))
        residual = tuple(fld.sub(a, b) for a, b in zip(total, c.identity[x]))
        if any(residual):
            check.unit_residuals[x] = residual
    for f, (x, z, _) in c.label_info.items():
        for y in c.objects:
            lhs = post_mul_matrix(c, f, y) @ fam.block(c, x, y)
            rhs = fam.block(c, z, y) @ pre_mul_matrix(c, f, y).transpose()
            residual = lhs - rhs
            if not residual.is_zero():
                check.equivariance_residuals[(f, y)] = residual
    check.ok = not check.unit_residuals and not check.equivariance_residuals
    return check


def rank_factor(a: Matrix) -> list[tuple[tuple, tuple]]:
    """Minimal decomposition of a as a sum of rank-one terms col (x) row.

    Uses the CR factorization a = a[:, pivots] @ rref(a): the returned row
    vectors are the nonzero rref rows, hence linearly independent."""
    res = a.rref()
    terms = []
    for r, pc in enumerate(res.pivot_cols):
        col = tuple(a.entries[i * a.cols + pc] for i in range(a.rows))
        row = tuple(res.reduced.entries[r * a.cols + j] for j in range(a.cols))
        terms.append((col, row))
    return terms


def reduce_family(c: FinLinCat, fam: SeparabilityFamily) -> SeparabilityFamily:
    """Decompose each block into rank-many terms u (x) v with the v's
    linearly independent; the recomposition equals the block entrywise."""
    check = verify_family(c, fam)
    if not check.ok:
        raise ValueError("family does not verify; refusing to reduce")
    terms = {}
    for (x, y), blk in fam.blocks.items():
        if blk.is_zero():
            continue
        decomposition = rank_factor(blk)
        recomposed = Matrix.zeros(c.field, blk.rows, blk.cols)
        for (u, v) in decomposition:
            recomposed = recomposed + Matrix(c.field, blk.rows, 1, list(u)) @ Matrix(c.field, 1, blk.cols, list(v))
        if recomposed != blk:
            raise AssertionError("rank factorization failed to recompose")
        terms[(x, y)] = decomposition
    return SeparabilityFamily(dict(fam.blocks), terms)


@dataclass
class MaschkeVerdict:
    separable: bool
    witness: Optional[tuple[str, str, int]] = None
    family: Optional[SeparabilityFamily] = None


def _connected_components(p: FiniteCatPresentation) -> list[list[str]]:
    remaining = list(p.objects)
    comps = []
    while remaining:
        seed = remaining[0]
        comp = {seed}
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            for other in p.objects:
                if other not in comp and (p.hom_set(cur, other) or p.hom_set(other, cur)):
                    comp.add(other)
                    frontier.append(other)
        comp_sorted = [o for o in p.objects if o in comp]
        comps.append(comp_sorted)
        remaining = [o for o in remaining if o not in comp]
    return comps


def maschke_predict(p: FiniteCatPresentation, k: Field) -> MaschkeVerdict:
    """Groupoid criterion: separable iff every nonempty hom-set has
    cardinality invertible in k.

    The emitted certificate averages g (x) g^{-1} over hom(y0, x) for one
    reference object y0 per connected component; restricting the support
    this way is what makes the unit condition sum to exactly 1_x.
    """
    if not classify_presentation(p).is_groupoid:
        raise ValueError("presentation is not a groupoid")
    for x in p.objects:
        for y in p.objects:
            n = len(p.hom_set(x, y))
            if n and not k.of(n):
                return MaschkeVerdict(separable=False, witness=(x, y, n))
    c = linearize(p, k)
    blocks = {}
    for comp in _connected_components(p):
        y0 = comp[0]
        for x in comp:
            gs = c.hom(y0, x)
            hs = c.hom(x, y0)
            inv_weight = k.inv(k.of(len(hs)))
            blk = Matrix.zeros(k, len(gs), len(hs))
            for i, g in enumerate(gs):
                ginv = p.find_inverse(g)
                j = hs.index(ginv)
                blk.entries[i * len(hs) + j] = inv_weight
            blocks[(x, y0)] = blk
    return MaschkeVerdict(separable=True, family=SeparabilityFamily(blocks))


@dataclass
class DeltaVerdict:
    separable: bool
    family: Optional[SeparabilityFamily] = None


def delta_predict(p: FiniteCatPresentation, k: Field = Field()) -> DeltaVerdict:
    """Delta-category criterion: separable iff the category is discrete;
    the discrete certificate is a[x][x] = 1_x (x) 1_x."""
    flags = classify_presentation(p)
    if not flags.is_delta:
        raise ValueError("presentation is not a delta category")
    if not flags.is_discrete:
        return DeltaVerdict(separable=False)
    blocks = {}
    for x in p.objects:
        blocks[(x, x)] = Matrix.from_rows(k, [[1]])
    return DeltaVerdict(separable=True, family=SeparabilityFamily(blocks))


@dataclass
class SectionResult:
    psi: dict[tuple[str, str], Matrix]
    section_ok: bool
    linear_ok: bool
    failures: list[str] = dc_field(default_factory=list)


def module_section(c: FinLinCat, fam: SeparabilityFamily, m: LeftModule) -> SectionResult:
    """The splitting section psi of the evaluation map (+) hom(y,x) (x) M[y] -> M[x].

    psi_x^y sends m to the sum over terms of u (x) (v acting on m). The
    result records whether psi is a section (evaluation . psi = identity)
    and whether it commutes with the action of every basis morphism.
    """
    if fam.terms is None:
        raise ValueError("family must be reduced first (call reduce_family)")
    fld = c.field
    psi: dict[tuple[str, str], Matrix] = {}
    for x in c.objects:
        for y in c.objects:
            rows = c.dim_hom(y, x) * m.dims[y]
            out = Matrix.zeros(fld, rows, m.dims[x])
            for (u_vec, v_vec) in fam.terms.get((x, y), []):
                act = Matrix.zeros(fld, m.dims[y], m.dims[x])
                for t, coeff in enumerate(v_vec):
                    if coeff:
                        act = act + m.action[c.hom(x, y)[t]].scale(coeff)
                out = out + Matrix(fld, len(u_vec), 1, list(u_vec)).kron(act)
            psi[(x, y)] = out
    failures: list[str] = []
    section_ok = True
    for x in c.objects:
        total = Matrix.zeros(fld, m.dims[x], m.dims[x])
        for y in c.objects:
            labels = c.hom(y, x)
            if not labels or not m.dims[y]:
                continue
            # evaluation block: columns (a, b) -> action(u_a) applied to e_b
            ev = m.action[labels[0]]
            for lab in labels[1:]:
                ev = ev.hstack(m.action[lab])
            total = total + ev @ psi[(x, y)]
        if total != Matrix.identity(fld, m.dims[x]):
            section_ok = False
            failures.append(f"evaluation . psi is not the identity at object {x}")
    linear_ok = True
    for f, (z, x, _) in c.label_info.items():
        for y in c.objects:
            lhs = psi[(x, y)] @ m.action[f]
            rhs = post_mul_matrix(c, f, y).kron(Matrix.identity(fld, m.dims[y])) @ psi[(z, y)]
            if lhs != rhs:
                linear_ok = False
                failures.append(f"psi does not commute with {f} at y={y}")
    return SectionResult(psi=psi, section_ok=section_ok, linear_ok=linear_ok, failures=failures)


@dataclass
class PairEmbedding:
    x: str
    z: str
    hom_dim: int
    support: list[str]
    v_dims: list[tuple[str, int, int]]  # (y, dim V[y,x], dim V[y,z])
    bound: int
    injective: bool
    note: str = ""


@dataclass
class ZelinskyReport:
    pairs: list[PairEmbedding]

    @property
    def all_injective(self) -> bool:
        return all(rec.injective for rec in self.pairs)


def zelinsky_report(c: FinLinCat, fam: SeparabilityFamily) -> ZelinskyReport:
    """Locally-finite embedding check: left composition embeds hom(x, z) into
    the direct sum over the support of maps V[y,x] -> V[y,z], where V[y,x]
    is spanned by the left tensor factors of a[x][y]."""
    if fam.terms is None:
        raise ValueError("family must be reduced first (call reduce_family)")
    fld = c.field
    vbasis: dict[tuple[str, str], Matrix] = {}
    for x in c.objects:
        for y in c.objects:
            terms = fam.terms.get((x, y), [])
            if not terms:
                vbasis[(y, x)] = Matrix.zeros(fld, c.dim_hom(y, x), 0)
                continue
            f_mat = Matrix(fld, c.dim_hom(y, x), len(terms), [
                terms[j][0][i] for i in range(c.dim_hom(y, x)) for j in range(len(terms))
            ])
            pivots = f_mat.rref().pivot_cols
            cols = Matrix.zeros(fld, f_mat.rows, len(pivots))
            for k_new, pc in enumerate(pivots):
                for i in range(f_mat.rows):
                    cols.entries[i * len(pivots) + k_new] = f_mat.entries[i * f_mat.cols + pc]
            vbasis[(y, x)] = cols
    records = []
    for x in c.objects:
        support = fam.support(c, x)
        for z in c.objects:
            hom_dim = c.dim_hom(x, z)
            v_dims = [(y, vbasis[(y, x)].cols, vbasis[(y, z)].cols) for y in support]
            bound = sum(a * b for (_, a, b) in v_dims)
            note = ""
            if hom_dim == 0:
                records.append(PairEmbedding(x, z, 0, support, v_dims, bound, True))
                continue
            columns: list[list] = [[] for _ in range(hom_dim)]
            ok = True
            for y in support:
                vx = vbasis[(y, x)]
                vz = vbasis[(y, z)]
                for t, f in enumerate(c.hom(x, z)):
                    post = post_mul_matrix(c, f, y)
                    images = post @ vx  # columns: f . (basis of V[y,x]) in hom(y,z)
                    coords = vz.solve_many(images)
                    if coords is None:
                        ok = False
                        note = f"f.V[{y},{x}] is not contained in V[{y},{z}]"
                        coords = Matrix.zeros(fld, vz.cols, vx.cols)
                    columns[t].extend(coords.entries)
            if not ok:
                records.append(PairEmbedding(x, z, hom_dim, support, v_dims, bound, False, note))
                continue
            nrows = len(columns[0]) if columns else 0
            phi = Matrix(fld, nrows, hom_dim, [
                columns[t][r] for r in range(nrows) for t in range(hom_dim)
            ])
            records.append(
                PairEmbedding(x, z, hom_dim, support, v_dims, bound, phi.rank() == hom_dim)
            )
    return ZelinskyReport(records)
