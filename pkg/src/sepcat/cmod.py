"""Left modules and bimodules over a finite K-linear category.

Conventions (fixed package-wide): a left module is covariant, so a basis
morphism f in hom(x, y) acts M[x] -> M[y]. A bimodule M has components
M[x][y]; f in hom(x, x') acts on the left M[x][y] -> M[x'][y], and
g in hom(y', y) acts on the right M[x][y] -> M[x][y']. The canonical
bimodule is the category itself with component hom(y, x) at (x, y).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Union

from .exactalg import Field, Matrix
from .lincat import FinLinCat, ValidationReport

__all__ = [
    "LeftModule",
    "Bimodule",
    "BimoduleMap",
    "ShortExactSeq",
    "post_mul_matrix",
    "pre_mul_matrix",
    "canonical_bimodule",
    "tensor_square",
    "tensor_square_basis",
    "kernel_of",
    "validate_module",
    "zero_bimodule",
    "representable_bimodule",
    "representable_left_module",
    "character_left_module",
    "direct_sum_bimodules",
    "direct_sum_left_modules",
    "random_bimodule",
    "random_left_module",
]


def post_mul_matrix(c: FinLinCat, f: str, y: str) -> Matrix:
    """Matrix of u -> f.u on hom(y, src f) -> hom(y, tgt f)."""
    x, z, _ = c.label_info[f]
    src = c.hom(y, x)
    tgt = c.hom(y, z)
    out = Matrix.zeros(c.field, len(tgt), len(src))
    for j, u in enumerate(src):
        vec = c.comp_vector(f, u)
        for i, v in enumerate(vec):
            if v:
                out.entries[i * len(src) + j] = v
    return out


def pre_mul_matrix(c: FinLinCat, g: str, y: str) -> Matrix:
    """Matrix of v -> v.g on hom(tgt g, y) -> hom(src g, y)."""
    x, z, _ = c.label_info[g]
    src = c.hom(z, y)
    tgt = c.hom(x, y)
    out = Matrix.zeros(c.field, len(tgt), len(src))
    for j, v in enumerate(src):
        vec = c.comp_vector(v, g)
        for i, w in enumerate(vec):
            if w:
                out.entries[i * len(src) + j] = w
    return out


class LeftModule:
    """A covariant K-linear functor to vector spaces, as dimension data plus
    one action matrix per basis morphism."""

    def __init__(self, cat: FinLinCat, dims: dict[str, int], action: dict[str, Matrix]):
        self.cat = cat
        self.dims = {x: int(dims.get(x, 0)) for x in cat.objects}
        self.action = dict(action)

    def act(self, label: str) -> Matrix:
        return self.action[label]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LeftModule)
            and self.dims == other.dims
            and self.action == other.action
        )


class Bimodule:
    """Component spaces M[x][y] with commuting left and right actions."""

    def __init__(
        self,
        cat: FinLinCat,
        dims: dict[tuple[str, str], int],
        left: dict[tuple[str, str], Matrix],
        right: dict[tuple[str, str], Matrix],
    ):
        self.cat = cat
        self.dims = {(x, y): int(dims.get((x, y), 0)) for x in cat.objects for y in cat.objects}
        self.left = dict(left)
        self.right = dict(right)

    def dim(self, x: str, y: str) -> int:
        return self.dims[(x, y)]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def left_act(self, f: str, y: str) -> Matrix:
        return self.left[(f, y)]

    def right_act(self, g: str, x: str) -> Matrix:
        return self.right[(g, x)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Bimodule)
            and self.dims == other.dims
            and self.left == other.left
            and self.right == other.right
        )


@dataclass
class BimoduleMap:
    """Componentwise linear maps commuting with both actions."""

    source: Bimodule
    target: Bimodule
    blocks: dict[tuple[str, str], Matrix]

    def block(self, x: str, y: str) -> Matrix:
        return self.blocks[(x, y)]


@dataclass
class ShortExactSeq:
    m: Bimodule
    n: Bimodule
    p: Bimodule
    i: BimoduleMap
    q: BimoduleMap


def canonical_bimodule(c: FinLinCat) -> Bimodule:
    """The category as a bimodule over itself: component hom(y, x) at (x, y)."""
    dims = {(x, y): c.dim_hom(y, x) for x in c.objects for y in c.objects}
    left = {}
    right = {}
    for f in c.label_info:
        for y in c.objects:
            left[(f, y)] = post_mul_matrix(c, f, y)
    for g in c.label_info:
        for x in c.objects:
            right[(g, x)] = pre_mul_matrix(c, g, x)
    return Bimodule(c, dims, left, right)


def tensor_square_basis(c: FinLinCat, x: str, y: str) -> list[tuple[str, str, str]]:
    """Ordered basis (z, u, v) of the (x, y) component of C (x) C.

    z runs in object order, then u over hom(z, x), then v over hom(y, z);
    the tensor u (x) v represents a pair composable to u.v in hom(y, x).
    """
    basis = []
    for z in c.objects:
        for u in c.hom(z, x):
            for v in c.hom(y, z):
                basis.append((z, u, v))
    return basis


def tensor_square(c: FinLinCat) -> tuple[Bimodule, BimoduleMap]:
    """The bimodule C (x) C together with the composition map onto C."""
    bases = {(x, y): tensor_square_basis(c, x, y) for x in c.objects for y in c.objects}
    index = {key: {t: i for i, t in enumerate(b)} for key, b in bases.items()}
    dims = {key: len(b) for key, b in bases.items()}
    fld = c.field
    left = {}
    for f in c.label_info:
        x, x2, _ = c.label_info[f]
        for y in c.objects:
            src = bases[(x, y)]
            tgt_index = index[(x2, y)]
            out = Matrix.zeros(fld, dims[(x2, y)], len(src))
            for j, (z, u, v) in enumerate(src):
                vec = c.comp_vector(f, u)
                tgt_basis = c.hom(z, x2)
                for k, coeff in enumerate(vec):
                    if coeff:
                        out.entries[tgt_index[(z, tgt_basis[k], v)] * len(src) + j] = coeff
            left[(f, y)] = out
    right = {}
    for g in c.label_info:
        y2, y, _ = c.label_info[g]
        for x in c.objects:
            src = bases[(x, y)]
            tgt_index = index[(x, y2)]
            out = Matrix.zeros(fld, dims[(x, y2)], len(src))
            for j, (z, u, v) in enumerate(src):
                vec = c.comp_vector(v, g)
                tgt_basis = c.hom(y2, z)
                for k, coeff in enumerate(vec):
                    if coeff:
                        out.entries[tgt_index[(z, u, tgt_basis[k])] * len(src) + j] = coeff
            right[(g, x)] = out
    cxc = Bimodule(c, dims, left, right)
    creg = canonical_bimodule(c)
    blocks = {}
    for x in c.objects:
        for y in c.objects:
            src = bases[(x, y)]
            tgt = c.hom(y, x)
            out = Matrix.zeros(fld, len(tgt), len(src))
            for j, (z, u, v) in enumerate(src):
                vec = c.comp_vector(u, v)
                for i, coeff in enumerate(vec):
                    if coeff:
                        out.entries[i * len(src) + j] = coeff
            blocks[(x, y)] = out
    return cxc, BimoduleMap(cxc, creg, blocks)


def kernel_of(m: BimoduleMap) -> tuple[Bimodule, BimoduleMap]:
    """Componentwise kernel with the induced actions, plus its inclusion."""
    c = m.source.cat
    kernels = {key: m.blocks[key].kernel_basis() for key in m.blocks}
    dims = {key: kernels[key].cols for key in kernels}
    left = {}
    for (f, y), act in m.source.left.items():
        x, x2, _ = c.label_info[f]
        image = act @ kernels[(x, y)]
        induced = kernels[(x2, y)].solve_many(image)
        if induced is None:
            raise ValueError(f"map does not commute with left action of {f}; kernel has no induced action")
        left[(f, y)] = induced
    right = {}
    for (g, x), act in m.source.right.items():
        y2, y, _ = c.label_info[g]
        image = act @ kernels[(x, y)]
        induced = kernels[(x, y2)].solve_many(image)
        if induced is None:
            raise ValueError(f"map does not commute with right action of {g}; kernel has no induced action")
        right[(g, x)] = induced
    ker = Bimodule(c, dims, left, right)
    return ker, BimoduleMap(ker, m.source, dict(kernels))


def zero_bimodule(c: FinLinCat) -> Bimodule:
    dims = {(x, y): 0 for x in c.objects for y in c.objects}
    left = {(f, y): Matrix.zeros(c.field, 0, 0) for f in c.label_info for y in c.objects}
    right = {(g, x): Matrix.zeros(c.field, 0, 0) for g in c.label_info for x in c.objects}
    return Bimodule(c, dims, left, right)


def representable_bimodule(c: FinLinCat, a: str, b: str) -> Bimodule:
    """P(a,b) with component hom(a, x) (x) hom(y, b); actions by composition."""
    fld = c.field
    dims = {(x, y): c.dim_hom(a, x) * c.dim_hom(y, b) for x in c.objects for y in c.objects}
    left = {}
    right = {}
    for f in c.label_info:
        x, x2, _ = c.label_info[f]
        for y in c.objects:
            left[(f, y)] = post_mul_matrix(c, f, a).kron(Matrix.identity(fld, c.dim_hom(y, b)))
    for g in c.label_info:
        y2, y, _ = c.label_info[g]
        for x in c.objects:
            right[(g, x)] = Matrix.identity(fld, c.dim_hom(a, x)).kron(pre_mul_matrix(c, g, b))
    return Bimodule(c, dims, left, right)


def representable_left_module(c: FinLinCat, a: str) -> LeftModule:
    """P(a) with component hom(a, x); basis morphisms act by post-composition."""
    dims = {x: c.dim_hom(a, x) for x in c.objects}
    action = {f: post_mul_matrix(c, f, a) for f in c.label_info}
    return LeftModule(c, dims, action)


def character_left_module(c: FinLinCat, values: dict[str, object]) -> LeftModule:
    """A one-dimensional module from scalar values per basis label."""
    dims = {x: 1 for x in c.objects}
    action = {f: Matrix.from_rows(c.field, [[values[f]]]) for f in c.label_info}
    return LeftModule(c, dims, action)


def direct_sum_bimodules(c: FinLinCat, summands: list[Bimodule]) -> Bimodule:
    dims = {
        (x, y): sum(s.dims[(x, y)] for s in summands) for x in c.objects for y in c.objects
    }

    def blockdiag(mats: list[Matrix]) -> Matrix:
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = Matrix.zeros(c.field, rows, cols)
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                for j in range(m.cols):
                    v = m.entries[i * m.cols + j]
                    if v:
                        out.entries[(r0 + i) * cols + (c0 + j)] = v
            r0 += m.rows
            c0 += m.cols
        return out

    left = {}
    right = {}
    for f in c.label_info:
        for y in c.objects:
            left[(f, y)] = blockdiag([s.left[(f, y)] for s in summands])
    for g in c.label_info:
        for x in c.objects:
            right[(g, x)] = blockdiag([s.right[(g, x)] for s in summands])
    return Bimodule(c, dims, left, right)


def direct_sum_left_modules(c: FinLinCat, summands: list[LeftModule]) -> LeftModule:
    dims = {x: sum(s.dims[x] for s in summands) for x in c.objects}
    action = {}
    for f in c.label_info:
        x, y, _ = c.label_info[f]
        out = Matrix.zeros(c.field, dims[y], dims[x])
        r0 = c0 = 0
        for s in summands:
            m = s.action[f]
            for i in range(m.rows):
                for j in range(m.cols):
                    v = m.entries[i * m.cols + j]
                    if v:
                        out.entries[(r0 + i) * dims[x] + (c0 + j)] = v
            r0 += m.rows
            c0 += m.cols
        action[f] = out
    return LeftModule(c, dims, action)


# -- validation ---------------------------------------------------------


def _identity_action(c: FinLinCat, x: str, act_of_label, dim: int) -> Matrix:
    """Extend an action linearly over the identity vector of x."""
    out = Matrix.zeros(c.field, dim, dim)
    labels = c.hom(x, x)
    for t, coeff in enumerate(c.identity[x]):
        if coeff:
            out = out + act_of_label(labels[t]).scale(coeff)
    return out


def _expand_composite(c: FinLinCat, g: str, f: str, act_of_label, rows: int, cols: int) -> Matrix:
    """The action of g.f, expanded through the composition table."""
    x, _, _ = c.label_info[f]
    _, z, _ = c.label_info[g]
    out = Matrix.zeros(c.field, rows, cols)
    labels = c.hom(x, z)
    for k, coeff in enumerate(c.comp_vector(g, f)):
        if coeff:
            out = out + act_of_label(labels[k]).scale(coeff)
    return out


def _validate_left_module(c: FinLinCat, m: LeftModule, violations: list[str]) -> None:
    for f, mat in m.action.items():
        x, y, _ = c.label_info[f]
        if (mat.rows, mat.cols) != (m.dims[y], m.dims[x]):
            violations.append(f"action matrix for {f} has shape {mat.rows}x{mat.cols}")
            return
    for x in c.objects:
        ident = _identity_action(c, x, m.act, m.dims[x])
        if ident != Matrix.identity(c.field, m.dims[x]):
            violations.append(f"unit law fails at object {x}")
    for g, (gx, gy, _) in c.label_info.items():
        for f, (fx, fy, _) in c.label_info.items():
            if fy != gx:
                continue
            lhs = _expand_composite(c, g, f, m.act, m.dims[gy], m.dims[fx])
            if lhs != m.act(g) @ m.act(f):
                violations.append(f"composition law fails on pair ({g},{f})")


def _validate_bimodule(c: FinLinCat, m: Bimodule, violations: list[str]) -> None:
    for (f, y), mat in m.left.items():
        x, x2, _ = c.label_info[f]
        if (mat.rows, mat.cols) != (m.dims[(x2, y)], m.dims[(x, y)]):
            violations.append(f"left action for ({f},{y}) has wrong shape")
            return
    for (g, x), mat in m.right.items():
        y2, y, _ = c.label_info[g]
        if (mat.rows, mat.cols) != (m.dims[(x, y2)], m.dims[(x, y)]):
            violations.append(f"right action for ({g},{x}) has wrong shape")
            return
    for y in c.objects:
        for x in c.objects:
            ident = _identity_action(c, x, lambda lab: m.left_act(lab, y), m.dims[(x, y)])
            if ident != Matrix.identity(c.field, m.dims[(x, y)]):
                violations.append(f"left unit law fails at component ({x},{y})")
    for x in c.objects:
        for y in c.objects:
            ident = _identity_action(c, y, lambda lab: m.right_act(lab, x), m.dims[(x, y)])
            if ident != Matrix.identity(c.field, m.dims[(x, y)]):
                violations.append(f"right unit law fails at component ({x},{y})")
    for g, (gx, gy, _) in c.label_info.items():
        for f, (fx, fy, _) in c.label_info.items():
            if fy != gx:
                continue
            for y in c.objects:
                lhs = _expand_composite(
                    c, g, f, lambda lab: m.left_act(lab, y), m.dims[(gy, y)], m.dims[(fx, y)]
                )
                if lhs != m.left_act(g, y) @ m.left_act(f, y):
                    violations.append(f"left composition law fails on ({g},{f}) at y={y}")
            # right action is contravariant: (g.f) acts as act(f) @ act(g)
            for x in c.objects:
                lhs = _expand_composite(
                    c, g, f, lambda lab: m.right_act(lab, x), m.dims[(x, fx)], m.dims[(x, gy)]
                )
                if lhs != m.right_act(f, x) @ m.right_act(g, x):
                    violations.append(f"right composition law fails on ({g},{f}) at x={x}")
    for f, (x, x2, _) in c.label_info.items():
        for g, (y2, y, _) in c.label_info.items():
            lhs = m.left_act(f, y2) @ m.right_act(g, x)
            rhs = m.right_act(g, x2) @ m.left_act(f, y)
            if lhs != rhs:
                violations.append(f"left/right actions do not commute on ({f},{g})")


def _validate_bimodule_map(c: FinLinCat, m: BimoduleMap, violations: list[str]) -> None:
    for x in c.objects:
        for y in c.objects:
            blk = m.blocks.get((x, y))
            if blk is None or (blk.rows, blk.cols) != (m.target.dims[(x, y)], m.source.dims[(x, y)]):
                violations.append(f"map block at ({x},{y}) missing or has wrong shape")
                return
    for (f, y), src_act in m.source.left.items():
        x, x2, _ = c.label_info[f]
        if m.blocks[(x2, y)] @ src_act != m.target.left[(f, y)] @ m.blocks[(x, y)]:
            violations.append(f"map fails to commute with left action of {f} at y={y}")
    for (g, x), src_act in m.source.right.items():
        y2, y, _ = c.label_info[g]
        if m.blocks[(x, y2)] @ src_act != m.target.right[(g, x)] @ m.blocks[(x, y)]:
            violations.append(f"map fails to commute with right action of {g} at x={x}")


def _validate_ses(c: FinLinCat, s: ShortExactSeq, violations: list[str]) -> None:
    if s.i.source is not s.m or s.i.target is not s.n or s.q.source is not s.n or s.q.target is not s.p:
        violations.append("maps do not connect M -> N -> P")
        return
    _validate_bimodule_map(c, s.i, violations)
    _validate_bimodule_map(c, s.q, violations)
    if violations:
        return
    for x in c.objects:
        for y in c.objects:
            bi = s.i.blocks[(x, y)]
            bq = s.q.blocks[(x, y)]
            if bi.rank() != s.m.dims[(x, y)]:
                violations.append(f"inclusion not injective at ({x},{y})")
            if bq.rank() != s.p.dims[(x, y)]:
                violations.append(f"quotient map not surjective at ({x},{y})")
            if not (bq @ bi).is_zero():
                violations.append(f"q.i is nonzero at ({x},{y})")
            elif bi.rank() + bq.rank() != s.n.dims[(x, y)]:
                violations.append(f"im(i) != ker(q) at ({x},{y})")


def validate_module(
    c: FinLinCat, m: Union[LeftModule, Bimodule, BimoduleMap, ShortExactSeq]
) -> ValidationReport:
    """Check the functoriality / naturality / exactness axioms; violations are data."""
    violations: list[str] = []
    if isinstance(m, LeftModule):
        _validate_left_module(c, m, violations)
    elif isinstance(m, Bimodule):
        _validate_bimodule(c, m, violations)
    elif isinstance(m, BimoduleMap):
        _validate_bimodule_map(c, m, violations)
    elif isinstance(m, ShortExactSeq):
        _validate_ses(c, m, violations)
    else:
        raise TypeError(f"cannot validate {type(m).__name__}")
    return ValidationReport(ok=not violations, violations=violations)


# -- random instances ---------------------------------------------------


def _intertwiner_kernel(
    components: list,
    src_dims: dict,
    tgt_dims: dict,
    constraints: list[tuple[object, object, Matrix, Matrix]],
    field: Field,
) -> tuple[Matrix, dict, int]:
    """Kernel basis of the linear system "T_act @ phi[src] = phi[tgt] @ S_act".

    Unknowns are the entries of all blocks phi[comp], laid out row-major in
    component order. Returns (kernel, offsets, total unknowns).
    """
    offsets = {}
    total = 0
    for comp in components:
        offsets[comp] = total
        total += tgt_dims[comp] * src_dims[comp]
    rows: list[list] = []
    zero = field.zero
    for comp_src, comp_tgt, s_act, t_act in constraints:
        n_src = src_dims[comp_src]
        n_tgt_rows = tgt_dims[comp_tgt]
        # equation block has shape (tgt_dims[comp_tgt], src_dims[comp_src])
        for r in range(n_tgt_rows):
            for s in range(n_src):
                row = [zero] * total
                # T_act @ phi[comp_src] side: coefficient T_act[r, m] on entry (m, s)
                base_src = offsets[comp_src]
                stride_src = src_dims[comp_src]
                for m in range(t_act.cols):
                    v = t_act.entries[r * t_act.cols + m]
                    if v:
                        idx = base_src + m * stride_src + s
                        row[idx] = field.add(row[idx], v)
                # phi[comp_tgt] @ S_act side: coefficient -S_act[m, s] on entry (r, m)
                base_tgt = offsets[comp_tgt]
                stride_tgt = src_dims[comp_tgt]
                for m in range(s_act.rows):
                    v = s_act.entries[m * s_act.cols + s]
                    if v:
                        idx = base_tgt + r * stride_tgt + m
                        row[idx] = field.sub(row[idx], v)
                if any(row):
                    rows.append(row)
    system = Matrix(field, len(rows), total, [e for row in rows for e in row])
    return system.kernel_basis(), offsets, total


def _bimodule_map_from_vector(
    c: FinLinCat, src: Bimodule, tgt: Bimodule, vec: list, offsets: dict
) -> BimoduleMap:
    blocks = {}
    for x in c.objects:
        for y in c.objects:
            r, s = tgt.dims[(x, y)], src.dims[(x, y)]
            base = offsets[(x, y)]
            blocks[(x, y)] = Matrix(c.field, r, s, vec[base : base + r * s])
    return BimoduleMap(src, tgt, blocks)


def _bimodule_intertwiner_constraints(c: FinLinCat, src: Bimodule, tgt: Bimodule):
    constraints = []
    for f, (x, x2, _) in c.label_info.items():
        for y in c.objects:
            constraints.append(((x, y), (x2, y), src.left[(f, y)], tgt.left[(f, y)]))
    for g, (y2, y, _) in c.label_info.items():
        for x in c.objects:
            constraints.append(((x, y), (x, y2), src.right[(g, x)], tgt.right[(g, x)]))
    return constraints


def random_bimodule(c: FinLinCat, seed: int, dim_cap: int = 2) -> Bimodule:
    """A valid random bimodule, deterministic in the seed.

    Drawn as the kernel of a random intertwiner between direct sums of
    representable bimodules; draws are retried until every component
    dimension is at most dim_cap (the zero bimodule if no draw qualifies).
    """
    if dim_cap < 1:
        raise ValueError("dim_cap must be at least 1")
    rng = random.Random(seed)
    pairs = [(x, y) for x in c.objects for y in c.objects]
    components = pairs
    for _ in range(32):
        n_src = rng.choice((0, 1, 1, 1, 2, 2))
        if n_src == 0:
            return zero_bimodule(c)
        src_parts = [representable_bimodule(c, *rng.choice(pairs)) for _ in range(n_src)]
        src = src_parts[0] if n_src == 1 else direct_sum_bimodules(c, src_parts)
        tgt = representable_bimodule(c, *rng.choice(pairs))
        kernel, offsets, total = _intertwiner_kernel(
            components,
            src.dims,
            tgt.dims,
            _bimodule_intertwiner_constraints(c, src, tgt),
            c.field,
        )
        vec = [c.field.zero] * total
        for k in range(kernel.cols):
            coeff = c.field.of(rng.randint(-2, 2)) if c.field.is_rationals else c.field.of(rng.randrange(c.field.p))
            if not coeff:
                continue
            for i in range(total):
                v = kernel.entries[i * kernel.cols + k]
                if v:
                    vec[i] = c.field.add(vec[i], c.field.mul(coeff, v))
        phi = _bimodule_map_from_vector(c, src, tgt, vec, offsets)
        ker, _ = kernel_of(phi)
        if all(d <= dim_cap for d in ker.dims.values()):
            return ker
    return zero_bimodule(c)


def _left_module_map_kernel(c: FinLinCat, src: LeftModule, tgt: LeftModule, vec: list, offsets: dict):
    blocks = {}
    for x in c.objects:
        r, s = tgt.dims[x], src.dims[x]
        base = offsets[x]
        blocks[x] = Matrix(c.field, r, s, vec[base : base + r * s])
    kernels = {x: blocks[x].kernel_basis() for x in c.objects}
    dims = {x: kernels[x].cols for x in c.objects}
    action = {}
    for f, (x, y, _) in c.label_info.items():
        image = src.action[f] @ kernels[x]
        induced = kernels[y].solve_many(image)
        if induced is None:
            raise ValueError(f"map does not commute with action of {f}")
        action[f] = induced
    return LeftModule(c, dims, action)


def random_left_module(c: FinLinCat, seed: int, dim_cap: int = 2) -> LeftModule:
    """A valid random left module, deterministic in the seed (kernel of a
    random map between sums of representable modules)."""
    if dim_cap < 1:
        raise ValueError("dim_cap must be at least 1")
    rng = random.Random(seed)
    for _ in range(32):
        n_src = rng.choice((1, 1, 1, 2, 2))
        src_parts = [representable_left_module(c, rng.choice(c.objects)) for _ in range(n_src)]
        src = src_parts[0] if n_src == 1 else direct_sum_left_modules(c, src_parts)
        tgt = representable_left_module(c, rng.choice(c.objects))
        constraints = []
        for f, (x, y, _) in c.label_info.items():
            constraints.append((x, y, src.action[f], tgt.action[f]))
        kernel, offsets, total = _intertwiner_kernel(
            list(c.objects), src.dims, tgt.dims, constraints, c.field
        )
        vec = [c.field.zero] * total
        for k in range(kernel.cols):
            coeff = c.field.of(rng.randint(-2, 2)) if c.field.is_rationals else c.field.of(rng.randrange(c.field.p))
            if not coeff:
                continue
            for i in range(total):
                v = kernel.entries[i * kernel.cols + k]
                if v:
                    vec[i] = c.field.add(vec[i], c.field.mul(coeff, v))
        mod = _left_module_map_kernel(c, src, tgt, vec, offsets)
        if all(d <= dim_cap for d in mod.dims.values()):
            return mod
    return LeftModule(c, {x: 0 for x in c.objects}, {f: Matrix.zeros(c.field, 0, 0) for f in c.label_info})
