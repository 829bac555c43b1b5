import pytest

from sepcat import presets
from sepcat.exactalg import Field, Matrix, QQ
from sepcat.lincat import linearize
from sepcat.cmod import (
    Bimodule,
    ShortExactSeq,
    canonical_bimodule,
    character_left_module,
    direct_sum_bimodules,
    kernel_of,
    random_bimodule,
    random_left_module,
    representable_bimodule,
    representable_left_module,
    tensor_square,
    tensor_square_basis,
    validate_module,
    zero_bimodule,
)


class TestCanonicalBimodule:
    def test_group_algebra(self, z2_over_q):
        m = canonical_bimodule(z2_over_q)
        assert m.dims[("x", "x")] == 2
        assert validate_module(z2_over_q, m).ok

    def test_a2_components(self, a2_over_q):
        m = canonical_bimodule(a2_over_q)
        # component at (x, y) is hom(y, x); only x1 -> x2 morphisms exist
        assert m.dims[("x1", "x1")] == m.dims[("x2", "x2")] == 1
        assert m.dims[("x2", "x1")] == 1
        assert m.dims[("x1", "x2")] == 0
        assert validate_module(a2_over_q, m).ok

    def test_discrete(self, discrete2_over_q):
        m = canonical_bimodule(discrete2_over_q)
        for x in discrete2_over_q.objects:
            for y in discrete2_over_q.objects:
                assert m.dims[(x, y)] == (1 if x == y else 0)


class TestTensorSquare:
    def test_group_algebra_dims(self, z2_over_q):
        cc, comp_map = tensor_square(z2_over_q)
        assert cc.dims[("x", "x")] == 4
        assert comp_map.blocks[("x", "x")].rows == 2
        assert validate_module(z2_over_q, cc).ok
        assert validate_module(z2_over_q, comp_map).ok

    def test_a2_component_expansion(self, a2_over_q):
        cc, comp_map = tensor_square(a2_over_q)
        # at (x2, x1): z=x1 gives alpha (x) 1_x1, z=x2 gives 1_x2 (x) alpha
        basis = tensor_square_basis(a2_over_q, "x2", "x1")
        assert len(basis) == 2
        assert basis == [("x1", "x1<=x2", "x1<=x1"), ("x2", "x2<=x2", "x1<=x2")]
        blk = comp_map.blocks[("x2", "x1")]
        assert blk.col(0) == [QQ.of(1)] and blk.col(1) == [QQ.of(1)]

    @pytest.mark.parametrize("seed", range(6))
    def test_comp_map_componentwise_surjective(self, seed):
        c = linearize(presets.random_presentation(seed), QQ)
        _, comp_map = tensor_square(c)
        for (x, y), blk in comp_map.blocks.items():
            assert blk.rank() == c.dim_hom(y, x)


class TestKernelOf:
    def test_kernel_of_comp_group_algebra(self, z2_over_q):
        _, comp_map = tensor_square(z2_over_q)
        ker, incl = kernel_of(comp_map)
        assert ker.total_dim() == 2  # 4 - 2 by rank-nullity
        assert validate_module(z2_over_q, ker).ok
        assert validate_module(z2_over_q, incl).ok
        for key, blk in comp_map.blocks.items():
            assert (blk @ incl.blocks[key]).is_zero()

    def test_kernel_of_identity_map(self, z2_over_q):
        m = canonical_bimodule(z2_over_q)
        from sepcat.cmod import BimoduleMap

        ident = BimoduleMap(
            m, m, {key: Matrix.identity(QQ, d) for key, d in m.dims.items()}
        )
        ker, _ = kernel_of(ident)
        assert ker.total_dim() == 0

    def test_kernel_of_zero_map(self, z2_over_q):
        m = canonical_bimodule(z2_over_q)
        from sepcat.cmod import BimoduleMap

        zero = BimoduleMap(
            m, m, {key: Matrix.zeros(QQ, d, d) for key, d in m.dims.items()}
        )
        ker, incl = kernel_of(zero)
        assert ker.dims == m.dims
        for key, d in m.dims.items():
            assert incl.blocks[key] == Matrix.identity(QQ, d)


class TestValidate:
    def test_broken_left_action_reported(self, z2_over_q):
        # g1 . g1 must act as the identity; a shear matrix does not square to it
        m = canonical_bimodule(z2_over_q)
        bad_left = dict(m.left)
        bad_left[("g1", "x")] = Matrix.from_rows(QQ, [[1, 1], [0, 1]])
        bad = Bimodule(z2_over_q, m.dims, bad_left, m.right)
        report = validate_module(z2_over_q, bad)
        assert not report.ok
        assert any("(g1,g1)" in v for v in report.violations)

    def test_ses_of_kernel_comp(self, z2_over_q):
        cc, comp_map = tensor_square(z2_over_q)
        ker, incl = kernel_of(comp_map)
        ses = ShortExactSeq(ker, cc, comp_map.target, incl, comp_map)
        assert validate_module(z2_over_q, ses).ok

    def test_inexact_ses_reported(self, z2_over_q):
        cc, comp_map = tensor_square(z2_over_q)
        zero = zero_bimodule(z2_over_q)
        from sepcat.cmod import BimoduleMap

        zmap = BimoduleMap(
            zero, cc, {key: Matrix.zeros(QQ, cc.dims[key], 0) for key in cc.dims}
        )
        ses = ShortExactSeq(zero, cc, comp_map.target, zmap, comp_map)
        report = validate_module(z2_over_q, ses)
        assert not report.ok
        assert any("im(i) != ker(q)" in v for v in report.violations)


class TestRepresentables:
    def test_regular_bimodule_of_group_algebra(self, z2_over_q):
        p = representable_bimodule(z2_over_q, "x", "x")
        assert p.dims[("x", "x")] == 4
        assert validate_module(z2_over_q, p).ok

    def test_representable_left_module(self, z2_over_q):
        m = representable_left_module(z2_over_q, "x")
        assert m.dims["x"] == 2
        assert validate_module(z2_over_q, m).ok

    def test_sign_module(self, z2_over_q):
        sign = character_left_module(z2_over_q, {"g0": 1, "g1": -1})
        assert validate_module(z2_over_q, sign).ok

    def test_direct_sum(self, a2_over_q):
        p1 = representable_bimodule(a2_over_q, "x1", "x1")
        p2 = representable_bimodule(a2_over_q, "x2", "x1")
        s = direct_sum_bimodules(a2_over_q, [p1, p2])
        assert validate_module(a2_over_q, s).ok
        assert s.total_dim() == p1.total_dim() + p2.total_dim()


class TestRandomInstances:
    @pytest.mark.parametrize("seed", range(8))
    def test_random_bimodule_is_valid(self, z2_over_q, seed):
        b = random_bimodule(z2_over_q, seed)
        assert validate_module(z2_over_q, b).ok
        assert all(d <= 2 for d in b.dims.values())

    def test_random_bimodule_deterministic(self, a2_over_q):
        assert random_bimodule(a2_over_q, 7) == random_bimodule(a2_over_q, 7)

    def test_random_bimodules_vary_with_seed(self, z2_over_q):
        dims = {random_bimodule(z2_over_q, s).total_dim() for s in range(12)}
        assert len(dims) > 1

    @pytest.mark.parametrize("seed", range(6))
    def test_random_left_module_is_valid(self, a2_over_q, seed):
        m = random_left_module(a2_over_q, seed)
        assert validate_module(a2_over_q, m).ok
        assert all(d <= 2 for d in m.dims.values())

    def test_random_left_module_deterministic(self, z2_over_f2):
        assert random_left_module(z2_over_f2, 3) == random_left_module(z2_over_f2, 3)
