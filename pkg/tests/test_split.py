"""Tests for the split-filtration subcomplexes, the homotopy, the small
resolutions, and the cyclic-functional computations."""

import itertools

import pytest

from hhcalc.fields import Field
from hhcalc.algebra import zoo, dual_bimodule, regular_bimodule
from hhcalc.hochschild import hochschild_differential, hh_dims
from hhcalc.split import (SplitAlgebra, BRanker, count_B, build_X,
                          build_column, x_space_dims, x_coordinate_indices,
                          verify_sigma_homotopy, build_resolution,
                          cyc_dim_definition, RestrictionLeak)

Q = Field.parse_spec("q")
F5 = Field.parse_spec("fp:5")


def test_branker_rank_is_lex_position():
    dA, dM = 2, 2
    for n in range(5):
        for r in range(n + 1):
            br = BRanker(n, r, dA, dM)
            ts = list(br.tuples())
            assert len(ts) == count_B(n, r, dA, dM)
            assert ts == sorted(ts)
            for i, t in enumerate(ts):
                assert br.rank(t) == i


def test_branker_rejects_wrong_slot_count():
    br = BRanker(2, 1, 2, 2)
    with pytest.raises(RestrictionLeak):
        br.rank((0, 1))  # zero slots in the second block


def test_b_spaces_partition_tensor_space():
    dA, dM = 2, 3
    for n in range(5):
        total = sum(count_B(n, r, dA, dM) for r in range(n + 1))
        assert total == (dA + dM) ** n


def test_x_is_restriction_of_full_differential():
    """Strong oracle: the assembled filtration-level differential equals
    the exact submatrix of the full Hochschild differential of the
    extension, with no entries leaking outside the block."""
    a = zoo("dual-numbers", Q)
    sa = SplitAlgebra.trivial_extension(a)
    e = sa.ext
    reg = regular_bimodule(e)
    for n in range(4):
        full = hochschild_differential(e, reg, n)
        for p in range(n + 3):
            cx = build_X(sa, p, n)
            d = cx.differential(n)
            rows = x_coordinate_indices(sa, p, n + 1)
            cols = x_coordinate_indices(sa, p, n)
            rowpos = {r: i for i, r in enumerate(rows)}
            for jj, j in enumerate(cols):
                col = full.col_dict(j)
                got = d.col_dict(jj)
                mapped = {}
                for i, v in col.items():
                    assert i in rowpos, "entry leaks outside the block"
                    mapped[rowpos[i]] = v
                assert mapped == got


def test_x_dims_sum_to_full_space():
    a = zoo("trunc:3", Q)
    sa = SplitAlgebra.trivial_extension(a)
    for n in range(4):
        total = sum(sum(x_space_dims(sa, p, n)) for p in range(n + 2))
        assert total == sa.ext.dim ** n * sa.ext.dim


def test_decomposition_of_extension_cohomology():
    a = zoo("dual-numbers", Q)
    sa = SplitAlgebra.trivial_extension(a)
    direct = hh_dims(sa.ext, None, 3)
    for n in range(4):
        parts = [build_X(sa, p, n).cohomology_dim(n)
                 for p in range(n + 2)]
        assert sum(parts) == direct[n]


def test_sigma_homotopy():
    for name in ("dual-numbers", "cyclic:2", "trunc:3"):
        sa = SplitAlgebra.trivial_extension(zoo(name, Q))
        for n in range(4):
            assert verify_sigma_homotopy(sa, n)


def test_resolutions_are_exact():
    for name in ("dual-numbers", "cyclic:2", "trunc:3"):
        sa = SplitAlgebra.trivial_extension(zoo(name, Q))
        for p in range(3):
            res = build_resolution(sa, p, 3)
            assert res.verify_dd()
            assert res.homology_dims(3) == [0, 0, 0, 0]


def test_cyclic_dims_match_complex():
    for name, f in (("dual-numbers", Q), ("mat:2", Q), ("taft:2", F5)):
        a = zoo(name, f)
        sa = SplitAlgebra.trivial_extension(a)
        for p in (2, 3, 4):
            assert cyc_dim_definition(a, p) == \
                build_X(sa, p, p - 1).cohomology_dim(p - 1)


def test_columns_assemble_to_x():
    a = zoo("cyclic:2", Q)
    sa = SplitAlgebra.trivial_extension(a)
    for p in (1, 2):
        cx = build_X(sa, p, 3)
        c0 = build_column(sa, p, 0, 3)
        c1 = build_column(sa, p, 1, 3)
        for n in range(5):
            assert cx.dims[n] == c0.dims[n] + c1.dims[n]
