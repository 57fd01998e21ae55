"""Tests for algebra construction, bimodules, tensor products over the
algebra, and the JSON interchange format."""

import pytest

from hhcalc.fields import Field
from hhcalc.algebra import (make_algebra, zoo, ZOO_NAMES, taft_algebra,
                            AssociativityViolation, UnitViolation,
                            AlgebraMorphism, regular_bimodule,
                            dual_bimodule, trivial_extension,
                            split_extension_algebra, tensor_over_A,
                            tensor_power_over_A, coinvariants,
                            algebra_from_json, algebra_to_json)

Q = Field.parse_spec("q")
F5 = Field.parse_spec("fp:5")
F7 = Field.parse_spec("fp:7")


def field_for(name):
    return F5 if name == "taft:2" else (F7 if name == "taft:3" else Q)


def test_zoo_members_validate():
    for name in ZOO_NAMES:
        f = field_for(name)
        a = zoo(name, field_for(name))
        assert a.dim >= 2
        # unit acts as identity through the matrix representation
        for i in range(a.dim):
            lm = a.left_mult_matrix(i)
            assert lm.matvec(a.unit) == {i: f.one}


def test_non_associative_table_rejected():
    # (xx)x = yx = 0 but x(xx) = xy = 1
    mul = {(0, 0): {0: Q.one}, (0, 1): {1: Q.one}, (1, 0): {1: Q.one},
           (0, 2): {2: Q.one}, (2, 0): {2: Q.one},
           (1, 1): {2: Q.one}, (1, 2): {0: Q.one}}
    with pytest.raises(AssociativityViolation) as exc:
        make_algebra(Q, 3, mul, {0: Q.one}, ("1", "x", "y"), "bad")
    assert exc.value.indices == (1, 1, 1)


def test_bad_unit_rejected():
    mul = {(0, 0): {0: Q.one}, (0, 1): {1: Q.of(2)},
           (1, 0): {1: Q.one}, (1, 1): {}}
    with pytest.raises(UnitViolation):
        make_algebra(Q, 2, mul, {0: Q.one}, ("1", "x"), "bad-unit")


def test_dual_bimodule_axioms():
    for name in ("dual-numbers", "mat:2", "taft:2"):
        a = zoo(name, field_for(name))
        dual_bimodule(a).validate()
        regular_bimodule(a).validate()


def test_trivial_extension_structure():
    a = zoo("dual-numbers", Q)
    ta = trivial_extension(a)
    assert ta.dim == 2 * a.dim
    # the dual part multiplies to zero
    for i in range(a.dim, ta.dim):
        for j in range(a.dim, ta.dim):
            assert ta.product_basis(i, j) == {}


def test_split_extension_restricts_to_algebra():
    a = zoo("trunc:3", Q)
    m = dual_bimodule(a)
    e = split_extension_algebra(a, m)
    for i in range(a.dim):
        for j in range(a.dim):
            assert e.product_basis(i, j) == a.product_basis(i, j)


def test_tensor_over_A_dual_numbers():
    # DA ⊗_A DA for k[x]/x^2 is 2-dimensional
    a = zoo("dual-numbers", Q)
    da = dual_bimodule(a)
    t2, proj = tensor_over_A(da, da)
    assert t2.dim == 2
    t2.validate()


def test_tensor_power_projection_section():
    a = zoo("cyclic:2", Q)
    da = dual_bimodule(a)
    from hhcalc.sparse import SparseMatrix
    for p in (1, 2, 3):
        bim, proj, sec = tensor_power_over_A(da, p)
        bim.validate()
        assert (proj @ sec) == SparseMatrix.identity(bim.dim, Q)


def test_coinvariants_semisimple():
    a = zoo("cyclic:2", Q)
    da = dual_bimodule(a)
    dim, proj = coinvariants(da)
    assert dim == 2  # commutative: [A, DA] = 0


def test_morphism_validation():
    a = zoo("cyclic:2", Q)
    ident = AlgebraMorphism.identity(a)
    ident.validate()
    from hhcalc.sparse import SparseMatrix
    swap = SparseMatrix.from_entries(
        2, 2, Q, [(0, 1, Q.one), (1, 0, Q.one)])
    bad = AlgebraMorphism(a, a, swap)
    with pytest.raises(Exception):
        bad.validate()  # does not fix the unit


def test_taft_relations():
    a = taft_algebra(2, F5, F5.of(4))
    # g^2 = 1, x^2 = 0, x g = w g x (indices: 1 = g, 2 = x, 3 = xg)
    assert a.product_basis(1, 1) == {0: F5.one}
    assert a.product_basis(2, 2) == {}
    xg = a.product_basis(2, 1)      # x * g
    gx = a.product_basis(1, 2)      # g * x
    w = F5.of(4)
    (k, c), = xg.items()
    (k2, c2), = gx.items()
    assert k == k2 == 3
    assert c == F5.mul(w, c2)


def test_json_round_trip():
    for name in ("dual-numbers", "mat:2", "taft:2"):
        a = zoo(name, field_for(name))
        doc = algebra_to_json(a)
        b = algebra_from_json(doc)
        assert b.dim == a.dim
        assert b.mul == a.mul
        assert b.unit == a.unit


def test_json_rejects_non_associative():
    a = zoo("dual-numbers", Q)
    doc = algebra_to_json(a)
    doc["mul"] = [[1, 1, 0, "1"]]  # x*x = 1 is not associative with x*1=x
    with pytest.raises(Exception):
        algebra_from_json(doc)
