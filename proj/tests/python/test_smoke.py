import math
from pathlib import Path

import numpy as np
import pytest

import atorus

DATA = Path(__file__).resolve().parent.parent / "data"


def test_presets():
    t3 = atorus.Algebra.preset("trunc:3")
    assert t3.dim == 3
    assert t3.nu == 3
    assert t3.labels == ["1", "e1", "e2"]
    assert t3.filtration_dims == [2, 1, 0]
    assert t3.socle_indices == [2]
    assert t3.breve_indices == [1]
    assert t3.structure_constants.shape == (9, 3)


def test_mul_and_invert():
    dual = atorus.Algebra.preset("dual")
    eps = np.array([0.0, 1.0])
    assert np.allclose(dual.mul(eps, eps), [0.0, 0.0])
    x = np.array([2.0, 3.0])
    assert np.allclose(dual.mul(x, dual.invert(x)), [1.0, 0.0])
    with pytest.raises(atorus.NonUnit):
        dual.invert(eps)


def test_spec_roundtrip_and_validate():
    skew = atorus.Algebra.load(str(DATA / "trunc3_skew.alg"))
    assert skew.dim == 3
    assert skew.socle_indices == [2]
    assert atorus.validate((DATA / "trunc3_skew.alg").read_text()) == []
    assert atorus.validate((DATA / "r_plus_r.alg").read_text())
    with pytest.raises(atorus.SpecParseError):
        atorus.Algebra.from_spec("algebra n=two")


def test_expressions():
    assert atorus.eval_real("exp(x1)*sin(x2)", [0.3, 0.7]) == pytest.approx(
        math.exp(0.3) * math.sin(0.7), rel=1e-15
    )
    assert atorus.eval_real(atorus.diff("x1^3", 1, 1), [2.0]) == pytest.approx(12.0)
    with pytest.raises(atorus.SyntaxError):
        atorus.eval_real("x1 + * 2", [1.0])
    with pytest.raises(atorus.UnknownVariable):
        atorus.eval_real("x3", [1.0, 2.0])


def test_lifts_agree():
    t3 = atorus.Algebra.preset("trunc:3")
    point = [np.array([0.7, 1.3, -0.4]), np.array([1.1, 0.2, 0.5])]
    for expr in ["exp(x1)*sin(x2)", "1/(1 + x1^2)", "log(2 + sin(x1)*x2)"]:
        a = atorus.taylor_lift(expr, point, t3)
        b = atorus.lift_eval(expr, point, t3)
        assert np.max(np.abs(a - b)) <= 1e-9 * (1 + np.max(np.abs(a)))
        assert atorus.adiff_defect(expr, point, t3) <= 1e-6
    x0, p, q = 0.7, 1.3, -0.4
    expect = [math.sin(x0), p * math.cos(x0), q * math.cos(x0) - 0.5 * p * p * math.sin(x0)]
    assert np.allclose(atorus.lift_eval("sin(x1)", [point[0]], t3), expect, atol=1e-15)


def test_domain_error():
    dual = atorus.Algebra.preset("dual")
    with pytest.raises(atorus.DomainError):
        atorus.lift_eval("log(x1)", [[-1.0, 1.0]], dual)
    with pytest.raises(atorus.AtorusError):
        atorus.lift_eval("1/x1", [[0.0, 1.0]], dual)


def test_function_nullspace():
    dual = atorus.Algebra.preset("dual")
    for d in range(3):
        basis = atorus.function_nullspace(dual, degree=d)
        assert basis.shape[1] == 1 + (2 * d + 1)
        assert np.allclose(basis.T @ basis, np.eye(basis.shape[1]), atol=1e-12)
    assert atorus.function_nullspace(atorus.Algebra.preset("trunc:3"), degree=2).shape[1] == 7


def test_verify_and_forms():
    t3 = atorus.Algebra.preset("trunc:3")
    v = atorus.verify(t3, degree=2)
    assert v["passed"]
    assert v["summary"]["DIM_SOLUTIONS"] == "7"
    assert all(ok for _, ok, _ in v["checks"])
    f = atorus.forms(t3, degree=2)
    assert f["passed"]
    assert f["summary"]["DIM_ZBREVE[e1]"] == "2"
    assert f["summary"]["BOUND"] == "9"
    with pytest.raises(atorus.SizeCapExceeded):
        atorus.forms(t3, degree=6)


def test_run_cli():
    code, out, err = atorus.run_cli(["lift", "--preset", "dual", "--expr", "x1^2", "--at", "3 + 2 e1"])
    assert code == 0
    assert "9 + 12 e1" in out
    code, _, _ = atorus.run_cli(["lift", "--preset", "dual", "--expr", "log(x1)", "--at", "-1 + 1 e1"])
    assert code == 3
    first = atorus.run_cli(["verify", "--preset", "dual", "--degree", "1"])
    assert first == atorus.run_cli(["verify", "--preset", "dual", "--degree", "1"])
