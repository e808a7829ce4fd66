import math

import numpy as np
import pytest

import acgd


def test_alpha_and_projection():
    assert [acgd.alpha(t) for t in (0, 2, 3, 7)] == [1.0, 1.0, 1.0, 2.0]
    p = acgd.project_ball(np.array([3.0, 4.0]), np.zeros(2), 1.0)
    np.testing.assert_allclose(p, [0.6, 0.8], rtol=1e-15)
    with pytest.raises(ValueError):
        acgd.project_ball(np.zeros(3), np.zeros(2), 1.0)


def test_regression_problem_matches_numpy():
    data = acgd.generate_regression_data(30, 4, 0.1, seed=5)
    assert data.A.shape == (30, 4)
    prob = acgd.RegressionProblem(data, 2)
    x = np.linspace(-1.0, 1.0, 4)
    value, grad = prob.value_and_subgradient(x)
    r = data.A @ x - data.b
    assert value == pytest.approx(r @ r, rel=1e-12)
    np.testing.assert_allclose(grad, 2 * data.A.T @ r, rtol=1e-12)
    assert prob.num_terms == 30


def test_planted_solution_is_exact_optimum():
    data = acgd.generate_regression_data(40, 5, 0.0, seed=1)
    prob = acgd.RegressionProblem(data, 2)
    assert prob.value(data.x_natural) == 0.0
    ref = acgd.reference_optimum(prob)
    assert ref.exact
    np.testing.assert_allclose(ref.x_star, data.x_natural, atol=1e-9)


def test_run_trace_and_replay():
    data = acgd.generate_regression_data(50, 6, 1e-2, seed=2)
    prob = acgd.RegressionProblem(data, 1)
    a = acgd.run(prob, diameter=4.0, T=300, oracle="minibatch", batch=5, seed=11)
    b = acgd.run(prob, diameter=4.0, T=300, oracle="minibatch", batch=5, seed=11)
    assert a["csv"] == b["csv"]
    assert a["csv"].splitlines()[0] == acgd.TRACE_HEADER
    assert a["iter"][-1] == 300
    assert a["evals"][-1] == 1500
    assert np.all(np.diff(a["iter"]) > 0)
    assert a["f_avg"][-1] == pytest.approx(prob.value(a["output"]))


def test_accelegrad_rate_on_smooth_problem():
    data = acgd.generate_regression_data(100, 10, 0.0, seed=3)
    prob = acgd.RegressionProblem(data, 2)
    ref = acgd.reference_optimum(prob)
    D = 2 * np.linalg.norm(ref.x_star)
    acc = acgd.run(prob, method="accelegrad", diameter=D, T=2000)
    ada = acgd.run(prob, method="adagrad", diameter=D, T=2000)
    err = np.maximum(np.array(acc["f_avg"]) - ref.f_star, 0.0)
    fit = acgd.fit_rate_slope(acc["iter"], err, 10, 2000)
    assert fit["slope"] < -1.8
    assert acc["f_avg"][-1] < ada["f_avg"][-1]


def test_bad_arguments_raise():
    data = acgd.generate_regression_data(10, 2, 0.0, seed=0)
    prob = acgd.RegressionProblem(data, 2)
    with pytest.raises(ValueError):
        acgd.run(prob, method="sgd", diameter=1.0, T=5)
    with pytest.raises(ValueError):
        acgd.run(prob, diameter=1.0, T=5, oracle="minibatch", batch=11)
    with pytest.raises(ValueError):
        acgd.RegressionProblem(data, 3)


def test_container_and_libsvm_files(tmp_path):
    data = acgd.generate_regression_data(8, 3, 0.1, seed=4)
    path = tmp_path / "d.acgd"
    data.save(path)
    back = acgd.RegressionData.load(path)
    np.testing.assert_array_equal(back.A, data.A)
    np.testing.assert_array_equal(back.b, data.b)
    with pytest.raises(OSError):
        acgd.RegressionData.load(tmp_path / "missing.acgd")

    svm = tmp_path / "d.svm"
    svm.write_text("1 1:0.5 3:1\n-1 2:2\n")
    prob = acgd.ClassificationProblem(svm, acgd.Loss.LOGISTIC, 0.0)
    assert prob.dim == 3
    assert prob.value(np.zeros(3)) == pytest.approx(2 * math.log(2))
    svm.write_text("1 3:1 2:1\n")
    with pytest.raises(ValueError, match="line 1"):
        acgd.ClassificationProblem(svm, acgd.Loss.HINGE)


def test_weights_and_verify_subset():
    assert acgd.check_weight_properties(10000) == ""
    assert acgd.check_weight_properties(100, lambda t: 1.0 if t <= 1 else (t + 1) / 4) != ""
    results = acgd.verify(["lemmas"])
    assert [r["id"] for r in results] == ["7"]
    assert results[0]["passed"]
    assert acgd.record_points(100, 10)[-1] == 100
