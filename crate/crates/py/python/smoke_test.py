"""Smoke test for the normineq_py extension module."""

import json
import math

import normineq_py as ni


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def main():
    d = ni.Matrix([[3, 0], [0, 1]])
    assert d.n == 2
    assert close(ni.uinorm(d, "trace"), 4.0)
    assert close(ni.uinorm(d, "frobenius"), math.sqrt(10))
    assert close(ni.uinorm(d, "kyfan:1"), 3.0)
    assert d.singular_values() == [3.0, 1.0]

    w, upper = ni.numerical_radius(ni.Matrix([[0, 1], [0, 0]]))
    assert abs(w - 0.5) < 1e-6 and w <= upper

    rotated = ni.Matrix([[0, 1j], [0, 0]])
    assert abs(ni.numerical_radius(rotated)[0] - 0.5) < 1e-6

    psd = ni.Matrix.random_psd(4, 1)
    max_diag = max(row[i].real for i, row in enumerate(psd.to_list()))
    assert close(ni.schur_norm_omega_psd(psd), max_diag)
    assert ni.schur_norm_omega_search(psd, 20, 0) <= max_diag + 1e-8

    root = psd.power(0.5)
    assert all(
        abs(x - y) < 1e-10
        for rx, ry in zip((root @ root).to_list(), psd.to_list())
        for x, y in zip(rx, ry)
    )

    # f(t) = (4^t + 4^(1-t))^2 for A = diag(4, 1), B = diag(1, 4), X = I.
    a = ni.Matrix([[4, 0], [0, 1]])
    b = ni.Matrix([[1, 0], [0, 4]])
    inst = ni.HeinzInstance(a, b, ni.Matrix.identity(2), r=1.0, norm="trace")
    assert close(inst.heinz_f(0.0), 25.0)
    assert close(inst.heinz_f(0.5), 16.0)
    v = inst.check_hh_chain(0.0)
    assert v.passed and close(v.links[1][1], 15 / math.log(4) + 8, 1e-8)

    x = ni.Matrix.random_general(3, 2)
    opts = ni.Options(tol_rel=1e-8)
    assert ni.check_bhatia_davis(x, x.adjoint(), x, 2.0, "schatten:3", opts)
    pd = ni.Matrix.random_pd(3, 5)
    assert ni.check_cor44(pd, x, 0.3)
    assert ni.check_thm43(pd, x, "log1p", "t_over_log1p")
    assert ni.is_kwong_sample([1.0, 4.0], "sqrt")
    assert not ni.is_kwong_sample([0.1, 10.0], "pow:3")

    report = json.loads(ni.run_suites(suites="cs-basic,cor44", n="2..3", trials=4, seed=3))
    assert all(s["passes"] == s["evaluations"] > 0 for s in report["suites"])
    again = json.loads(ni.run_suites(suites="cs-basic,cor44", n="2..3", trials=4, seed=3))
    report.pop("timing"), again.pop("timing")
    assert report == again

    fp = "cs-basic/seed=0/trial=3/n=4/r=2/norm=trace/mu=0.2"
    assert ni.replay(fp).passed

    try:
        ni.uinorm(d, "kyfan:3")
    except ValueError:
        pass
    else:
        raise AssertionError("kyfan:3 on a 2x2 matrix should be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
