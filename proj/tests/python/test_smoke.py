import json
import math
import subprocess

import pytest

import nilnf


def takens_bogdanov(source_dir):
    return json.loads((source_dir / "examples_data" / "takens_bogdanov.json").read_text())


def test_alpha_system_is_exact():
    assert nilnf.solve_alpha_system(3) == ["3", "4", "3"]
    for n in range(1, 9):
        assert nilnf.solve_alpha_system(n) == [str(i * (n + 1 - i)) for i in range(1, n + 1)]


def test_sl2_residuals_vanish():
    for blocks in ([1], [2, 0], [3, 1]):
        r = nilnf.verify_sl2(blocks)
        assert max(r.values()) <= 1e-12


def test_planar_spectrum():
    s = nilnf.spectrum([1], 1)
    assert s["spectrum"] == [0, 0, 1, 3, 3, 4]
    assert s["agreement"] is True
    assert s["kernel_dim"] == 2
    assert math.isclose(s["a_delta"], 1.0)


def test_jordan_normalize_and_not_nilpotent():
    frame = nilnf.jordan_normalize([["0", "3/2", "0"], ["0", "0", "-2"], ["0", "0", "0"]])
    assert frame["blocks"] == [2]
    with pytest.raises(nilnf.NotNilpotent):
        nilnf.jordan_normalize([[1, 0], [0, 0]])


def test_normal_form_takens_bogdanov(source_dir):
    report = nilnf.normal_form(takens_bogdanov(source_dir), order=4)
    assert report["passed"]
    assert report["conjugacy"]["max_residual"] < 1e-7
    assert report["resonance"]["max_residual"] <= 1e-8
    assert not report["linearizable"]
    # Resonant monomials on the planar frame are x^k d/dy and x^{k-1}(x d/dx + y d/dy).
    for term in report["normal_form"]:
        a, b = term["exponents"]
        assert (term["component"], b) in {(2, 0), (1, 0), (2, 1)}


def test_normal_form_rejects_low_order(source_dir):
    with pytest.raises(ValueError):
        nilnf.normal_form(takens_bogdanov(source_dir), order=1)


def test_gevrey_and_constants():
    fit = nilnf.gevrey_fit([math.factorial(d) for d in range(12)])
    assert abs(fit["gevrey_beta"] - 1.0) < 0.1
    nu, p = nilnf.nu_constant()
    assert abs(nu - math.exp(3)) < 1e-9 and p == 1
    r = nilnf.opt_order(1.0, 1.0, 2)
    assert math.isclose(r["C"], 10 * math.sqrt(2))
    assert r["p_opt"] == 0 and r["warnings"]
    assert nilnf.eta_sequence([1.0, 1.0, 0.5])[2] == pytest.approx(2.0)
    with pytest.raises(nilnf.DomainError):
        nilnf.opt_order(1.0, 0.0, 2)


def run(cli, *args):
    return subprocess.run([cli, *map(str, args)], capture_output=True, text=True)


def test_cli_reports_match_schemas(cli, source_dir, validator, tmp_path):
    example = source_dir / "examples_data" / "takens_bogdanov.json"
    validator(json.loads(example.read_text()), "vector_field_document.schema.json")

    out = run(cli, "spectrum", "--blocks", "2", "--max-degree", "3")
    assert out.returncode == 0
    spectrum = json.loads(out.stdout)
    validator(spectrum, "spectrum_report.schema.json")
    assert len(spectrum["grades"]) == 4 and spectrum["all_agree"]

    result = tmp_path / "nf.json"
    out = run(cli, "normal-form", example, "-p", "5", "-o", result)
    assert out.returncode == 0, out.stderr
    validator(json.loads(result.read_text()), "normal_form_result.schema.json")

    out = run(cli, "diagnostics", result)
    assert out.returncode == 0, out.stderr
    diagnostics = json.loads(out.stdout)
    validator(diagnostics, "diagnostics_report.schema.json")
    assert all(a >= 1.0 for a in diagnostics["a_delta"][1:])

    out = run(cli, "diagnostics", "--blocks", "0")
    validator(json.loads(out.stdout), "diagnostics_report.schema.json")

    out = run(cli, "opt-order", "--c", "0.01", "--rho", "100", "--m", "2", "--epsilon", "0.2")
    assert out.returncode == 0
    opt = json.loads(out.stdout)
    validator(opt, "opt_order_report.schema.json")
    bounds = sorted((s["epsilon"], s["bound"]) for s in opt["bound_samples"])
    assert [b for _, b in bounds] == sorted(b for _, b in bounds)


def test_cli_exit_codes(cli, source_dir):
    assert run(cli, "normal-form", source_dir / "examples_data" / "not_nilpotent.json").returncode == 2
    assert run(cli, "opt-order", "--c", "1", "--rho", "-1", "--m", "2").returncode == 1
    assert run(cli, "normal-form", source_dir / "examples_data" / "takens_bogdanov.json", "-p", "1").returncode == 1
