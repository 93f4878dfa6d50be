import json
import math

import pytest

from sinfrac.cli import main, parse_numerator
from sinfrac.core import LaurentTrigPoly, direct_ratio
from sinfrac.document import ExpansionDocument
from sinfrac.numeric import SamplePlan, sample_points


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestDecompose:
    def test_braaksma_kappa0_text(self, capsys):
        code, out, _ = run(capsys, "decompose", "--a", "1.5707963", "--b", "0.5235988",
                           "--identity", "braaksma", "--k", "0", "--format", "text")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# braaksma (k=0)"
        # constant exp(-i nu) with nu = pi/2 - pi/6, then a single pole line
        nu = 1.5707963 - 0.5235988
        assert lines[1].startswith("f(z) = (") and f"{math.cos(nu):.6f}"[:6] in lines[1]
        assert len(lines) == 3 and "sin(z - 0.5235988)" in lines[2]

    def test_chu_json_single_pole(self, capsys):
        code, out, _ = run(capsys, "decompose", "--b", "0", "--numerator", "1", "--identity", "chu", "--format", "json")
        assert code == 0
        doc = ExpansionDocument.from_json(out)
        assert doc.expansion.exp_terms == () and len(doc.expansion.pole_terms) == 1

    def test_sine_product_latex(self, capsys):
        code, out, _ = run(capsys, "decompose", "--a", "0.1,0.2,0.3,0.4", "--b", "0.9",
                           "--identity", "sine-product", "--format", "latex")
        assert code == 0
        assert out.startswith("% sine-product\n\\begin{aligned}") and r"\sin(3z" in out

    def test_degrees_flag(self, capsys):
        _, rad, _ = run(capsys, "decompose", "--a", str(math.pi / 2), "--b", str(math.pi / 6),
                        "--identity", "braaksma", "--format", "json")
        _, deg, _ = run(capsys, "decompose", "--a", "90", "--b", "30", "--degrees",
                        "--identity", "braaksma", "--format", "json")
        a = ExpansionDocument.from_json(rad).expansion
        b = ExpansionDocument.from_json(deg).expansion
        assert a.coefficient_distance(b) < 1e-15

    @pytest.mark.parametrize(
        "argv",
        [
            ["--identity", "general-m", "--numerator=-3:1,0;0:2;2:0,1", "--b", "0.3,1.4"],
            ["--identity", "general-p", "--numerator", "1:1;4:1", "--b", "0.3"],
            ["--identity", "general-pm", "--numerator", "1:1;4:1", "--b", "0.3", "--variant", "PM+"],
            ["--identity", "chu-ext", "--numerator", "3:1;-2:1", "--b", "0.3,1.0"],
            ["--identity", "cos-series", "--coeffs", "1,2,3", "--b", "0.3"],
            ["--identity", "sin-series", "--coeffs", "0,2,3", "--b", "0.3"],
            ["--identity", "trig-monomial", "--m", "4", "--a", "0.2", "--theta", "1", "--b", "0.3,1.2"],
        ],
    )
    def test_other_identities(self, capsys, argv):
        code, out, err = run(capsys, "decompose", *argv, "--format", "json")
        assert code == 0, err
        assert ExpansionDocument.from_json(out).expansion.pole_terms

    @pytest.mark.parametrize(
        "argv,needle",
        [
            (["--identity", "braaksma", "--a", "0.1", "--b", "0.2,0.2"], "nodes coincide"),
            (["--identity", "braaksma", "--a", "0.1", "--b", "0.2", "--k", "10"], "--k"),
            (["--identity", "trig-monomial", "--m", "4", "--a", "0.2", "--theta", "0", "--b", "0.3,1.2"], "parity"),
            (["--identity", "chu", "--numerator", "5:1", "--b", "0.3"], "degree"),
            (["--identity", "chu", "--b", "0.3"], "--numerator"),
            (["--identity", "chu", "--numerator", "x:1", "--b", "0.3"], "harmonic"),
            (["--identity", "braaksma", "--a", "abc", "--b", "0.3"], "--a"),
            (["--identity", "braaksma", "--a", "nan", "--b", "0.3"], "finite"),
            (["--identity", "sin-series", "--coeffs", "1,2", "--b", "0.3"], "constant"),
        ],
    )
    def test_invalid_input_exits_2(self, capsys, argv, needle):
        code, out, err = run(capsys, "decompose", *argv)
        assert code == 2 and out == ""
        assert err.startswith("error: ") and needle in err
        assert len(err.strip().splitlines()) == 1

    def test_argparse_errors_exit_2(self, capsys):
        assert run(capsys, "decompose", "--identity", "nosuch")[0] == 2
        assert run(capsys)[0] == 2
        assert run(capsys, "--help")[0] == 0


class TestVerify:
    def test_zero_trials(self, capsys):
        code, out, _ = run(capsys, "verify", "--identity", "braaksma", "--trials", "0")
        assert code == 0 and out.startswith("PASS braaksma: trials=0")

    def test_all_families_short_run(self, capsys):
        code, out, _ = run(capsys, "verify", "--identity", "all", "--trials", "5", "--seed", "1")
        assert code == 0 and len(out.splitlines()) >= 24

    def test_unknown_identity(self, capsys):
        code, _, err = run(capsys, "verify", "--identity", "nosuch")
        assert code == 2 and "unknown identity" in err

    def test_failure_exits_1(self, capsys):
        code, out, _ = run(capsys, "verify", "--identity", "braaksma", "--trials", "30", "--tol", "1e-12")
        assert code == 1 and out.startswith("FAIL")

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--identity", "chu", "--trials", "2", "--json")
        assert code == 0
        (report,) = json.loads(out)
        assert report["identity"] == "chu" and report["passed"]

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("SINFRAC_SEED", "9")
        _, env_out, _ = run(capsys, "verify", "--identity", "chu", "--trials", "2", "--json")
        _, flag_out, _ = run(capsys, "verify", "--identity", "chu", "--trials", "2", "--json", "--seed", "9")
        assert env_out == flag_out and json.loads(env_out)[0]["seed"] == 9
        monkeypatch.setenv("SINFRAC_SEED", "x")
        assert run(capsys, "verify", "--identity", "chu", "--trials", "1")[0] == 2

    def test_negative_trials(self, capsys):
        assert run(capsys, "verify", "--trials", "-1")[0] == 2


class TestEval:
    def test_single_pole_document(self, capsys, tmp_path):
        path = tmp_path / "doc.json"
        _, out, _ = run(capsys, "decompose", "--b", "0", "--numerator", "1", "--identity", "chu", "--format", "json")
        path.write_text(out)
        code, out, _ = run(capsys, "eval", "--document", str(path), "--z", f"{math.pi / 2},0")
        assert code == 0
        value = out.split("expansion:")[1].split("i")[0]
        re, im = value.replace(" + ", " ").replace(" - ", " -").split()
        assert float(re) == pytest.approx(1.0) and abs(float(im)) < 1e-15

    def test_decompose_eval_round_trip(self, capsys, tmp_path):
        a, b = "0.3,1.1,2.5", "0.7,1.9"
        path = tmp_path / "doc.json"
        _, out, _ = run(capsys, "decompose", "--a", a, "--b", b, "--identity", "braaksma", "--k", "1", "--format", "json")
        path.write_text(out)
        for z in sample_points(SamplePlan(10, 1.5, 0.3, 4), [0.7, 1.9]):
            z = complex(z)
            code, out, err = run(capsys, "eval", "--document", str(path), "--z", f"{z.real!r},{z.imag!r}", "--a", a, "--b", b)
            assert code == 0, err
            assert float(out.split("rel_error:")[1]) <= 1e-9

    def test_direct_ratio_only(self, capsys):
        code, out, _ = run(capsys, "eval", "--z", "0.4,0.5", "--a", "0.1", "--b", "1.0")
        assert code == 0 and out.startswith("direct:")
        expected = direct_ratio([0.1], [1.0], 0.4 + 0.5j)
        assert f"{expected.real!r}" in out

    def test_pole_proximity(self, capsys, tmp_path):
        path = tmp_path / "doc.json"
        _, out, _ = run(capsys, "decompose", "--b", "0.5", "--numerator", "1", "--identity", "chu", "--format", "json")
        path.write_text(out)
        code, _, err = run(capsys, "eval", "--document", str(path), "--z", "0.5,0")
        assert code == 2 and "pole proximity" in err

    @pytest.mark.parametrize("content", ["{", '{"schema_version": 5}'])
    def test_malformed_document(self, capsys, tmp_path, content):
        path = tmp_path / "bad.json"
        path.write_text(content)
        assert run(capsys, "eval", "--document", str(path), "--z", "1,1")[0] == 2

    def test_missing_document_and_inputs(self, capsys, tmp_path):
        assert run(capsys, "eval", "--document", str(tmp_path / "none.json"), "--z", "1")[0] == 2
        assert run(capsys, "eval", "--z", "1")[0] == 2
        assert run(capsys, "eval", "--z", "1,2,3", "--b", "0.1")[0] == 2


def test_parse_numerator():
    T = parse_numerator("2:1,-1; 0:3 ;-1:0,2;0:1")
    assert T == LaurentTrigPoly.from_harmonics({2: 1 - 1j, 0: 4, -1: 2j})
    assert parse_numerator("2.5") == LaurentTrigPoly.constant(2.5)


def test_negative_values_after_flags(capsys):
    code, out, err = run(capsys, "eval", "--z", "-1.5,0.5", "--a", "-0.2,0.1", "--b", "0.9")
    assert code == 0, err
    assert out.startswith("direct:")
    code, _, err = run(capsys, "decompose", "--identity", "chu", "--numerator", "-1:2;0:1", "--b", "-0.4")
    assert code == 0, err
