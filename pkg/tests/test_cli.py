import json
import subprocess
import sys

import pytest

from weylexp.catalog import CATALOG, MARTINET, bony
from weylexp.cli import main
from weylexp.errors import HomogeneityViolation, InputError, ParseError
from weylexp.sysfile import format_system, parse_system


@pytest.fixture
def run(tmp_path, capsys):
    def _run(text, *args):
        f = tmp_path / "system.txt"
        f.write_text(text)
        code = main([args[0], str(f), *args[1:]])
        out = capsys.readouterr()
        return code, out.out, out.err
    return _run


def kv(out):
    return dict(line.split(" = ", 1) for line in out.splitlines() if " = " in line)


def text(name, subst=False):
    c = CATALOG[name]
    t = c.text
    if subst and c.subst:
        t += f"subst {c.subst}\n"
    return t


class TestAnalyze:
    def test_martinet(self, run):
        code, out, _ = run(MARTINET, "analyze")
        assert code == 0
        assert out.splitlines() == [
            "Q = 5", "hoermander_index = 3", "w = 4", "nu_origin = 5",
            "degenerate_vars = {x1}", "alphaX = 1", "classification = Degenerate(1)"]

    def test_bony(self, run):
        d = kv(run(bony(3), "analyze")[1])
        assert (d["Q"], d["w"], d["hoermander_index"]) == ("6", "4", "3")

    def test_heisenberg(self, run):
        assert kv(run(text("heisenberg"), "analyze")[1])["classification"] == "NonDegenerate"


class TestExponents:
    def test_fractional(self, run):
        code, out, _ = run(text("fractional"), "exponents")
        assert code == 0
        d = kv(out)
        assert (d["Q0"], d["d0"], d["derivation"]) == ("11/3", "0", "MonomialLP")
        assert d["pair[3 0 3]"] == "Counted m=2/3 d=0 s+m=11/3"
        assert d["pair[2 0 4]"] == "Skipped_NotFullDim"

    def test_needs_resolution(self, run):
        code, out, _ = run(text("subst"), "exponents")
        assert code == 3
        assert out.splitlines() == ["status = NeedsResolution", "offending[0] = x1 + x2"]

    def test_with_substitution(self, run):
        d = kv(run(text("subst", subst=True), "exponents")[1])
        assert (d["Q0"], d["d0"]) == ("4", "1")

    def test_chart_file(self, run):
        d = kv(run(text("subst-chart"), "exponents")[1])
        assert (d["Q0"], d["d0"], d["derivation"]) == ("4", "1", "UserChart")

    def test_divergent(self, run):
        code, out, _ = run("chart\npair 1 0\nb 0\n", "exponents")
        assert code == 4
        assert out.splitlines() == ["status = Divergent", "witness = [1, 0]"]

    def test_trivial_has_no_pair_table(self, run):
        out = run(text("heisenberg"), "exponents")[1]
        assert "pair[" not in out
        assert kv(out)["derivation"] == "TrivialCase"


class TestLaw:
    def test_grushin(self, run):
        out = run(text("grushin-2-1"), "law")[1]
        assert "lambda_k ~ k^(1) * (ln k)^(-1)" in out.splitlines()
        assert "N(lambda) ~ lambda^(1) * (ln lambda)^1" in out.splitlines()

    def test_q_minus_alpha(self, run):
        out = run(text("q-minus-alpha"), "law")[1]
        assert "lambda_k ~ k^(1/2) * (ln k)^(-1/2)" in out.splitlines()

    def test_nondegenerate(self, run):
        out = run(text("heisenberg"), "law")[1]
        assert "lambda_k ~ k^(1/2)" in out.splitlines()

    def test_no_law_without_growth(self, run):
        code, _, err = run("chart\npair 1 0\npair 0 1\nb 0\n", "law")
        assert code == 2 and "Q0" in err


class TestVerify:
    def test_fractional_passes(self, run):
        code, out, _ = run(text("fractional"), "verify", "--points", "7")
        d = kv(out)
        assert code == 0 and d["verdict"] == "PASS"
        assert abs(float(d["Q0_hat"]) - 11 / 3) <= 0.15
        assert d["monotone"] == "True"

    def test_log_chart(self, run):
        code, out, _ = run("chart\npair 1 0\npair 0 1\nb 0\n", "verify")
        d = kv(out)
        assert code == 0
        assert abs(float(d["Q0_hat"])) < 0.15
        assert abs(float(d["d0_hat"]) - 1) < 0.15

    def test_zero_tolerance_fails(self, run):
        code, out, _ = run(text("martinet"), "verify", "--tol", "0")
        assert code == 5 and kv(out)["verdict"] == "FAIL"

    @pytest.mark.parametrize("flags", [["--rmin", "1e-2", "--rmax", "1e-3"], ["--points", "3"],
                                       ["--rmax", "1.5"]])
    def test_invalid_ladder(self, run, flags):
        code, _, err = run(text("martinet"), "verify", *flags)
        assert code == 2 and "usage" in err


class TestReport:
    def test_fractional(self, run):
        out = run(text("fractional"), "report")[1]
        d = kv(out)
        assert d["Q"] == "6" and d["Q0"] == "11/3"
        assert out.splitlines()[-1] == "lambda_k ~ k^(6/11)"


@pytest.mark.parametrize("cmd", ["analyze", "exponents", "law", "report"])
@pytest.mark.parametrize("name", ["martinet", "fractional", "heisenberg"])
def test_json_matches_plain(run, cmd, name):
    plain = run(text(name), cmd)[1]
    data = json.loads(run(text(name), cmd, "--json")[1])
    lines = plain.splitlines()
    d = kv(plain)
    for key, val in data.items():
        if key == "pairs":
            for row in val:
                tag = " ".join(map(str, row["pair"]))
                assert d[f"pair[{tag}]"].startswith(row["status"])
        elif key in ("counting_law", "eigenvalue_law"):
            assert val in lines
        else:
            assert d[key] == str(val)


def test_output_is_reproducible(run):
    assert run(text("fractional"), "report") == run(text("fractional"), "report")


class TestErrors:
    def test_parse_error_position(self, run):
        bad = "dim 2\nweights 1 1\nfield X1 = d1 + * d2\n"
        code, _, err = run(bad, "analyze")
        assert code == 2
        with pytest.raises(ParseError) as exc:
            parse_system(bad)
        assert exc.value.line == 3 and exc.value.col > 0

    def test_weights_homogeneity(self, run):
        bad = MARTINET.replace("weights 1 1 3", "weights 1 2 3")
        with pytest.raises(HomogeneityViolation) as exc:
            parse_system(bad)
        assert "X2" in str(exc.value)
        assert run(bad, "analyze")[0] == 2

    def test_empty_field_list(self, run):
        with pytest.raises(InputError):
            parse_system("dim 2\nweights 1 1\n")
        assert run("dim 2\nweights 1 1\n", "analyze")[0] == 2

    def test_missing_file(self, capsys):
        assert main(["analyze", "/nonexistent/file"]) == 2


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_round_trip(name):
    sf = parse_system(text(name, subst=True))
    again = parse_system(format_system(sf))
    assert again == sf
    assert format_system(again) == format_system(sf)


def test_module_entry_point(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text(MARTINET)
    proc = subprocess.run([sys.executable, "-m", "weylexp", "exponents", str(f)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "Q0 = 4" in proc.stdout
