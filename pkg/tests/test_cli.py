import json
import subprocess
import sys

import pytest

from cyclodarboux.cli import main

FOUR = "vars x,y,z,w; d(x)=w^2; d(y)=z*w; d(z)=y^2; d(w)=x*y;\n"


@pytest.fixture
def spec_file(tmp_path):
    def make(text, name="d.spec"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


def run(args, stdin=""):
    proc = subprocess.run([sys.executable, "-m", "cyclodarboux", *args], input=stdin,
                          capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


def test_gen_piped_into_analyze():
    code, spec, _ = run(["gen", "jouanolou", "--n", "3", "--s", "2"])
    assert code == 0
    code, out, _ = run(["analyze"], stdin=spec)
    assert code == 0
    assert "w_d = 7" in out and "k = 3" in out


def test_certify_four_variable_example(spec_file, tmp_path):
    out_file = tmp_path / "four.json"
    code = main(["certify", spec_file(FOUR), "--max-degree", "1", "--out", str(out_file)])
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["structure"]["N"] == 3
    assert doc["conjugation"]["holds"] is True
    assert all(all(c == "0/1" for c in row["geometric_sum"]["coeffs"])
               for row in doc["lambda_vanishing"]["table"])
    assert main(["check", str(out_file)]) == 0
    doc["structure"]["q"] = [1, 4]
    out_file.write_text(json.dumps(doc))
    assert main(["check", str(out_file)]) == 1


def test_orbit(spec_file, capsys):
    spec = spec_file("vars x,y; d(x)=y^2; d(y)=x^2;")
    assert main(["orbit", spec, "--f", "x-y", "--lambda", "-x-y"]) == 0
    assert "F = x^3 - y^3" in capsys.readouterr().out
    assert main(["orbit", spec, "--f", "x-y", "--lambda", "x+y"]) == 1


def test_darboux_exit_codes(spec_file, tmp_path):
    spec = spec_file("vars x,y; d(x)=y^2; d(y)=x^2;")
    assert main(["darboux", spec, "--max-degree", "2", "--out", str(tmp_path / "r.json")]) == 0
    assert main(["check", str(tmp_path / "r.json")]) == 0
    j32 = spec_file("vars a,b,c; d(a)=b^2; d(b)=c^2; d(c)=a^2;", "j32.spec")
    assert main(["darboux", j32, "--max-degree", "1", "--monomial-cofactors-only"]) == 3


def test_parse_error_exit_code(capsys):
    code, _, err = run(["analyze"], stdin="vars x,y; d(x)=x+y; d(y)=x;")
    assert code == 2
    assert "line 1, col 17" in err


def test_usage_errors(spec_file):
    assert run(["darboux"])[0] == 2
    assert run(["nonsense"])[0] == 2
    assert main(["analyze", "/nonexistent/file.spec"]) == 2
    spec = spec_file("vars x,y; d(x)=y^2; d(y)=x;")
    assert main(["darboux", spec, "--max-degree", "1"]) == 2  # not homogeneous


def test_gen_cyclotomic_and_tensor(spec_file, tmp_path, capsys):
    tables = tmp_path / "t.json"
    tables.write_text("[[[0, 2], [1, 1]], [[0, 2], [1, 1]]]")
    assert main(["gen", "cyclotomic", "--sizes", "2,2", "--tables", str(tables)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("vars x1_1, x1_2, x2_1, x2_2;")
    a = spec_file("vars x,y; d(x)=y^2; d(y)=x^2;", "a.spec")
    b = spec_file("vars u,v; d(u)=v^2; d(v)=u^2;", "b.spec")
    assert main(["tensor", a, b]) == 0
    assert capsys.readouterr().out.startswith("vars x, y, u, v;")
    assert main(["tensor", a, a]) == 2
