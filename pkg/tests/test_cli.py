import io
import subprocess
import sys

import pytest

from eerbraid.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_delta():
    assert call("--e", "3", "--r", "3", "delta") == (0, "t(0;1) t(0;0) a(0,1)\n", "")


def test_equal_verdicts():
    assert call("--e", "3", "--r", "3", "equal", "a(0,1) t(1;1) t(1;0)", "t(0;1) t(0;0) a(0,1)")[0] == 0
    code, out, _ = call("--e", "3", "--r", "3", "equal", "t(0;0)", "t(0;1)")
    assert code == 1 and out == "no\n"


def test_usage_errors():
    code, _, err = call("--e", "3", "delta")
    assert code == 64 and err.startswith("eerbraid: usage:")
    assert call("--e", "0", "--r", "3", "delta")[0] == 64
    assert call("--e", "3", "--r", "3", "frobnicate")[0] == 64
    assert call()[0] == 64


def test_parse_error_has_column():
    code, _, err = call("--e", "3", "--r", "3", "nf", "a(0,1) q")
    assert code == 64 and err.startswith("eerbraid: parse: column 8")


def test_positive_only_commands():
    assert call("--e", "3", "--r", "3", "lcm", "t(0;0)~", "a(0,1)")[0] == 64


def test_nf_and_roundtrip():
    code, out, _ = call("--e", "3", "--r", "3", "nf", "t(0;1) t(0;0) a(0,1) t(0;0)")
    assert code == 0 and out == "D^1 | t(0;0)\n"


def test_reverse_and_step_limit():
    code, out, _ = call("--e", "3", "--r", "3", "reverse", "t(0;0)~ a(0,1)")
    assert code == 0 and out.endswith("status: terminated\n")
    code, out, _ = call("--e", "3", "--r", "3", "--step-limit", "1", "reverse", "t(0;0)~ a(0,1) t(0;1)~ a(1,0)")
    assert code == 2 and "step-limit-exceeded" in out
    code, out, _ = call("--e", "3", "--r", "3", "reverse", "--trace", "a(0,1)~ a(0,1)")
    assert out.splitlines()[-2] == "e"


def test_divides_lcm_gcd():
    code, out, _ = call("--e", "3", "--r", "3", "divides", "t(0;0)", "t(0;1) t(0;0) a(0,1)")
    assert code == 0 and out.startswith("yes\nquotient: ")
    assert call("--e", "3", "--r", "3", "divides", "--right", "t(0;0)", "a(0,1)")[0] == 1
    assert call("--e", "3", "--r", "3", "lcm", "t(0;1)", "t(0;0)")[1] == "t(0;0) t(0;2)\n"
    assert call("--e", "3", "--r", "3", "gcd", "t(0;1) t(0;0)", "t(0;0) t(0;2)")[1] == "t(0;0) t(0;2)\n"


def test_simples_and_cache(tmp_path):
    path = tmp_path / "s.txt"
    code, out, _ = call("--e", "2", "--r", "3", "--cache", str(path), "simples", "--count")
    assert (code, out) == (0, "14\n")
    assert path.read_text().splitlines()[0] == "2 3 14"
    assert call("--e", "2", "--r", "3", "--cache", str(path), "simples")[1].splitlines()[0] == "14"
    bad = tmp_path / "bad.txt"
    bad.write_text("3 3 1\n\n")
    code, _, err = call("--e", "2", "--r", "3", "--cache", str(bad), "delta")
    assert code == 1 and err.startswith("eerbraid: error:")


def test_complete_check():
    code, out, _ = call("--e", "2", "--r", "3", "complete-check", "--mode", "direct")
    assert code == 0 and "PASS=216 FAIL=0 INDET=0" in out
    code, out, _ = call("complete-check", "--gap", "SSS")
    assert code == 0 and out.startswith("SSS at e=9 r=4: 27 triples, 0 failing")


def test_conjugate_and_nu():
    assert call("--e", "3", "--r", "3", "conjugate", "t(0;0)", "t(0;1)")[1] == "yes\n"
    assert call("--e", "3", "--r", "3", "conjugate", "t(0;0)", "t(0;1) t(0;0)")[0] == 1
    code, out, _ = call("--e", "2", "--r", "2", "nu", "t(0;1)")
    assert code == 0 and len(out.splitlines()) == 2


def test_bmr_commands():
    assert call("--e", "3", "--r", "3", "bmr-phi", "T2 T2P T3~")[1] == "t(0;1) t(0;0) a(0,1)~\n"
    code, out, _ = call("--e", "3", "--r", "3", "bmr-class", "T3 T2 T2P T3 T2 T2P")
    assert code == 0 and out.splitlines()[0] == "2"
    code, out, _ = call("noncancel-demo", "--e", "3")
    assert code == 0 and "witness: yes" in out
    assert call("noncancel-demo", "--e", "2")[0] == 1
    code, out, _ = call("--e", "3", "--r", "3", "nofinite-check", "--n-max", "2")
    assert code == 0 and out.startswith("n=1 PASS")


@pytest.mark.parametrize("what", ["chi-rev", "dihedral", "garside", "rho-delta", "nu", "bmr", "alpharot", "cancellative"])
def test_verify(what):
    code, out, _ = call("--e", "2", "--r", "3", "verify", what)
    assert code == 0, out


def test_output_is_deterministic():
    args = ("--e", "3", "--r", "3", "simples")
    assert call(*args) == call(*args)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "eerbraid", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("eerbraid ")
