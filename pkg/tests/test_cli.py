"""CLI contract: spec parsing, report determinism, exit codes."""

import json

import pytest

from misolab import parse_operator_spec, serialize_operator_spec
from misolab.cli import main
from misolab.errors import SpecFileError
from misolab.specio import format_rational, parse_rational
from misolab.suites import SUITES, SuiteResult

EXAMPLE_DOC = {
    "mode": "exact",
    "matrix": [["0+1i", "2"], ["0", "0-1i"]],
    "eigen_hints": ["0+1i", "0-1i"],
}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


class TestRationalGrammar:
    def test_parse_format_roundtrip(self):
        for text in ["0", "-3", "1/2", "-7/3", "2+1i", "0-1i", "3/5+4/5i", "-1/2-3i"]:
            assert format_rational(parse_rational(text)) == text

    def test_rejects_malformed(self):
        for text in ["", "1 + 2i", "i", "1/0x", "2.5", "+3"]:
            with pytest.raises(SpecFileError):
                parse_rational(text)


class TestSpecRoundTrip:
    def test_matrix_spec(self):
        spec = parse_operator_spec(EXAMPLE_DOC)
        doc2 = serialize_operator_spec(spec)
        assert parse_operator_spec(doc2).document == doc2

    def test_jordan_spec_derives_hints(self):
        doc = {"mode": "exact",
               "jordan_blocks": [{"z": "0+1i", "size": 2}, {"z": "1", "size": 1}]}
        spec = parse_operator_spec(doc)
        assert spec.operator.dim == 3
        assert [format_rational(h) for h in spec.eigen_hints] == ["0+1i", "1"]
        doc2 = serialize_operator_spec(spec)
        assert parse_operator_spec(doc2).document == doc2

    def test_shift_spec(self):
        doc = {"mode": "exact", "shift": {"polynomial": ["1", "1"], "prefix": 16}}
        spec = parse_operator_spec(doc)
        doc2 = serialize_operator_spec(spec)
        assert parse_operator_spec(doc2).document == doc2

    def test_float_spec(self):
        doc = {"mode": "float", "matrix": [[[0.0, 1.0], [2.0, 0.0]],
                                           [[0.0, 0.0], [0.0, -1.0]]]}
        spec = parse_operator_spec(doc)
        assert spec.mode == "float"

    def test_exactly_one_operator_key(self):
        with pytest.raises(SpecFileError):
            parse_operator_spec({"mode": "exact", "matrix": [["1"]],
                                 "shift": {"polynomial": ["1"]}})

    def test_nonsquare_rejected(self):
        with pytest.raises(SpecFileError):
            parse_operator_spec({"mode": "exact", "matrix": [["1", "2"]]})


class TestCommands:
    def test_order_strict(self, tmp_path, capsys):
        path = write(tmp_path, "j.json",
                     {"mode": "exact", "jordan_blocks": [{"z": "1", "size": 2}]})
        assert main(["order", path]) == 0
        out = capsys.readouterr().out
        assert "strict-order" in out and "m: 3" in out

    def test_order_not_within_bound(self, tmp_path, capsys):
        path = write(tmp_path, "e.json", EXAMPLE_DOC)
        assert main(["order", path, "--mmax", "9"]) == 0
        out = capsys.readouterr().out
        assert "not-within-bound" in out and "m: 9" in out

    def test_decompose(self, tmp_path, capsys):
        path = write(tmp_path, "e.json", EXAMPLE_DOC)
        assert main(["decompose", path]) == 0
        assert "certified: False" in capsys.readouterr().out

    def test_shift(self, tmp_path, capsys):
        path = write(tmp_path, "s.json",
                     {"mode": "exact", "shift": {"polynomial": ["1", "1"]}})
        assert main(["shift", path, "--m", "2"]) == 0
        assert "is_m_isometry: True" in capsys.readouterr().out

    def test_ortho(self, tmp_path, capsys):
        path = write(tmp_path, "e.json", EXAMPLE_DOC)
        code = main(["ortho", path, "--h1", "1,0", "--h2", "0+1i,1",
                     "--z1", "i", "--z2=-i"])
        assert code == 0
        out = capsys.readouterr().out
        assert "re_only: True" in out and "agrees_with_theory: True" in out

    def test_perturb(self, tmp_path, capsys):
        a = write(tmp_path, "a.json",
                  {"mode": "exact", "matrix": [["1", "0"], ["0", "1"]]})
        n = write(tmp_path, "n.json",
                  {"mode": "exact", "matrix": [["0", "1"], ["0", "0"]]})
        assert main(["perturb", a, n]) == 0
        out = capsys.readouterr().out
        assert "order_bound: 3" in out and "strict_at_bound: True" in out

    def test_exact_report_is_byte_identical(self, tmp_path, capsys):
        path = write(tmp_path, "j.json",
                     {"mode": "exact", "jordan_blocks": [{"z": "0+1i", "size": 2}]})
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert main(["order", path, "--output", str(out1)]) == 0
        assert main(["order", path, "--output", str(out2)]) == 0
        capsys.readouterr()
        assert out1.read_bytes() == out2.read_bytes()
        report = json.loads(out1.read_text())
        assert report["verdict"]["kind"] == "strict-order"
        assert report["verdict"]["m"] == 3


class TestExitCodes:
    def test_parse_error_is_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["order", str(bad)]) == 2
        capsys.readouterr()

    def test_precondition_is_3(self, tmp_path, capsys):
        path = write(tmp_path, "d.json",
                     {"mode": "exact", "matrix": [["1", "0"], ["0", "-1"]]})
        code = main(["ortho", path, "--h1", "1,0", "--h2", "1,1",
                     "--z1", "1", "--z2=-1"])
        assert code == 3
        capsys.readouterr()

    def test_suite_violation_is_4(self, capsys, monkeypatch):
        def failing(seed):
            return SuiteResult("stub", False, 1, ("forced failure",))

        monkeypatch.setitem(SUITES, "stub", failing)
        assert main(["verify", "--suite", "stub"]) == 4
        capsys.readouterr()

    def test_verify_pass_is_0(self, capsys):
        assert main(["verify", "--suite", "shift-factory"]) == 0
        assert "pass" in capsys.readouterr().out

    def test_unknown_suite_is_2(self, capsys):
        assert main(["verify", "--suite", "nope"]) == 2
        capsys.readouterr()


class TestSeedHandling:
    def test_env_overrides_flag(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv("MISOLAB_SEED", "99")
        out = tmp_path / "rep.json"
        assert main(["verify", "--suite", "shift-factory", "--seed", "1",
                     "--output", str(out)]) == 0
        capsys.readouterr()
        assert json.loads(out.read_text())["parameters"]["seed"] == 99

    def test_bad_env_seed_is_parse_error(self, capsys, monkeypatch):
        monkeypatch.setenv("MISOLAB_SEED", "seven")
        assert main(["verify", "--suite", "shift-factory"]) == 2
        capsys.readouterr()
