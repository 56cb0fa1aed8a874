import json
import os
import subprocess
import sys

import pytest

from chowfiber.exact_linalg import FGAbelianGroup
from chowfiber.fixtures import fixture_names, fixture_path


def run_cli(*args, color="never"):
    env = dict(os.environ, CHOWFIBER_COLOR=color)
    return subprocess.run(
        [sys.executable, "-m", "chowfiber", *args],
        text=True,
        capture_output=True,
        env=env,
    )


def _fx(name):
    return str(fixture_path(name))


class TestValidateCommand:
    def test_clean_fixture_is_silent(self):
        r = run_cli("validate", _fx("trivial"))
        assert r.returncode == 0
        assert r.stdout == ""

    def test_seven_component_fixture_reports_four_errors(self):
        r = run_cli("validate", _fx("example31"))
        assert r.returncode == 1
        lines = r.stdout.splitlines()
        assert len(lines) == 4
        for line, subject in zip(lines, ("c01", "c02", "c04", "c05")):
            assert line.startswith(f"ERROR xi-orthogonality {subject}:")

    def test_warning_only_fixture_exits_zero(self):
        r = run_cli("validate", _fx("split-orbit"))
        assert r.returncode == 0
        assert r.stdout.startswith("WARNING multiplicity-gcd")

    def test_missing_file(self):
        r = run_cli("validate", "does-not-exist.json")
        assert r.returncode == 2

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        r = run_cli("validate", str(bad))
        assert r.returncode == 2
        assert "error:" in r.stderr

    def test_schema_violation(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"name": "x", "orbits": [], "extra": 1}))
        r = run_cli("validate", str(bad))
        assert r.returncode == 2


class TestComputeCommand:
    def test_irreducible_fixture_human_output(self):
        r = run_cli("compute", _fx("irreducible"))
        assert r.returncode == 0
        assert "B(X)   = Z" in r.stdout
        assert "B(X)_0 = 0" in r.stdout
        assert "index  = 1" in r.stdout
        assert "special case: irreducible fiber" in r.stdout

    def test_strict_is_the_default(self):
        default = run_cli("compute", _fx("example31"))
        explicit = run_cli("compute", "--strict", _fx("example31"))
        assert default.returncode == explicit.returncode == 1
        assert "xi-orthogonality" in default.stderr

    def test_permissive_reports_formal_cokernel(self):
        r = run_cli("compute", "--permissive", _fx("example31"))
        assert r.returncode == 0
        assert "B(X)   = Z/2 ⊕ Z/2" in r.stdout
        assert "formal cokernel only" in r.stdout
        assert "recorded expectation: B(X)_0 rank 0, torsion [2]" in r.stdout

    def test_permissive_json(self):
        r = run_cli("compute", "--permissive", "--json", _fx("example31"))
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["b"] == {"rank": 0, "torsion": [2, 2]}
        assert doc["b0"] is None
        assert doc["index"] == "undefined-under-invalid-input"
        assert doc["formal_only"] is True
        assert [d["subject"] for d in doc["diagnostics"]] == ["c01", "c02", "c04", "c05"]

    def test_flags_are_mutually_exclusive(self):
        r = run_cli("compute", "--strict", "--permissive", _fx("trivial"))
        assert r.returncode == 2

    @pytest.mark.parametrize("name", ["trivial", "irreducible", "split-orbit", "synthetic-z2"])
    def test_json_matches_human_output(self, name):
        # Every field shown in human mode must be recoverable from the
        # JSON document.
        human = run_cli("compute", _fx(name))
        as_json = run_cli("compute", "--json", _fx(name))
        assert human.returncode == as_json.returncode == 0
        doc = json.loads(as_json.stdout)
        b = FGAbelianGroup(doc["b"]["rank"], tuple(doc["b"]["torsion"]))
        b0 = FGAbelianGroup(doc["b0"]["rank"], tuple(doc["b0"]["torsion"]))
        assert f"B(X)   = {b}" in human.stdout
        assert f"B(X)_0 = {b0}" in human.stdout
        assert f"index  = {doc['index']}" in human.stdout
        assert ("special case: irreducible fiber" in human.stdout) == (
            doc["special_case"] == "irreducible-fiber"
        )
        for d in doc["diagnostics"]:
            assert f"{d['severity'].upper()} {d['code']} {d['subject']}: {d['message']}" in human.stdout
        for key, shown in (
            ("reduced_components_smooth", "reduced_components_smooth"),
            ("pic_unramified_descent", "pic_unramified_descent"),
        ):
            flag = "yes" if doc["hypotheses"][key] else "no"
            assert f"{shown}={flag}" in human.stdout

    def test_json_matches_human_output_when_formal(self):
        human = run_cli("compute", "--permissive", _fx("example31"))
        as_json = run_cli("compute", "--permissive", "--json", _fx("example31"))
        doc = json.loads(as_json.stdout)
        b = FGAbelianGroup(doc["b"]["rank"], tuple(doc["b"]["torsion"]))
        assert f"B(X)   = {b}" in human.stdout
        assert doc["b0"] is None
        assert "B(X)_0 = (not defined: validation failed)" in human.stdout
        assert doc["index"] == "undefined-under-invalid-input"
        assert "index  = undefined-under-invalid-input" in human.stdout
        assert doc["formal_only"] is True
        assert "formal cokernel only" in human.stdout


class TestMatrixCommands:
    @pytest.fixture
    def matrix_file(self, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("2 2\n2 4\n6 8\n")
        return str(path)

    def test_snf_output(self, matrix_file):
        r = run_cli("snf", matrix_file)
        assert r.returncode == 0
        assert r.stdout == "rank 2; invariant factors: 2 4\n"

    def test_snf_check_agrees(self, matrix_file):
        r = run_cli("snf", matrix_file, "--check")
        assert r.returncode == 0
        assert r.stdout.splitlines() == ["rank 2; invariant factors: 2 4", "check: ok"]

    def test_snf_identity(self, tmp_path):
        path = tmp_path / "id.txt"
        path.write_text("3 3\n1 0 0\n0 1 0\n0 0 1\n")
        r = run_cli("snf", str(path))
        assert r.stdout == "rank 3; invariant factors: 1 1 1\n"

    def test_snf_zero(self, tmp_path):
        path = tmp_path / "z.txt"
        path.write_text("2 2\n0 0\n0 0\n")
        r = run_cli("snf", str(path))
        assert r.stdout == "rank 0; invariant factors: (none)\n"

    def test_snf_check_skips_beyond_oracle_limit(self, tmp_path):
        n = 9
        rows = [" ".join("1" if i == j else "0" for j in range(n)) for i in range(n)]
        path = tmp_path / "big.txt"
        path.write_text(f"{n} {n}\n" + "\n".join(rows) + "\n")
        r = run_cli("snf", str(path), "--check")
        assert r.returncode == 0
        assert "check: skipped (oracle size limit)" in r.stdout

    def test_oracle_output(self, matrix_file):
        r = run_cli("oracle", matrix_file)
        assert r.returncode == 0
        assert r.stdout == "determinantal divisors: 2 8\n"

    def test_oracle_refuses_oversized_input(self, tmp_path):
        n = 9
        rows = [" ".join("1" if i == j else "0" for j in range(n)) for i in range(n)]
        path = tmp_path / "big.txt"
        path.write_text(f"{n} {n}\n" + "\n".join(rows) + "\n")
        r = run_cli("oracle", str(path))
        assert r.returncode == 2
        assert "oracle size limit" in r.stderr

    def test_matrix_parse_error(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 2\n1 2\n")
        r = run_cli("snf", str(path))
        assert r.returncode == 2


class TestInternalFailureExitCode:
    # The honest pipeline cannot produce a self-check failure, so the
    # exit-3 mapping is exercised in process with a forced fault.
    def test_compute_maps_self_check_to_exit_3(self, monkeypatch):
        from chowfiber import cli
        from chowfiber.exact_linalg import SelfCheckError

        def boom(model, mode="strict"):
            raise SelfCheckError("forced failure")

        monkeypatch.setattr(cli, "report", boom)
        assert cli.main(["compute", _fx("trivial")]) == 3

    def test_snf_check_disagreement_exits_3(self, monkeypatch, tmp_path, capsys):
        from chowfiber import cli

        path = tmp_path / "m.txt"
        path.write_text("2 2\n2 4\n6 8\n")
        monkeypatch.setattr(cli, "determinantal_divisors", lambda a: [1, 8])
        assert cli.main(["snf", str(path), "--check"]) == 3
        assert "check failed" in capsys.readouterr().err


class TestStyling:
    def test_color_always_emits_ansi(self):
        r = run_cli("validate", _fx("example31"), color="always")
        assert "\x1b[31mERROR\x1b[0m" in r.stdout

    def test_color_never_is_plain(self):
        r = run_cli("validate", _fx("example31"), color="never")
        assert "\x1b[" not in r.stdout


class TestDeterminism:
    @pytest.mark.parametrize("name", fixture_names())
    def test_repeated_runs_are_byte_identical(self, name):
        for args in (
            ("validate", _fx(name)),
            ("compute", _fx(name)),
            ("compute", "--permissive", "--json", _fx(name)),
        ):
            first = run_cli(*args)
            second = run_cli(*args)
            assert (first.returncode, first.stdout, first.stderr) == (
                second.returncode,
                second.stdout,
                second.stderr,
            )
